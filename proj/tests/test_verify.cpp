#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dualpricer/io.hpp"
#include "dualpricer/verify.hpp"

using namespace dp::verify;

TEST_CASE("check catalogue is ordered and complete") {
    const auto& names = check_names();
    REQUIRE(names.size() == 15);
    CHECK(names.front() == "bsm_pde_residual");
    CHECK(names[1] == "dupire_residual_logistic");
    CHECK(names.back() == "dual_delta_martingale");
}

TEST_CASE("selection filter returns exactly the requested checks") {
    const auto results = run_suite({"legendre_duality"});
    REQUIRE(results.size() == 1);
    CHECK(results[0].name == "legendre_duality");
    CHECK(results[0].pass);
}

TEST_CASE("unknown check names are rejected with the valid list") {
    try {
        run_suite({"not_a_check"});
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        CHECK(what.find("UNKNOWN_CHECK") != std::string::npos);
        CHECK(what.find("legendre_duality") != std::string::npos);
    }
}

TEST_CASE("fast deterministic checks pass with the frozen seed") {
    const auto results =
        run_suite({"legendre_duality", "neumann_ode_residual",
                   "put_call_parity", "binomial_convergence"});
    for (const auto& res : results) {
        INFO(res.name, " statistic=", res.statistic);
        CHECK(res.pass);
        CHECK((res.pass == (res.statistic <= res.tolerance)));
    }
}

TEST_CASE("statistics are bit-stable across runs") {
    const auto a = run_suite({"qv_check", "legendre_duality"});
    const auto b = run_suite({"qv_check", "legendre_duality"});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].statistic == b[i].statistic);
    }
}

TEST_CASE("dual delta martingale from both starts") {
    const auto half = dual_delta_martingale(1.0, 1.0, 30000, 256, kDefaultSeed, 0.5);
    CHECK(half.pass);
    CHECK(half.details.at("mean") == doctest::Approx(0.5).epsilon(0.01));
    const auto high = dual_delta_martingale(1.0, 1.0, 30000, 256, kDefaultSeed, 0.9);
    CHECK(high.pass);
    CHECK(high.details.at("mean") == doctest::Approx(0.9).epsilon(0.01));
    CHECK_THROWS_AS(dual_delta_martingale(-1.0, 1.0, 10, 4, 0, 0.5),
                    std::domain_error);
}

TEST_CASE("report renderings") {
    const auto results = run_suite({"legendre_duality", "put_call_parity"});
    std::ostringstream csv;
    write_report_csv(results, csv);
    const auto rows = dp::io::read_csv(csv.str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] ==
          std::vector<std::string>{"check", "statistic", "tolerance", "pass"});
    CHECK(rows[1][0] == "legendre_duality");
    CHECK(rows[1][3] == "true");

    std::ostringstream table;
    write_report_table(results, table);
    CHECK(table.str().find("PASS") != std::string::npos);
    CHECK(table.str().find("put_call_parity") != std::string::npos);
}
