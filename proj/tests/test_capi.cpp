#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include "dualpricer.h"

namespace {

struct ApiString {
    char* ptr = nullptr;
    ~ApiString() { dp_free_string(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

struct Handle {
    dp_scenario* ptr = nullptr;
    ~Handle() { dp_scenario_free(ptr); }
};

constexpr const char* kAtmLogistic =
    R"({"model":"logistic","s0":100,"k":100,"T":1,"a":1,"option":"put"})";

}  // namespace

TEST_CASE("scenario lifecycle and the ln 2 price line") {
    Handle h;
    REQUIRE(dp_scenario_from_json(kAtmLogistic, &h.ptr) == DP_OK);
    CHECK(dp_scenario_has_seed(h.ptr) == 0);
    ApiString report;
    REQUIRE(dp_price(h.ptr, 0, &report.ptr) == DP_OK);
    CHECK(report.str().find("price: 0.6931472") != std::string::npos);
    CHECK(report.str().find("model: logistic") != std::string::npos);
}

TEST_CASE("greeks are appended on request") {
    Handle h;
    REQUIRE(dp_scenario_from_json(kAtmLogistic, &h.ptr) == DP_OK);
    ApiString report;
    REQUIRE(dp_price(h.ptr, 1, &report.ptr) == DP_OK);
    CHECK(report.str().find("delta:") != std::string::npos);
    const auto gamma_pos = report.str().find("gamma: ");
    REQUIRE(gamma_pos != std::string::npos);
    const double gamma = std::strtod(report.str().c_str() + gamma_pos + 7, nullptr);
    CHECK(std::fabs(gamma - 0.25) < 1e-4);
    CHECK(report.str().find("vega:") != std::string::npos);
    CHECK(report.str().find("rho:") == std::string::npos);  // zero-rate model
}

TEST_CASE("validation failures carry messages and status 1") {
    dp_scenario* raw = nullptr;
    CHECK(dp_scenario_from_json("{not json", &raw) == DP_ERR_VALIDATION);
    CHECK(raw == nullptr);
    CHECK(std::string(dp_last_error()).find("INVALID") != std::string::npos);

    CHECK(dp_scenario_from_json(
              R"({"model":"logistic","s0":1,"k":1,"T":1,"a":1,)"
              R"("option":"put","bogus":3})",
              &raw) == DP_ERR_VALIDATION);
    CHECK(std::string(dp_last_error()).find("bogus") != std::string::npos);
}

TEST_CASE("seed precedence helpers") {
    Handle h;
    REQUIRE(dp_scenario_from_json(kAtmLogistic, &h.ptr) == DP_OK);
    CHECK(dp_scenario_has_seed(h.ptr) == 0);
    dp_scenario_set_seed(h.ptr, 99);
    CHECK(dp_scenario_has_seed(h.ptr) == 1);
}

TEST_CASE("simulation is deterministic for a fixed seed") {
    const char* config =
        R"({"model":"logistic","s0":100,"k":100,"T":1,"a":1,)"
        R"("option":"put","seed":5,"paths":20,"steps":16})";
    Handle h1, h2;
    REQUIRE(dp_scenario_from_json(config, &h1.ptr) == DP_OK);
    REQUIRE(dp_scenario_from_json(config, &h2.ptr) == DP_OK);
    ApiString a, b;
    REQUIRE(dp_simulate_csv(h1.ptr, &a.ptr) == DP_OK);
    REQUIRE(dp_simulate_csv(h2.ptr, &b.ptr) == DP_OK);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("path_id,step,t,value\n", 0) == 0);

    dp_scenario_set_seed(h2.ptr, 6);
    ApiString c;
    REQUIRE(dp_simulate_csv(h2.ptr, &c.ptr) == DP_OK);
    CHECK(a.str() != c.str());
}

TEST_CASE("compare emits matched model pairs with correct ATM rows") {
    Handle h;
    REQUIRE(dp_scenario_from_json(
                R"({"model":"bachelier","s0":100,"k":100,"T":1,)"
                R"("sigma_n":1,"option":"put"})",
                &h.ptr) == DP_OK);
    ApiString csv;
    REQUIRE(dp_compare_csv(h.ptr, 90.0, 110.0, 2, &csv.ptr) == DP_OK);
    const std::string text = csv.str();
    CHECK(text.rfind("x,series,value\n", 0) == 0);
    // 3 strikes x 2 models x 3 series + header
    int lines = 0;
    for (char ch : text) lines += ch == '\n';
    CHECK(lines == 1 + 18);
    // ATM identities on the k = 100 rows
    CHECK(text.find("100,bachelier_put,0.39894228") != std::string::npos);
    CHECK(text.find("100,logistic_put,0.69314718") != std::string::npos);
    CHECK(text.find("100,bachelier_binary_put,0.5\n") != std::string::npos);
    CHECK(text.find("100,logistic_binary_put,0.5\n") != std::string::npos);

    CHECK(dp_compare_csv(h.ptr, 110.0, 90.0, 2, &csv.ptr) == DP_ERR_VALIDATION);
}

TEST_CASE("funcs CSV covers the six curves") {
    ApiString csv;
    REQUIRE(dp_funcs_csv(&csv.ptr) == DP_OK);
    const std::string text = csv.str();
    CHECK(text.rfind("x,series,value\n", 0) == 0);
    for (const char* series : {"eta_z", "pi", "delta_of_z", "eta_delta",
                               "pi_star", "z_of_delta"}) {
        CHECK(text.find(std::string(",") + series + ",") != std::string::npos);
    }
}

TEST_CASE("verify subset through the C API") {
    ApiString csv, table;
    REQUIRE(dp_verify("legendre_duality,put_call_parity", 42, &csv.ptr,
                      &table.ptr) == DP_OK);
    CHECK(csv.str().rfind("check,statistic,tolerance,pass\n", 0) == 0);
    CHECK(table.str().find("PASS") != std::string::npos);

    CHECK(dp_verify("nonsense_check", 42, nullptr, nullptr) ==
          DP_ERR_VALIDATION);
    CHECK(std::string(dp_last_error()).find("UNKNOWN_CHECK") !=
          std::string::npos);
}

TEST_CASE("bench through the C API") {
    ApiString csv, table;
    REQUIRE(dp_bench(1000, 1, &csv.ptr, &table.ptr) == DP_OK);
    int lines = 0;
    for (char ch : csv.str()) lines += ch == '\n';
    CHECK(lines == 13);
    CHECK(table.str().find("Total") != std::string::npos);
    CHECK(dp_bench(10, 1, nullptr, nullptr) == DP_ERR_VALIDATION);
}

TEST_CASE("null-argument hygiene") {
    CHECK(dp_scenario_from_json(nullptr, nullptr) == DP_ERR_VALIDATION);
    CHECK(dp_price(nullptr, 0, nullptr) == DP_ERR_VALIDATION);
    dp_scenario_free(nullptr);   // must be safe
    dp_free_string(nullptr);     // must be safe
}
