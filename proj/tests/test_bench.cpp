#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dualpricer/bench.hpp"
#include "dualpricer/io.hpp"

using namespace dp::bench;

TEST_CASE("bench emits 12 rows and exact totals") {
    const auto report = run_bench(2000, 2);
    REQUIRE(report.rows.size() == 12);

    double bach = 0.0, log = 0.0;
    int bach_rows = 0, log_rows = 0;
    for (const auto& row : report.rows) {
        CHECK(row.seconds >= 0.0);
        CHECK(row.n_evals == 2000);
        if (row.model == BenchModel::Bachelier) {
            bach += row.seconds;
            ++bach_rows;
        } else {
            log += row.seconds;
            ++log_rows;
        }
    }
    CHECK(bach_rows == 6);
    CHECK(log_rows == 6);
    // totals are exactly the row sums (same summation order)
    CHECK(report.total_bachelier == bach);
    CHECK(report.total_logistic == log);
}

TEST_CASE("checksums are repetition-stable and nontrivial") {
    const auto a = run_bench(2000, 3);  // throws internally on mismatch
    const auto b = run_bench(2000, 1);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].checksum == b.rows[i].checksum);
        CHECK(a.rows[i].checksum != 0.0);
    }
}

TEST_CASE("work doubles when n_evals doubles") {
    const auto base = run_bench(50000, 5);
    const auto twice = run_bench(100000, 5);
    for (std::size_t i = 0; i < base.rows.size(); ++i) {
        const double factor = twice.rows[i].seconds / base.rows[i].seconds;
        INFO(function_name(base.rows[i].function), " / ",
             model_name(base.rows[i].model), " factor=", factor);
        CHECK(factor > 1.5);
        CHECK(factor < 3.0);
    }
}

TEST_CASE("input gates") {
    CHECK_THROWS_AS(run_bench(999, 5), std::domain_error);
    CHECK_THROWS_AS(run_bench(2000, 0), std::domain_error);
}

TEST_CASE("CSV and table renderings") {
    const auto report = run_bench(1000, 1);
    std::ostringstream csv;
    write_bench_csv(report, csv);
    const auto rows = dp::io::read_csv(csv.str());
    REQUIRE(rows.size() == 13);
    CHECK(rows[0] ==
          std::vector<std::string>{"function", "model", "n_evals", "seconds"});
    CHECK(rows[1][0] == "eta_z");
    CHECK(rows[1][1] == "bachelier");
    CHECK(rows[2][1] == "logistic");

    std::ostringstream table;
    write_bench_table(report, table);
    CHECK(table.str().find("Total") != std::string::npos);
    CHECK(table.str().find("faster") != std::string::npos);
}
