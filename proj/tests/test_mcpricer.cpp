#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dualpricer/analytic.hpp"
#include "dualpricer/io.hpp"
#include "dualpricer/mcpricer.hpp"

using namespace dp;
using namespace dp::mc;

namespace {

constexpr double kLn2 = 0.6931471805599453;

OptionSpec euro(OptionKind kind, double k, double maturity, double s0) {
    return {kind, ExerciseStyle::European, k, maturity, s0};
}

}  // namespace

TEST_CASE("BSM Monte Carlo matches the closed form within 3 SE") {
    const auto spec = euro(OptionKind::Call, 100.0, 1.0, 100.0);
    const ModelParams params = BsmParams{0.05, 0.2};
    const auto est = mc_price(params, spec, 1000000, 1, 42);
    const double closed = *closed_form_price(params, spec);
    CHECK(closed == doctest::Approx(10.4506).epsilon(1e-4));
    CHECK(std::fabs(est.value - closed) < 3.0 * est.std_error);
}

TEST_CASE("Bachelier Monte Carlo matches the ATM identity within 3 SE") {
    const auto spec = euro(OptionKind::Put, 100.0, 1.0, 100.0);
    const ModelParams params = BachelierParams{1.0};
    const auto est = mc_price(params, spec, 1000000, 1, 43);
    CHECK(std::fabs(est.value - 0.3989423) < 3.0 * est.std_error + 1e-7);
}

TEST_CASE("logistic Euler pricing with step-doubling bias check") {
    const auto spec = euro(OptionKind::Put, 100.0, 1.0, 100.0);
    const ModelParams params = LogisticParams{1.0};
    const auto coarse = mc_price(params, spec, 100000, 256, 44);
    const auto mid = mc_price(params, spec, 200000, 512, 44);
    const auto fine = mc_price(params, spec, 100000, 1024, 44);
    // the budgeted tolerance holds at 512 steps and does not degrade at 1024
    CHECK(std::fabs(mid.value - kLn2) < std::max(3.0 * mid.std_error, 5e-3));
    CHECK(std::fabs(fine.value - kLn2) < std::max(3.0 * fine.std_error, 5e-3));
    // halving the step count stays within a doubled bias budget
    CHECK(std::fabs(coarse.value - kLn2) <
          std::max(3.0 * coarse.std_error, 1e-2));
}

TEST_CASE("binomial path sampling agrees with the lattice price") {
    const auto spec = euro(OptionKind::Call, 100.0, 1.0, 100.0);
    const ModelParams params = BinomialParams{1.1, 0.9, 0.0, 3};
    const auto est = mc_price(params, spec, 400000, 1, 45);
    CHECK(std::fabs(est.value - 7.475) < 3.0 * est.std_error);
    CHECK_FALSE(closed_form_price(params, spec).has_value());
}

TEST_CASE("antithetic variates do not increase the standard error") {
    const auto spec = euro(OptionKind::Call, 100.0, 1.0, 100.0);
    const ModelParams params = BsmParams{0.05, 0.2};
    const auto plain = mc_price(params, spec, 100000, 1, 46, false);
    const auto anti = mc_price(params, spec, 100000, 1, 46, true);
    CHECK(anti.std_error <= plain.std_error);
    CHECK(std::fabs(anti.value - *closed_form_price(params, spec)) <
          3.0 * anti.std_error + 3.0 * plain.std_error);
}

TEST_CASE("estimates are reproducible bit-for-bit") {
    const auto spec = euro(OptionKind::Put, 95.0, 2.0, 100.0);
    const ModelParams params = BachelierParams{1.5};
    const auto a = mc_price(params, spec, 50000, 1, 47);
    const auto b = mc_price(params, spec, 50000, 1, 47);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    const auto c = mc_price(params, spec, 50000, 1, 48);
    CHECK(a.value != c.value);
}

TEST_CASE("standard error follows the 1/sqrt(n) law") {
    const auto spec = euro(OptionKind::Call, 100.0, 1.0, 100.0);
    const ModelParams params = BsmParams{0.05, 0.2};
    const auto small = mc_price(params, spec, 50000, 1, 49);
    const auto large = mc_price(params, spec, 200000, 1, 49);
    const double ratio = small.std_error / large.std_error;
    CHECK(ratio > 1.7);
    CHECK(ratio < 2.3);
}

TEST_CASE("degenerate one-path estimate reports a zero-SE sentinel") {
    const auto spec = euro(OptionKind::Call, 100.0, 1.0, 100.0);
    const auto est = mc_price(ModelParams{BsmParams{0.05, 0.2}}, spec, 1, 1, 50);
    CHECK(est.std_error == 0.0);
    CHECK(est.n_paths == 1);
}

TEST_CASE("input gates") {
    auto spec = euro(OptionKind::Call, 100.0, 1.0, 100.0);
    spec.style = ExerciseStyle::American;
    CHECK_THROWS_AS(mc_price(ModelParams{BsmParams{0.05, 0.2}}, spec, 10, 1, 0),
                    std::invalid_argument);
    const auto bad = euro(OptionKind::Call, 100.0, -1.0, 100.0);
    CHECK_THROWS_AS(mc_price(ModelParams{BsmParams{0.05, 0.2}}, bad, 10, 1, 0),
                    std::invalid_argument);
}

TEST_CASE("convergence report and CSV") {
    const auto spec = euro(OptionKind::Call, 100.0, 1.0, 100.0);
    const ModelParams params = BsmParams{0.05, 0.2};
    const auto rows = convergence_report(params, spec, {1, 1000, 16000}, 1, 51);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].std_error == 0.0);  // degenerate sentinel
    for (const auto& row : rows) CHECK(row.abs_error.has_value());

    // binomial has no closed form: abs_error column stays empty
    const auto bin_rows = convergence_report(
        ModelParams{BinomialParams{1.1, 0.9, 0.0, 3}}, spec, {1000}, 1, 52);
    CHECK_FALSE(bin_rows[0].abs_error.has_value());

    std::ostringstream os;
    write_convergence_csv(bin_rows, os);
    const auto parsed = io::read_csv(os.str());
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0] ==
          std::vector<std::string>{"n_paths", "estimate", "std_error",
                                   "abs_error"});
    REQUIRE(parsed[1].size() == 4);
    CHECK(parsed[1][3].empty());
    CHECK(std::stod(parsed[1][1]) == bin_rows[0].estimate);  // lossless
}
