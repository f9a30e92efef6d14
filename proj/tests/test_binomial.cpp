#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dualpricer/analytic.hpp"
#include "dualpricer/binomial.hpp"

using namespace dp;
using namespace dp::binomial;

namespace {

OptionSpec euro_call(double strike) {
    return {OptionKind::Call, ExerciseStyle::European, strike, 1.0, 0.0};
}

// Independent oracle: enumerate all 2^n up/down paths and average the
// discounted payoffs under the risk-neutral path weights.
double enumerate_price(double s0, const BinomialParams& params,
                       const OptionSpec& spec) {
    const int n = params.steps;
    const double p = risk_neutral_prob(params.up, params.down, params.rate);
    const double discount = std::pow(1.0 + params.rate, -n);
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        double stock = s0;
        double weight = 1.0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1ull << i)) {
                stock *= params.up;
                weight *= p;
            } else {
                stock *= params.down;
                weight *= 1.0 - p;
            }
        }
        const double intrinsic = spec.kind == OptionKind::Call
                                     ? stock - spec.strike
                                     : spec.strike - stock;
        total += weight * std::max(intrinsic, 0.0);
    }
    return discount * total;
}

}  // namespace

TEST_CASE("risk-neutral probability solves p u + (1-p) d = 1 + r") {
    const double p = risk_neutral_prob(1.1, 0.9, 0.0);
    CHECK(p == doctest::Approx(0.5).epsilon(1e-15));
    const double p2 = risk_neutral_prob(1.2, 0.8, 0.05);
    CHECK(p2 * 1.2 + (1.0 - p2) * 0.8 == doctest::Approx(1.05).epsilon(1e-15));
    CHECK_THROWS_AS(risk_neutral_prob(1.1, 0.9, 0.2), std::domain_error);
    CHECK_THROWS_AS(risk_neutral_prob(1.1, -0.5, 0.0), std::domain_error);
}

TEST_CASE("one-period lattice: 10 -> 10.5 / 9.5") {
    auto lattice = build_lattice(10.0, {1.05, 0.95, 0.0, 1});
    CHECK(lattice.node(1, 1).stock == doctest::Approx(10.5).epsilon(1e-12));
    CHECK(lattice.node(1, 0).stock == doctest::Approx(9.5).epsilon(1e-12));
}

TEST_CASE("three-step lattice node values are exact") {
    auto lattice = build_lattice(100.0, {1.1, 0.9, 0.0, 3});
    const struct {
        int level, ups;
        double expected;
    } nodes[] = {
        {1, 1, 110.0},  {1, 0, 90.0},  {2, 2, 121.0}, {2, 1, 99.0},
        {2, 0, 81.0},   {3, 3, 133.1}, {3, 2, 108.9}, {3, 1, 89.1},
        {3, 0, 72.9},
    };
    for (const auto& n : nodes) {
        CHECK(std::fabs(lattice.node(n.level, n.ups).stock - n.expected) < 1e-10);
    }
}

TEST_CASE("reciprocal factors recombine to s0/u") {
    auto lattice = build_lattice(100.0, {1.1, 1.0 / 1.1, 0.0, 1});
    CHECK(lattice.node(1, 0).stock ==
          doctest::Approx(100.0 / 1.1).epsilon(1e-12));  // prints as 90.91
}

TEST_CASE("three-step European call at 7.475") {
    const BinomialParams params{1.1, 0.9, 0.0, 3};
    auto lattice = build_lattice(100.0, params);
    const auto res = price_european(lattice, euro_call(100.0));
    // By-hand oracle: p = 0.5; payoffs 33.1, 8.9 x3, 0 x4; mean 59.8 / 8.
    CHECK(res.price == doctest::Approx(59.8 / 8.0).epsilon(1e-12));
    CHECK(res.price == doctest::Approx(7.475).epsilon(1e-12));
    CHECK(res.price ==
          doctest::Approx(enumerate_price(100.0, params, euro_call(100.0)))
              .epsilon(1e-12));
}

TEST_CASE("backward induction equals brute-force enumeration for n <= 12") {
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> u_dist(1.02, 1.4);
    std::uniform_real_distribution<double> k_dist(60.0, 140.0);
    for (int n = 1; n <= 12; ++n) {
        const double u = u_dist(gen);
        const double d = 1.0 / u;
        const double r = 0.01;
        REQUIRE(d < 1.01);
        const BinomialParams params{u, d, r, n};
        for (OptionKind kind : {OptionKind::Call, OptionKind::Put}) {
            OptionSpec spec = euro_call(k_dist(gen));
            spec.kind = kind;
            auto lattice = build_lattice(100.0, params);
            const double tree = price_european(lattice, spec).price;
            const double oracle = enumerate_price(100.0, params, spec);
            CHECK(std::fabs(tree - oracle) < 1e-10);
        }
    }
}

TEST_CASE("k = 0 call at r = 0 returns s0 (martingale)") {
    auto lattice = build_lattice(100.0, {1.1, 0.9, 0.0, 8});
    CHECK(price_european(lattice, euro_call(0.0)).price ==
          doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("node-wise martingale identity at r = 0") {
    auto lattice = build_lattice(100.0, {1.07, 0.96, 0.0, 10});
    const double p = lattice.prob_up();
    for (int i = 0; i < lattice.steps(); ++i) {
        for (int j = 0; j <= i; ++j) {
            const double expected = p * lattice.node(i + 1, j + 1).stock +
                                    (1.0 - p) * lattice.node(i + 1, j).stock;
            CHECK(std::fabs(expected - lattice.node(i, j).stock) < 1e-12 * 100.0);
        }
    }
}

TEST_CASE("put with unreachable strike prices to zero") {
    auto lattice = build_lattice(100.0, {1.1, 0.9, 0.0, 5});
    OptionSpec spec = euro_call(1.0);
    spec.kind = OptionKind::Put;
    CHECK(price_european(lattice, spec).price == 0.0);
}

TEST_CASE("American put dominates European put") {
    const BinomialParams params{1.1, 0.9, 0.05, 2};
    OptionSpec euro{OptionKind::Put, ExerciseStyle::European, 100.0, 1.0, 0.0};
    OptionSpec amer{OptionKind::Put, ExerciseStyle::American, 100.0, 1.0, 0.0};
    auto l1 = build_lattice(100.0, params);
    auto l2 = build_lattice(100.0, params);
    const double euro_value = price_european(l1, euro).price;
    const double amer_value = price_american(l2, amer).price;
    CHECK(amer_value >= euro_value);
}

TEST_CASE("deep ITM American put exercises immediately") {
    auto lattice = build_lattice(100.0, {1.1, 0.9, 0.05, 1});
    OptionSpec spec{OptionKind::Put, ExerciseStyle::American, 200.0, 1.0, 0.0};
    const auto res = price_american(lattice, spec);
    CHECK(res.price == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(lattice.node(0, 0).exercise_now);
}

TEST_CASE("style dispatch and mismatch guards") {
    auto lattice = build_lattice(100.0, {1.1, 0.9, 0.0, 2});
    OptionSpec amer{OptionKind::Put, ExerciseStyle::American, 100.0, 1.0, 0.0};
    CHECK_THROWS_AS(price_european(lattice, amer), std::invalid_argument);
    CHECK(price(lattice, amer).price > 0.0);
}

TEST_CASE("CRR lattice converges to the BSM closed form") {
    const double s0 = 100.0, k = 100.0, maturity = 1.0, r = 0.05, sigma = 0.2;
    const int n = 1000;
    const double dt = maturity / n;
    const BinomialParams params{std::exp(sigma * std::sqrt(dt)),
                                std::exp(-sigma * std::sqrt(dt)), r * dt, n};
    auto lattice = build_lattice(s0, params);
    const double tree = price_european(lattice, euro_call(k)).price;
    const double closed = analytic::bsm_call_value(maturity, s0, k, r, sigma);
    CHECK(std::fabs(tree - closed) / closed < 1e-3);
}
