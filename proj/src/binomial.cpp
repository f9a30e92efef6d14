#include "dualpricer/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dp::binomial {

double risk_neutral_prob(double up, double down, double rate) {
    if (!(down > 0.0 && down < 1.0 + rate && 1.0 + rate < up)) {
        throw std::domain_error(
            "NO_ARBITRAGE_VIOLATED: requires 0 < d < 1+r < u");
    }
    return (1.0 + rate - down) / (up - down);
}

Lattice::Lattice(double s0, const BinomialParams& params)
    : steps_(params.steps),
      prob_up_(risk_neutral_prob(params.up, params.down, params.rate)),
      params_(params) {
    if (steps_ < 1) throw std::domain_error("steps must be >= 1");
    nodes_.resize(static_cast<std::size_t>(steps_ + 1) * (steps_ + 2) / 2);
    for (int i = 0; i <= steps_; ++i) {
        for (int j = 0; j <= i; ++j) {
            node(i, j).stock = s0 * std::pow(params.up, j) *
                               std::pow(params.down, i - j);
        }
    }
}

Lattice build_lattice(double s0, const BinomialParams& params) {
    return Lattice(s0, params);
}

namespace {

double payoff(OptionKind kind, double stock, double strike) {
    const double intrinsic =
        kind == OptionKind::Call ? stock - strike : strike - stock;
    return std::max(intrinsic, 0.0);
}

PricingResult induct(Lattice& lattice, const OptionSpec& spec, bool american) {
    const int n = lattice.steps();
    const double p = lattice.prob_up();
    const double discount = 1.0 / (1.0 + lattice.params().rate);

    for (int j = 0; j <= n; ++j) {
        auto& leaf = lattice.node(n, j);
        leaf.value = payoff(spec.kind, leaf.stock, spec.strike);
        leaf.exercise_now = american && leaf.value > 0.0;
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int j = 0; j <= i; ++j) {
            auto& cur = lattice.node(i, j);
            const double continuation =
                discount * (p * lattice.node(i + 1, j + 1).value +
                            (1.0 - p) * lattice.node(i + 1, j).value);
            if (american) {
                const double intrinsic = payoff(spec.kind, cur.stock, spec.strike);
                // Ties resolve to holding: exercise only on a strict win.
                cur.exercise_now = intrinsic > continuation;
                cur.value = std::max(intrinsic, continuation);
            } else {
                cur.value = continuation;
            }
        }
    }

    PricingResult res;
    res.model = "binomial";
    res.price = lattice.node(0, 0).value;
    res.diagnostics["prob_up"] = p;
    res.diagnostics["steps"] = static_cast<double>(n);
    return res;
}

}  // namespace

PricingResult price_european(Lattice& lattice, const OptionSpec& spec) {
    if (spec.style != ExerciseStyle::European) {
        throw std::invalid_argument("price_european requires European style");
    }
    return induct(lattice, spec, false);
}

PricingResult price_american(Lattice& lattice, const OptionSpec& spec) {
    if (spec.style != ExerciseStyle::American) {
        throw std::invalid_argument("price_american requires American style");
    }
    return induct(lattice, spec, true);
}

PricingResult price(Lattice& lattice, const OptionSpec& spec) {
    return spec.style == ExerciseStyle::American ? price_american(lattice, spec)
                                                 : price_european(lattice, spec);
}

}  // namespace dp::binomial
