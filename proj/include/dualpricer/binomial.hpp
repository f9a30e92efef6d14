#pragma once

#include <vector>

#include "dualpricer/types.hpp"

namespace dp::binomial {

struct LatticeNode {
    double stock = 0.0;
    double value = 0.0;
    bool exercise_now = false;
};

/// Recombining binomial tree. Level i holds i+1 nodes; node (i, j) has seen
/// j up-moves, so stock(i, j) = s0 * u^j * d^(i-j).
class Lattice {
public:
    Lattice(double s0, const BinomialParams& params);

    int steps() const { return steps_; }
    double prob_up() const { return prob_up_; }
    const BinomialParams& params() const { return params_; }

    LatticeNode& node(int level, int ups) { return nodes_[index(level, ups)]; }
    const LatticeNode& node(int level, int ups) const {
        return nodes_[index(level, ups)];
    }

private:
    std::size_t index(int level, int ups) const {
        return static_cast<std::size_t>(level) * (level + 1) / 2 + ups;
    }

    int steps_;
    double prob_up_;
    BinomialParams params_;
    std::vector<LatticeNode> nodes_;  // triangular, levels 0..steps
};

/// p solving p u + (1-p) d = 1 + r; throws if the no-arbitrage gate
/// d < 1+r < u fails.
double risk_neutral_prob(double up, double down, double rate);

Lattice build_lattice(double s0, const BinomialParams& params);

/// Backward induction C = (p C_u + (1-p) C_d) / (1+r) from the terminal
/// payoff; fills node values and returns the root.
PricingResult price_european(Lattice& lattice, const OptionSpec& spec);

/// As price_european but with value = max(intrinsic, continuation) at every
/// node; exercise_now is set where intrinsic strictly wins.
PricingResult price_american(Lattice& lattice, const OptionSpec& spec);

PricingResult price(Lattice& lattice, const OptionSpec& spec);

}  // namespace dp::binomial
