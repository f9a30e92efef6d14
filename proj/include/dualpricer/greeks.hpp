#pragma once

#include <functional>
#include <vector>

#include "dualpricer/types.hpp"

namespace dp::greeks {

enum class Greek { Delta, Gamma, Theta, Vega, Rho };

struct Position {
    double quantity = 0.0;        // signed; negative means short
    double delta_per_unit = 0.0;  // always quoted for the long unit
};

/// Closed-form BSM delta: N(d+) for a call, N(d+) - 1 for a put.
double bsm_delta(double tau, double x, double k, double r, double sigma,
                 OptionKind kind);

using PriceFn = std::function<double(const OptionSpec&, const ModelParams&)>;

/// Central finite differences of an arbitrary pricer. Theta is reported as
/// -d(price)/dT. Vega and Rho require a model that carries sigma / r and
/// throw NUMERIC otherwise.
double fd_greek(const PriceFn& price_fn, Greek which, const OptionSpec& spec,
                const ModelParams& params);

/// Sum of quantity_i * delta_per_unit_i. Short exposure lives in the sign of
/// quantity only; a negative delta_per_unit on a plain long unit is rejected
/// by convention at the call sites that build Positions.
double portfolio_delta(const std::vector<Position>& positions);

}  // namespace dp::greeks
