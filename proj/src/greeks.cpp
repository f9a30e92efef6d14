#include "dualpricer/greeks.hpp"

#include <cmath>
#include <stdexcept>

#include "dualpricer/normal.hpp"

namespace dp::greeks {

double bsm_delta(double tau, double x, double k, double r, double sigma,
                 OptionKind kind) {
    if (!(tau > 0.0 && x > 0.0 && k > 0.0 && sigma > 0.0)) {
        throw std::domain_error("DOMAIN: bsm_delta inputs out of range");
    }
    const double d_plus =
        (std::log(x / k) + (r + 0.5 * sigma * sigma) * tau) /
        (sigma * std::sqrt(tau));
    const double nd = normal::cdf(d_plus);
    return kind == OptionKind::Call ? nd : nd - 1.0;
}

namespace {

// Step sizes chosen to balance truncation against round-off.
double spot_step(double s0) { return 1e-4 * std::max(1.0, std::fabs(s0)); }
constexpr double kSigmaStep = 1e-4;
constexpr double kRateStep = 1e-5;
constexpr double kTimeStep = 1e-5;

ModelParams bump_sigma(const ModelParams& params, double h) {
    ModelParams out = params;
    if (auto* m = std::get_if<BsmParams>(&out)) {
        m->sigma += h;
    } else if (auto* n = std::get_if<BachelierParams>(&out)) {
        n->sigma_n += h;
    } else if (auto* l = std::get_if<LogisticParams>(&out)) {
        l->scale += h;
    } else {
        throw std::runtime_error("NUMERIC: model has no volatility parameter");
    }
    return out;
}

ModelParams bump_rate(const ModelParams& params, double h) {
    ModelParams out = params;
    if (auto* m = std::get_if<BsmParams>(&out)) {
        m->rate += h;
    } else if (auto* b = std::get_if<BinomialParams>(&out)) {
        b->rate += h;
    } else {
        throw std::runtime_error("NUMERIC: model has no rate parameter");
    }
    return out;
}

double eval(const PriceFn& fn, const OptionSpec& spec, const ModelParams& params) {
    const double v = fn(spec, params);
    if (!std::isfinite(v)) throw std::runtime_error("NUMERIC: non-finite price");
    return v;
}

}  // namespace

double fd_greek(const PriceFn& price_fn, Greek which, const OptionSpec& spec,
                const ModelParams& params) {
    switch (which) {
        case Greek::Delta: {
            const double h = spot_step(spec.spot);
            OptionSpec up = spec, dn = spec;
            up.spot += h;
            dn.spot -= h;
            return (eval(price_fn, up, params) - eval(price_fn, dn, params)) /
                   (2.0 * h);
        }
        case Greek::Gamma: {
            const double h = spot_step(spec.spot);
            OptionSpec up = spec, dn = spec;
            up.spot += h;
            dn.spot -= h;
            return (eval(price_fn, up, params) - 2.0 * eval(price_fn, spec, params) +
                    eval(price_fn, dn, params)) /
                   (h * h);
        }
        case Greek::Theta: {
            OptionSpec up = spec, dn = spec;
            up.maturity += kTimeStep;
            dn.maturity -= kTimeStep;
            if (dn.maturity <= 0.0) {
                throw std::runtime_error("NUMERIC: maturity bump crosses zero");
            }
            return -(eval(price_fn, up, params) - eval(price_fn, dn, params)) /
                   (2.0 * kTimeStep);
        }
        case Greek::Vega:
            return (eval(price_fn, spec, bump_sigma(params, kSigmaStep)) -
                    eval(price_fn, spec, bump_sigma(params, -kSigmaStep))) /
                   (2.0 * kSigmaStep);
        case Greek::Rho:
            return (eval(price_fn, spec, bump_rate(params, kRateStep)) -
                    eval(price_fn, spec, bump_rate(params, -kRateStep))) /
                   (2.0 * kRateStep);
    }
    throw std::logic_error("unreachable");
}

double portfolio_delta(const std::vector<Position>& positions) {
    double total = 0.0;
    for (const auto& pos : positions) {
        if (!std::isfinite(pos.quantity) || !std::isfinite(pos.delta_per_unit)) {
            throw std::domain_error("DOMAIN: position fields must be finite");
        }
        total += pos.quantity * pos.delta_per_unit;
    }
    return total;
}

}  // namespace dp::greeks
