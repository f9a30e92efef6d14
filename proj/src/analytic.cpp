#include "dualpricer/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "dualpricer/normal.hpp"

namespace dp::analytic {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

}  // namespace

// --- Black-Scholes-Merton -------------------------------------------------

double bsm_call_value(double tau, double x, double k, double r, double sigma) {
    require(tau > 0.0, "DOMAIN: tau must be > 0");
    require(x > 0.0 && k > 0.0, "DOMAIN: spot and strike must be > 0");
    require(sigma > 0.0, "DOMAIN: sigma must be > 0");
    const double sig_sqrt_tau = sigma * std::sqrt(tau);
    const double d_plus =
        (std::log(x / k) + (r + 0.5 * sigma * sigma) * tau) / sig_sqrt_tau;
    const double d_minus = d_plus - sig_sqrt_tau;
    return x * normal::cdf(d_plus) -
           k * std::exp(-r * tau) * normal::cdf(d_minus);
}

double bsm_put_value(double tau, double x, double k, double r, double sigma) {
    return bsm_call_value(tau, x, k, r, sigma) - x + k * std::exp(-r * tau);
}

PricingResult bsm_price(double tau, double x, double k, double r, double sigma,
                        OptionKind kind) {
    const double call = bsm_call_value(tau, x, k, r, sigma);
    const double sig_sqrt_tau = sigma * std::sqrt(tau);
    const double d_plus =
        (std::log(x / k) + (r + 0.5 * sigma * sigma) * tau) / sig_sqrt_tau;

    PricingResult res;
    res.model = "bsm";
    res.price = kind == OptionKind::Call ? call : call - x + k * std::exp(-r * tau);
    res.diagnostics["d_plus"] = d_plus;
    res.diagnostics["d_minus"] = d_plus - sig_sqrt_tau;
    return res;
}

// --- Bachelier ------------------------------------------------------------

double bachelier_put_value(double k, double s0, double maturity, double sigma_n) {
    require(maturity > 0.0, "DOMAIN: maturity must be > 0");
    require(sigma_n > 0.0, "DOMAIN: sigma_n must be > 0");
    const double b = sigma_n * std::sqrt(maturity);
    const double m = (k - s0) / b;
    return (k - s0) * normal::cdf(m) + b * normal::pdf(m);
}

double bachelier_call_value(double k, double s0, double maturity, double sigma_n) {
    require(maturity > 0.0, "DOMAIN: maturity must be > 0");
    require(sigma_n > 0.0, "DOMAIN: sigma_n must be > 0");
    const double b = sigma_n * std::sqrt(maturity);
    const double m = (k - s0) / b;
    return (s0 - k) * normal::cdf(-m) + b * normal::pdf(m);
}

double bachelier_binary_put(double k, double s0, double maturity, double sigma_n) {
    require(maturity > 0.0, "DOMAIN: maturity must be > 0");
    require(sigma_n > 0.0, "DOMAIN: sigma_n must be > 0");
    return normal::cdf((k - s0) / (sigma_n * std::sqrt(maturity)));
}

namespace {

PricingResult make_result(const char* model, double price, double k, double s0,
                          double maturity, double vol_param) {
    PricingResult res;
    res.model = model;
    res.price = price;
    res.diagnostics["b"] = vol_param * std::sqrt(maturity);
    res.diagnostics["moneyness"] = (k - s0) / res.diagnostics["b"];
    return res;
}

}  // namespace

PricingResult bachelier_put(double k, double s0, double maturity, double sigma_n) {
    return make_result("bachelier", bachelier_put_value(k, s0, maturity, sigma_n),
                       k, s0, maturity, sigma_n);
}

PricingResult bachelier_call(double k, double s0, double maturity, double sigma_n) {
    return make_result("bachelier", bachelier_call_value(k, s0, maturity, sigma_n),
                       k, s0, maturity, sigma_n);
}

// --- Logistic -------------------------------------------------------------

double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

double logistic_put_value(double k, double s0, double maturity, double a) {
    require(maturity > 0.0, "DOMAIN: maturity must be > 0");
    require(a > 0.0, "DOMAIN: scale a must be > 0");
    const double b = a * std::sqrt(maturity);
    return b * softplus((k - s0) / b);
}

double logistic_call_value(double k, double s0, double maturity, double a) {
    require(maturity > 0.0, "DOMAIN: maturity must be > 0");
    require(a > 0.0, "DOMAIN: scale a must be > 0");
    const double b = a * std::sqrt(maturity);
    return b * softplus(-(k - s0) / b);
}

double logistic_binary_put(double k, double s0, double maturity, double a) {
    require(maturity > 0.0, "DOMAIN: maturity must be > 0");
    require(a > 0.0, "DOMAIN: scale a must be > 0");
    return delta_of_z((k - s0) / (a * std::sqrt(maturity)));
}

PricingResult logistic_put(double k, double s0, double maturity, double a) {
    return make_result("logistic", logistic_put_value(k, s0, maturity, a), k, s0,
                       maturity, a);
}

PricingResult logistic_call(double k, double s0, double maturity, double a) {
    return make_result("logistic", logistic_call_value(k, s0, maturity, a), k, s0,
                       maturity, a);
}

// --- Primal/dual family ---------------------------------------------------

double entropy(double delta) {
    require(delta >= 0.0 && delta <= 1.0, "DOMAIN: delta must lie in [0, 1]");
    if (delta == 0.0 || delta == 1.0) return 0.0;  // continuous extension
    return -delta * std::log(delta) - (1.0 - delta) * std::log1p(-delta);
}

double eta_delta(double delta) {
    return std::sqrt(entropy(delta) * delta * (1.0 - delta));
}

double eta_z(double z) {
    // Even function; evaluate at |z| so e^|z| stays representable up to ~709.
    const double az = std::fabs(z);
    const double t = std::exp(-az);
    const double term_far = (1.0 + std::exp(az)) * std::log1p(t);
    const double term_near = (1.0 + t) * softplus(az);
    return std::sqrt(term_far + term_near);
}

double pi_z(double z) { return softplus(z); }

double pi_star(double delta) {
    require(delta > 0.0 && delta < 1.0, "DOMAIN: delta must lie in (0, 1)");
    return -entropy(delta);
}

double delta_of_z(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double z_of_delta(double delta) {
    require(delta > 0.0 && delta < 1.0, "DOMAIN: delta must lie in (0, 1)");
    return std::log(delta / (1.0 - delta));
}

double scale_b(double tau, double a) {
    require(tau > 0.0, "DOMAIN: tau must be > 0");
    return a * std::sqrt(tau);
}

double dual_put_value(double delta, double tau, double a) {
    return scale_b(tau, a) * pi_star(delta);
}

double dual_excess_price(double delta, double tau, double a) {
    return scale_b(tau, a) * z_of_delta(delta);
}

double logistic_local_vol(double x, double t, double a) {
    // With b(t) = a sqrt(t), sqrt(2 b b') = a exactly.
    require(t > 0.0, "DOMAIN: t must be > 0");
    return a * eta_z(x / (a * std::sqrt(t)));
}

}  // namespace dp::analytic
