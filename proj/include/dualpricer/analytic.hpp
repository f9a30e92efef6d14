#pragma once

#include "dualpricer/types.hpp"

namespace dp::analytic {

// --- Black-Scholes-Merton -------------------------------------------------

/// Closed-form value; kind selects call or put (put via parity).
/// Diagnostics carry d_plus and d_minus.
PricingResult bsm_price(double tau, double x, double k, double r, double sigma,
                        OptionKind kind);

double bsm_call_value(double tau, double x, double k, double r, double sigma);
double bsm_put_value(double tau, double x, double k, double r, double sigma);

// --- Bachelier (normal) model ---------------------------------------------
// b(T) = sigma_n * sqrt(T), m = (k - s0) / b(T).

PricingResult bachelier_put(double k, double s0, double maturity, double sigma_n);
PricingResult bachelier_call(double k, double s0, double maturity, double sigma_n);

double bachelier_put_value(double k, double s0, double maturity, double sigma_n);
double bachelier_call_value(double k, double s0, double maturity, double sigma_n);
double bachelier_binary_put(double k, double s0, double maturity, double sigma_n);

// --- Logistic (Carr-Torricelli) model -------------------------------------
// b(T) = a * sqrt(T); put = b * ln(1 + exp((k - s0)/b)), overflow safe.

PricingResult logistic_put(double k, double s0, double maturity, double a);
PricingResult logistic_call(double k, double s0, double maturity, double a);

double logistic_put_value(double k, double s0, double maturity, double a);
double logistic_call_value(double k, double s0, double maturity, double a);
double logistic_binary_put(double k, double s0, double maturity, double a);

// --- Primal/dual function family ------------------------------------------

/// ln(1 + e^x) evaluated as x + log1p(e^-x) for x > 0 so it cannot overflow.
double softplus(double x);

/// Bernoulli entropy H(delta) = -d ln d - (1-d) ln(1-d); 0 at the endpoints.
double entropy(double delta);

/// Dual-delta volatility sqrt(H(d) d (1-d)); zero at the endpoints.
double eta_delta(double delta);

/// Primal variance function
/// sqrt((1+e^z) ln(1+e^-z) + (1+e^-z) ln(1+e^z)); even in z, finite for
/// |z| <= 700.
double eta_z(double z);

double pi_z(double z);          // ln(1 + e^z)
double pi_star(double delta);   // -H(delta)
double delta_of_z(double z);    // logistic CDF (1 + e^-z)^-1
double z_of_delta(double delta);  // logit, inverse of delta_of_z

/// b(tau) = a * sqrt(tau).
double scale_b(double tau, double a);

/// Dual put value p*(delta, tau) = -b(tau) H(delta).
double dual_put_value(double delta, double tau, double a);

/// Dual excess price X*(delta, tau) = d p*/d delta = b(tau) logit(delta).
double dual_excess_price(double delta, double tau, double a);

/// Local volatility of the excess-strike diffusion:
/// sqrt(2 b(t) b'(t)) * eta(x / b(t)) = a * eta(x / (a sqrt(t))).
double logistic_local_vol(double x, double t, double a);

}  // namespace dp::analytic
