#pragma once

namespace dp::normal {

/// Standard normal CDF via the complementary error function; accurate in
/// both tails out to |x| ~ 37.
double cdf(double x);

/// Standard normal density.
double pdf(double x);

/// Inverse CDF. Rational approximation refined by one Newton step;
/// round-trips cdf(quantile(q)) = q to ~1e-14 for q in [1e-8, 1-1e-8].
double quantile(double q);

}  // namespace dp::normal
