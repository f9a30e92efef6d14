#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace dp::stochastic {

/// Counter-based generator: output i is a bijective mix of key + i, where
/// the key is derived from (seed, stream_id). Distinct stream ids give
/// independent sequences, so path blocks can be produced by independent
/// workers and merged in any order.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    /// Uniform strictly inside (0, 1).
    double next_uniform();
    /// Standard normal via inverse-CDF of the uniform, for cross-platform
    /// reproducibility.
    double next_normal();
    /// +1 or -1 equiprobably.
    int next_sign();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

struct TimeGrid {
    std::vector<double> t;  // strictly increasing, t[0] = 0
    bool uniform_spacing = false;

    static TimeGrid make_uniform(double horizon, int n_steps);
    static TimeGrid from_times(std::vector<double> times);

    int steps() const { return static_cast<int>(t.size()) - 1; }
    double horizon() const { return t.back(); }
    double dt(int i) const { return t[i + 1] - t[i]; }
};

struct PathBatch {
    TimeGrid grid;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream_offset = 0;
    std::vector<double> values;  // path-major, (grid.steps()+1) per path

    double at(std::size_t path, int step) const {
        return values[path * (grid.steps() + 1) + step];
    }
    double& at(std::size_t path, int step) {
        return values[path * (grid.steps() + 1) + step];
    }
    std::span<const double> path(std::size_t p) const {
        const std::size_t len = grid.steps() + 1;
        return {values.data() + p * len, len};
    }
};

/// Brownian paths: W(0) = 0, independent Normal(0, dt) increments.
PathBatch sample_brownian(const TimeGrid& grid, std::size_t n_paths,
                          std::uint64_t seed, std::uint64_t stream_offset = 0);

/// Symmetric random walk scaled by 1/sqrt(n), on the grid i*horizon/n.
std::vector<double> scaled_random_walk(int n, double horizon, RngStream& rng);

/// S_t = s0 exp((mu - sigma^2/2) t + sigma W_t), sampled exactly from
/// Brownian increments.
PathBatch gbm_exact(double s0, double mu, double sigma, const TimeGrid& grid,
                    std::size_t n_paths, std::uint64_t seed,
                    std::uint64_t stream_offset = 0);

using VolFn = std::function<double(double x, double t)>;

/// Euler-Maruyama for dX = vol(X, t) dW with left-point evaluation.
PathBatch euler_local_vol(double x0, const VolFn& vol_fn, const TimeGrid& grid,
                          std::size_t n_paths, std::uint64_t seed,
                          std::uint64_t stream_offset = 0);

/// Sum of squared increments.
double quadratic_variation(std::span<const double> path);

/// Left-point Riemann-Ito sum: sum f(t_i) (W_{i+1} - W_i). The integrand is
/// given by its values on the grid; only the first steps() entries are used.
double ito_sum(std::span<const double> integrand_values,
               std::span<const double> path);

/// exp(-sum theta_i dW_i - 1/2 sum theta_i^2 dt_i), the discrete
/// Doleans-Dade exponential of -theta against the given path.
double stochastic_exponential(std::span<const double> theta_values,
                              std::span<const double> path,
                              const TimeGrid& grid);

struct ReflectionEstimate {
    double lhs_estimate = 0.0;   // MC estimate of P(tau_m <= t, W_t <= w)
    double lhs_std_error = 0.0;
    double rhs_closed_form = 0.0;  // 1 - N((2m - w)/sqrt(t))
};

/// Reflection-equality check with discrete first-passage monitoring. The
/// discrete estimate is biased low because crossings between grid points
/// are missed.
ReflectionEstimate reflection_probability(double level, double w, double t,
                                          std::size_t n_paths, int steps,
                                          std::uint64_t seed);

/// Brownian path conditioned on both endpoints; interior points carry the
/// bridge covariance, endpoints are hit exactly.
std::vector<double> brownian_bridge(const TimeGrid& grid, double start_value,
                                    double end_value, RngStream& rng);

/// CSV export: header path_id,step,t,value, floats with 17 significant
/// digits.
void write_paths_csv(const PathBatch& batch, std::ostream& os);

}  // namespace dp::stochastic
