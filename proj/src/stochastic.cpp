#include "dualpricer/stochastic.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "dualpricer/normal.hpp"

namespace dp::stochastic {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : key_(mix64(seed + kGolden) ^ mix64(stream_id * kGolden + 1)) {}

std::uint64_t RngStream::next_u64() {
    return mix64(key_ + (++counter_) * kGolden);
}

double RngStream::next_uniform() {
    // 53 random bits, centered so the result can be neither 0 nor 1.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() { return normal::quantile(next_uniform()); }

int RngStream::next_sign() { return (next_u64() & 1u) ? 1 : -1; }

TimeGrid TimeGrid::make_uniform(double horizon, int n_steps) {
    if (!(horizon > 0.0) || n_steps < 1) {
        throw std::domain_error("TimeGrid: horizon > 0 and n_steps >= 1 required");
    }
    TimeGrid grid;
    grid.uniform_spacing = true;
    grid.t.resize(n_steps + 1);
    for (int i = 0; i <= n_steps; ++i) {
        grid.t[i] = horizon * static_cast<double>(i) / n_steps;
    }
    return grid;
}

TimeGrid TimeGrid::from_times(std::vector<double> times) {
    if (times.size() < 2 || times.front() != 0.0) {
        throw std::domain_error("TimeGrid: need t[0] = 0 and at least one step");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw std::domain_error("TimeGrid: times must be strictly increasing");
        }
    }
    TimeGrid grid;
    grid.t = std::move(times);
    grid.uniform_spacing = false;
    return grid;
}

namespace {

PathBatch make_batch(const TimeGrid& grid, std::size_t n_paths,
                     std::uint64_t seed, std::uint64_t stream_offset) {
    PathBatch batch;
    batch.grid = grid;
    batch.n_paths = n_paths;
    batch.seed = seed;
    batch.stream_offset = stream_offset;
    batch.values.resize(n_paths * (grid.steps() + 1));
    return batch;
}

}  // namespace

PathBatch sample_brownian(const TimeGrid& grid, std::size_t n_paths,
                          std::uint64_t seed, std::uint64_t stream_offset) {
    PathBatch batch = make_batch(grid, n_paths, seed, stream_offset);
    const int n = grid.steps();
    for (std::size_t p = 0; p < n_paths; ++p) {
        RngStream rng(seed, stream_offset + p);
        batch.at(p, 0) = 0.0;
        for (int i = 0; i < n; ++i) {
            batch.at(p, i + 1) =
                batch.at(p, i) + std::sqrt(grid.dt(i)) * rng.next_normal();
        }
    }
    return batch;
}

std::vector<double> scaled_random_walk(int n, double horizon, RngStream& rng) {
    if (n < 1) throw std::domain_error("scaled_random_walk: n >= 1 required");
    (void)horizon;  // only fixes the grid spacing horizon/n, not the values
    std::vector<double> walk(n + 1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    walk[0] = 0.0;
    for (int i = 1; i <= n; ++i) {
        walk[i] = walk[i - 1] + scale * rng.next_sign();
    }
    return walk;
}

PathBatch gbm_exact(double s0, double mu, double sigma, const TimeGrid& grid,
                    std::size_t n_paths, std::uint64_t seed,
                    std::uint64_t stream_offset) {
    if (!(s0 > 0.0) || !(sigma > 0.0)) {
        throw std::domain_error("DOMAIN: gbm_exact requires s0 > 0 and sigma > 0");
    }
    PathBatch batch = make_batch(grid, n_paths, seed, stream_offset);
    const int n = grid.steps();
    const double drift = mu - 0.5 * sigma * sigma;
    for (std::size_t p = 0; p < n_paths; ++p) {
        RngStream rng(seed, stream_offset + p);
        double w = 0.0;
        batch.at(p, 0) = s0;
        for (int i = 0; i < n; ++i) {
            w += std::sqrt(grid.dt(i)) * rng.next_normal();
            batch.at(p, i + 1) =
                s0 * std::exp(drift * grid.t[i + 1] + sigma * w);
        }
    }
    return batch;
}

PathBatch euler_local_vol(double x0, const VolFn& vol_fn, const TimeGrid& grid,
                          std::size_t n_paths, std::uint64_t seed,
                          std::uint64_t stream_offset) {
    PathBatch batch = make_batch(grid, n_paths, seed, stream_offset);
    const int n = grid.steps();
    for (std::size_t p = 0; p < n_paths; ++p) {
        RngStream rng(seed, stream_offset + p);
        double x = x0;
        batch.at(p, 0) = x;
        for (int i = 0; i < n; ++i) {
            const double vol = vol_fn(x, grid.t[i]);
            if (!std::isfinite(vol)) {
                throw std::runtime_error("NUMERIC: vol_fn returned non-finite");
            }
            x += vol * std::sqrt(grid.dt(i)) * rng.next_normal();
            batch.at(p, i + 1) = x;
        }
    }
    return batch;
}

double quadratic_variation(std::span<const double> path) {
    if (path.size() < 2) {
        throw std::domain_error("quadratic_variation: path length >= 2 required");
    }
    double sum = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const double dw = path[i] - path[i - 1];
        sum += dw * dw;
    }
    return sum;
}

double ito_sum(std::span<const double> integrand_values,
               std::span<const double> path) {
    if (path.size() < 2 || integrand_values.size() < path.size() - 1) {
        throw std::invalid_argument("ito_sum: dimension mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        sum += integrand_values[i] * (path[i + 1] - path[i]);
    }
    return sum;
}

double stochastic_exponential(std::span<const double> theta_values,
                              std::span<const double> path,
                              const TimeGrid& grid) {
    const std::size_t n = grid.steps();
    if (path.size() != n + 1 || theta_values.size() < n) {
        throw std::invalid_argument("stochastic_exponential: dimension mismatch");
    }
    double exponent = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = theta_values[i];
        exponent -= theta * (path[i + 1] - path[i]);
        exponent -= 0.5 * theta * theta * grid.dt(static_cast<int>(i));
    }
    return std::exp(exponent);
}

ReflectionEstimate reflection_probability(double level, double w, double t,
                                          std::size_t n_paths, int steps,
                                          std::uint64_t seed) {
    if (!(level > 0.0) || !(w <= level) || !(t > 0.0)) {
        throw std::domain_error("DOMAIN: need m > 0, w <= m, t > 0");
    }
    const TimeGrid grid = TimeGrid::make_uniform(t, steps);
    const double dt_sqrt = std::sqrt(grid.dt(0));
    std::size_t hits = 0;
    for (std::size_t p = 0; p < n_paths; ++p) {
        RngStream rng(seed, p);
        double x = 0.0;
        bool crossed = false;
        for (int i = 0; i < steps; ++i) {
            x += dt_sqrt * rng.next_normal();
            if (x >= level) crossed = true;
        }
        if (crossed && x <= w) ++hits;
    }
    ReflectionEstimate est;
    est.lhs_estimate = static_cast<double>(hits) / static_cast<double>(n_paths);
    est.lhs_std_error = std::sqrt(est.lhs_estimate * (1.0 - est.lhs_estimate) /
                                  static_cast<double>(n_paths));
    est.rhs_closed_form = 1.0 - normal::cdf((2.0 * level - w) / std::sqrt(t));
    return est;
}

std::vector<double> brownian_bridge(const TimeGrid& grid, double start_value,
                                    double end_value, RngStream& rng) {
    const int n = grid.steps();
    const double horizon = grid.horizon();
    std::vector<double> w(n + 1);
    w[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        w[i + 1] = w[i] + std::sqrt(grid.dt(i)) * rng.next_normal();
    }
    // Pin the endpoints: B(t) = a + W(t) - (t/T) (W(T) - (b - a)).
    std::vector<double> bridge(n + 1);
    const double correction = w[n] - (end_value - start_value);
    for (int i = 0; i <= n; ++i) {
        bridge[i] = start_value + w[i] - (grid.t[i] / horizon) * correction;
    }
    bridge[n] = end_value;  // exact, not up to round-off
    return bridge;
}

void write_paths_csv(const PathBatch& batch, std::ostream& os) {
    os << "path_id,step,t,value\n";
    char line[128];
    for (std::size_t p = 0; p < batch.n_paths; ++p) {
        for (int i = 0; i <= batch.grid.steps(); ++i) {
            std::snprintf(line, sizeof(line), "%zu,%d,%.17g,%.17g\n", p, i,
                          batch.grid.t[i], batch.at(p, i));
            os << line;
        }
    }
}

}  // namespace dp::stochastic
