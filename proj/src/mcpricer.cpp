#include "dualpricer/mcpricer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "dualpricer/analytic.hpp"
#include "dualpricer/stochastic.hpp"

namespace dp::mc {

namespace {

using stochastic::RngStream;

double payoff(OptionKind kind, double terminal, double strike) {
    const double intrinsic =
        kind == OptionKind::Call ? terminal - strike : strike - terminal;
    return std::max(intrinsic, 0.0);
}

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;

    void add(double y) {
        sum += y;
        sum_sq += y * y;
        ++n;
    }
    double mean() const { return sum / static_cast<double>(n); }
    double std_error() const {
        if (n < 2) return 0.0;  // degenerate-sample sentinel
        const double m = mean();
        const double var =
            std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) /
                              static_cast<double>(n - 1));
        return std::sqrt(var / static_cast<double>(n));
    }
};

// One discounted payoff sample per call; `flip` negates every Gaussian draw
// so an antithetic partner replays the same stream mirrored.
class Sampler {
public:
    virtual ~Sampler() = default;
    virtual double sample(RngStream& rng, bool flip) const = 0;
};

class BsmSampler final : public Sampler {
public:
    BsmSampler(const BsmParams& p, const OptionSpec& s) : p_(p), s_(s) {
        drift_ = (p.rate - 0.5 * p.sigma * p.sigma) * s.maturity;
        vol_ = p.sigma * std::sqrt(s.maturity);
        discount_ = std::exp(-p.rate * s.maturity);
    }
    double sample(RngStream& rng, bool flip) const override {
        const double z = flip ? -rng.next_normal() : rng.next_normal();
        const double terminal = s_.spot * std::exp(drift_ + vol_ * z);
        return discount_ * payoff(s_.kind, terminal, s_.strike);
    }

private:
    BsmParams p_;
    OptionSpec s_;
    double drift_, vol_, discount_;
};

class BachelierSampler final : public Sampler {
public:
    BachelierSampler(const BachelierParams& p, const OptionSpec& s)
        : s_(s), vol_(p.sigma_n * std::sqrt(s.maturity)) {}
    double sample(RngStream& rng, bool flip) const override {
        const double z = flip ? -rng.next_normal() : rng.next_normal();
        return payoff(s_.kind, s_.spot + vol_ * z, s_.strike);
    }

private:
    OptionSpec s_;
    double vol_;
};

class LogisticEulerSampler final : public Sampler {
public:
    LogisticEulerSampler(const LogisticParams& p, const OptionSpec& s,
                         int n_steps)
        : s_(s), a_(p.scale), n_steps_(n_steps) {
        if (n_steps < 1) throw std::domain_error("DOMAIN: n_steps >= 1 required");
        dt_ = s.maturity / n_steps;
        sqrt_dt_ = std::sqrt(dt_);
    }
    double sample(RngStream& rng, bool flip) const override {
        // Left-point Euler on the excess-strike diffusion, started at x = 0.
        // The first step evaluates the vol at t = dt, where the z = x/b(t)
        // coordinate is well defined (x = 0 makes the t -> 0 limit benign).
        double x = 0.0;
        for (int i = 0; i < n_steps_; ++i) {
            const double t_left = std::max(dt_, i * dt_);
            const double vol = analytic::logistic_local_vol(x, t_left, a_);
            const double z = flip ? -rng.next_normal() : rng.next_normal();
            x += vol * sqrt_dt_ * z;
        }
        return payoff(s_.kind, s_.spot + x, s_.strike);
    }

private:
    OptionSpec s_;
    double a_;
    int n_steps_;
    double dt_, sqrt_dt_;
};

class BinomialPathSampler final : public Sampler {
public:
    BinomialPathSampler(const BinomialParams& p, const OptionSpec& s)
        : p_(p), s_(s) {
        prob_up_ = (1.0 + p.rate - p.down) / (p.up - p.down);
        discount_ = std::pow(1.0 + p.rate, -p.steps);
    }
    double sample(RngStream& rng, bool flip) const override {
        double price = s_.spot;
        for (int i = 0; i < p_.steps; ++i) {
            double u = rng.next_uniform();
            if (flip) u = 1.0 - u;
            price *= u < prob_up_ ? p_.up : p_.down;
        }
        return discount_ * payoff(s_.kind, price, s_.strike);
    }

private:
    BinomialParams p_;
    OptionSpec s_;
    double prob_up_, discount_;
};

std::unique_ptr<Sampler> make_sampler(const ModelParams& params,
                                      const OptionSpec& spec, int n_steps) {
    if (const auto* p = std::get_if<BsmParams>(&params)) {
        return std::make_unique<BsmSampler>(*p, spec);
    }
    if (const auto* p = std::get_if<BachelierParams>(&params)) {
        return std::make_unique<BachelierSampler>(*p, spec);
    }
    if (const auto* p = std::get_if<LogisticParams>(&params)) {
        return std::make_unique<LogisticEulerSampler>(*p, spec, n_steps);
    }
    return std::make_unique<BinomialPathSampler>(
        std::get<BinomialParams>(params), spec);
}

}  // namespace

Estimate mc_price(const ModelParams& params, const OptionSpec& spec,
                  std::size_t n_paths, int n_steps, std::uint64_t seed,
                  bool antithetic) {
    const auto errors = validate(spec, params);
    if (!errors.empty()) {
        throw std::invalid_argument("INVALID: " + errors.front().code);
    }
    if (spec.style != ExerciseStyle::European) {
        throw std::invalid_argument("UNSUPPORTED: American style");
    }
    if (n_paths < 1) throw std::domain_error("DOMAIN: n_paths >= 1 required");

    const auto start = std::chrono::steady_clock::now();
    const auto sampler = make_sampler(params, spec, n_steps);

    Accumulator acc;
    if (antithetic) {
        const std::size_t n_pairs = std::max<std::size_t>(1, n_paths / 2);
        for (std::size_t p = 0; p < n_pairs; ++p) {
            stochastic::RngStream rng_a(seed, p);
            stochastic::RngStream rng_b(seed, p);
            const double y =
                0.5 * (sampler->sample(rng_a, false) + sampler->sample(rng_b, true));
            if (!std::isfinite(y)) throw std::runtime_error("NUMERIC: payoff");
            acc.add(y);
        }
    } else {
        for (std::size_t p = 0; p < n_paths; ++p) {
            stochastic::RngStream rng(seed, p);
            const double y = sampler->sample(rng, false);
            if (!std::isfinite(y)) throw std::runtime_error("NUMERIC: payoff");
            acc.add(y);
        }
    }

    Estimate est;
    est.value = acc.mean();
    est.std_error = acc.std_error();
    est.n_paths = n_paths;
    est.n_steps = std::holds_alternative<LogisticParams>(params) ? n_steps : 0;
    est.seed = seed;
    est.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return est;
}

std::optional<double> closed_form_price(const ModelParams& params,
                                        const OptionSpec& spec) {
    if (const auto* p = std::get_if<BsmParams>(&params)) {
        return spec.kind == OptionKind::Call
                   ? analytic::bsm_call_value(spec.maturity, spec.spot,
                                              spec.strike, p->rate, p->sigma)
                   : analytic::bsm_put_value(spec.maturity, spec.spot,
                                             spec.strike, p->rate, p->sigma);
    }
    if (const auto* p = std::get_if<BachelierParams>(&params)) {
        return spec.kind == OptionKind::Call
                   ? analytic::bachelier_call_value(spec.strike, spec.spot,
                                                    spec.maturity, p->sigma_n)
                   : analytic::bachelier_put_value(spec.strike, spec.spot,
                                                   spec.maturity, p->sigma_n);
    }
    if (const auto* p = std::get_if<LogisticParams>(&params)) {
        return spec.kind == OptionKind::Call
                   ? analytic::logistic_call_value(spec.strike, spec.spot,
                                                   spec.maturity, p->scale)
                   : analytic::logistic_put_value(spec.strike, spec.spot,
                                                  spec.maturity, p->scale);
    }
    return std::nullopt;  // binomial: no continuous closed form here
}

std::vector<ConvergenceRow> convergence_report(
    const ModelParams& params, const OptionSpec& spec,
    const std::vector<std::size_t>& path_counts, int n_steps,
    std::uint64_t seed) {
    const std::optional<double> oracle = closed_form_price(params, spec);
    std::vector<ConvergenceRow> rows;
    rows.reserve(path_counts.size());
    for (std::size_t n : path_counts) {
        const Estimate est = mc_price(params, spec, n, n_steps, seed);
        ConvergenceRow row;
        row.n_paths = n;
        row.estimate = est.value;
        row.std_error = est.std_error;
        if (oracle) row.abs_error = std::fabs(est.value - *oracle);
        rows.push_back(row);
    }
    return rows;
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                           std::ostream& os) {
    os << "n_paths,estimate,std_error,abs_error\n";
    char line[160];
    for (const auto& row : rows) {
        if (row.abs_error) {
            std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g\n",
                          row.n_paths, row.estimate, row.std_error,
                          *row.abs_error);
        } else {
            std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,\n", row.n_paths,
                          row.estimate, row.std_error);
        }
        os << line;
    }
}

}  // namespace dp::mc
