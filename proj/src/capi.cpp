#include "dualpricer.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>
#include <utility>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dualpricer/analytic.hpp"
#include "dualpricer/bench.hpp"
#include "dualpricer/binomial.hpp"
#include "dualpricer/greeks.hpp"
#include "dualpricer/normal.hpp"
#include "dualpricer/scenario.hpp"
#include "dualpricer/stochastic.hpp"
#include "dualpricer/verify.hpp"

struct dp_scenario {
    dp::Scenario inner;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

dp_status set_error(dp_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
dp_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const std::invalid_argument& e) {
        return set_error(DP_ERR_VALIDATION, e.what());
    } catch (const std::domain_error& e) {
        return set_error(DP_ERR_VALIDATION, e.what());
    } catch (const std::exception& e) {
        return set_error(DP_ERR_NUMERIC, e.what());
    }
}

std::uint64_t effective_seed(const dp::Scenario& scenario) {
    return scenario.seed.value_or(dp::verify::kDefaultSeed);
}

// Deterministic price for a scenario: lattice for binomial, closed form for
// the continuous models. American exercise is lattice-only.
double price_value(const dp::OptionSpec& spec, const dp::ModelParams& params) {
    using namespace dp;
    if (const auto* p = std::get_if<BinomialParams>(&params)) {
        auto lattice = binomial::build_lattice(spec.spot, *p);
        return binomial::price(lattice, spec).price;
    }
    if (spec.style != ExerciseStyle::European) {
        throw std::invalid_argument(
            "INVALID: American exercise requires the binomial model");
    }
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
    const auto& p = std::get<dp::LogisticParams>(params);
    return spec.kind == OptionKind::Call
               ? analytic::logistic_call_value(spec.strike, spec.spot,
                                               spec.maturity, p.scale)
               : analytic::logistic_put_value(spec.strike, spec.spot,
                                              spec.maturity, p.scale);
}

void append_line(std::string& out, const char* label, double value) {
    char line[96];
    std::snprintf(line, sizeof(line), "%s: %.7f\n", label, value);
    out += line;
}

}  // namespace

extern "C" {

dp_status dp_scenario_from_json(const char* json_text, dp_scenario** out) {
    if (!json_text || !out) {
        return set_error(DP_ERR_VALIDATION, "INVALID: null argument");
    }
    *out = nullptr;
    return guarded([&] {
        auto scenario = std::make_unique<dp_scenario>();
        scenario->inner = dp::scenario_from_json(json_text);
        *out = scenario.release();
        return DP_OK;
    });
}

void dp_scenario_free(dp_scenario* scenario) { delete scenario; }

void dp_scenario_set_seed(dp_scenario* scenario, uint64_t seed) {
    if (scenario) scenario->inner.seed = seed;
}

int dp_scenario_has_seed(const dp_scenario* scenario) {
    return scenario && scenario->inner.seed.has_value() ? 1 : 0;
}

dp_status dp_price(const dp_scenario* scenario, int with_greeks,
                   char** out_report) {
    if (!scenario || !out_report) {
        return set_error(DP_ERR_VALIDATION, "INVALID: null argument");
    }
    *out_report = nullptr;
    return guarded([&] {
        const dp::Scenario& s = scenario->inner;
        const double price = price_value(s.spec, s.params);
        if (!std::isfinite(price)) {
            throw std::runtime_error("NUMERIC: non-finite price");
        }
        std::string report = "model: " + s.model + "\n";
        append_line(report, "price", price);
        if (with_greeks) {
            using dp::greeks::Greek;
            const dp::greeks::PriceFn fn = price_value;
            const std::pair<Greek, const char*> wanted[] = {
                {Greek::Delta, "delta"}, {Greek::Gamma, "gamma"},
                {Greek::Theta, "theta"}, {Greek::Vega, "vega"},
                {Greek::Rho, "rho"},
            };
            for (const auto& [which, label] : wanted) {
                try {
                    append_line(report, label,
                                dp::greeks::fd_greek(fn, which, s.spec, s.params));
                } catch (const std::runtime_error&) {
                    // greek not applicable to this model; omit the line
                }
            }
        }
        *out_report = dup_string(report);
        return DP_OK;
    });
}

dp_status dp_simulate_csv(const dp_scenario* scenario, char** out_csv) {
    if (!scenario || !out_csv) {
        return set_error(DP_ERR_VALIDATION, "INVALID: null argument");
    }
    *out_csv = nullptr;
    return guarded([&] {
        using namespace dp;
        const Scenario& s = scenario->inner;
        const std::uint64_t seed = effective_seed(s);
        stochastic::PathBatch batch;

        if (const auto* p = std::get_if<BinomialParams>(&s.params)) {
            const auto grid =
                stochastic::TimeGrid::make_uniform(s.spec.maturity, p->steps);
            const double prob_up =
                binomial::risk_neutral_prob(p->up, p->down, p->rate);
            batch.grid = grid;
            batch.n_paths = s.paths;
            batch.seed = seed;
            batch.values.resize(s.paths * (grid.steps() + 1));
            for (std::size_t path = 0; path < s.paths; ++path) {
                stochastic::RngStream rng(seed, path);
                double price = s.spec.spot;
                batch.at(path, 0) = price;
                for (int i = 0; i < grid.steps(); ++i) {
                    price *= rng.next_uniform() < prob_up ? p->up : p->down;
                    batch.at(path, i + 1) = price;
                }
            }
        } else if (const auto* p = std::get_if<BsmParams>(&s.params)) {
            const auto grid =
                stochastic::TimeGrid::make_uniform(s.spec.maturity, s.mc_steps);
            batch = stochastic::gbm_exact(s.spec.spot, p->rate, p->sigma, grid,
                                          s.paths, seed);
        } else if (const auto* p = std::get_if<BachelierParams>(&s.params)) {
            const auto grid =
                stochastic::TimeGrid::make_uniform(s.spec.maturity, s.mc_steps);
            const double sigma_n = p->sigma_n;
            batch = stochastic::euler_local_vol(
                s.spec.spot, [sigma_n](double, double) { return sigma_n; },
                grid, s.paths, seed);
        } else {
            const auto& lp = std::get<LogisticParams>(s.params);
            const auto grid =
                stochastic::TimeGrid::make_uniform(s.spec.maturity, s.mc_steps);
            const double dt = grid.dt(0);
            const double s0 = s.spec.spot, a = lp.scale;
            // The t = 0 vol is evaluated at t = dt: the spot starts exactly
            // at the distribution's center, where the limit is benign.
            batch = stochastic::euler_local_vol(
                s0,
                [s0, a, dt](double x, double t) {
                    return analytic::logistic_local_vol(x - s0, std::max(t, dt), a);
                },
                grid, s.paths, seed);
        }

        std::ostringstream os;
        stochastic::write_paths_csv(batch, os);
        *out_csv = dup_string(os.str());
        return DP_OK;
    });
}

dp_status dp_compare_csv(const dp_scenario* scenario, double k_min,
                         double k_max, int k_steps, char** out_csv) {
    if (!scenario || !out_csv) {
        return set_error(DP_ERR_VALIDATION, "INVALID: null argument");
    }
    *out_csv = nullptr;
    return guarded([&] {
        using namespace dp;
        if (!(k_min < k_max) || k_steps < 1) {
            throw std::invalid_argument(
                "INVALID: need k_min < k_max and k_steps >= 1");
        }
        const Scenario& s = scenario->inner;

        // Curves to emit: the configured model, and when it is one of the
        // Bachelier/logistic pair, the counterpart with the matched scale
        // (the paper's side-by-side comparison).
        struct Curve {
            std::string model;
            ModelParams params;
        };
        std::vector<Curve> curves;
        curves.push_back({s.model, s.params});
        if (const auto* p = std::get_if<LogisticParams>(&s.params)) {
            curves.push_back({"bachelier", BachelierParams{p->scale}});
        } else if (const auto* p = std::get_if<BachelierParams>(&s.params)) {
            curves.push_back({"logistic", LogisticParams{p->sigma_n}});
        }

        std::ostringstream os;
        os << "x,series,value\n";
        char line[160];
        for (int i = 0; i <= k_steps; ++i) {
            const double k = k_min + (k_max - k_min) * i / k_steps;
            OptionSpec spec = s.spec;
            spec.strike = k;
            spec.style = ExerciseStyle::European;
            for (const auto& curve : curves) {
                spec.kind = OptionKind::Put;
                const double put = price_value(spec, curve.params);
                spec.kind = OptionKind::Call;
                const double call = price_value(spec, curve.params);
                std::snprintf(line, sizeof(line), "%.17g,%s_put,%.17g\n", k,
                              curve.model.c_str(), put);
                os << line;
                std::snprintf(line, sizeof(line), "%.17g,%s_call,%.17g\n", k,
                              curve.model.c_str(), call);
                os << line;
                double binary = 0.0;
                bool have_binary = true;
                if (const auto* p = std::get_if<BachelierParams>(&curve.params)) {
                    binary = analytic::bachelier_binary_put(k, spec.spot,
                                                            spec.maturity,
                                                            p->sigma_n);
                } else if (const auto* p =
                               std::get_if<LogisticParams>(&curve.params)) {
                    binary = analytic::logistic_binary_put(k, spec.spot,
                                                           spec.maturity,
                                                           p->scale);
                } else if (const auto* p = std::get_if<BsmParams>(&curve.params)) {
                    // binary put = dp/dk = e^{-r tau} N(-d_minus)
                    const auto res = analytic::bsm_price(
                        spec.maturity, spec.spot, k, p->rate, p->sigma,
                        OptionKind::Put);
                    binary = std::exp(-p->rate * spec.maturity) *
                             normal::cdf(-res.diagnostics.at("d_minus"));
                } else {
                    have_binary = false;  // binomial: no closed-form binary
                }
                if (have_binary) {
                    std::snprintf(line, sizeof(line), "%.17g,%s_binary_put,%.17g\n",
                                  k, curve.model.c_str(), binary);
                    os << line;
                }
            }
        }
        *out_csv = dup_string(os.str());
        return DP_OK;
    });
}

dp_status dp_funcs_csv(char** out_csv) {
    if (!out_csv) return set_error(DP_ERR_VALIDATION, "INVALID: null argument");
    *out_csv = nullptr;
    return guarded([&] {
        using namespace dp::analytic;
        std::ostringstream os;
        os << "x,series,value\n";
        char line[160];
        auto emit = [&](double x, const char* series, double value) {
            std::snprintf(line, sizeof(line), "%.17g,%s,%.17g\n", x, series,
                          value);
            os << line;
        };
        for (int i = 0; i <= 320; ++i) {
            const double z = -8.0 + 16.0 * i / 320.0;
            emit(z, "eta_z", eta_z(z));
            emit(z, "pi", pi_z(z));
            emit(z, "delta_of_z", delta_of_z(z));
        }
        for (int i = 0; i <= 498; ++i) {
            const double delta = 0.001 + (0.999 - 0.001) * i / 498.0;
            emit(delta, "eta_delta", eta_delta(delta));
            emit(delta, "pi_star", pi_star(delta));
            emit(delta, "z_of_delta", z_of_delta(delta));
        }
        *out_csv = dup_string(os.str());
        return DP_OK;
    });
}

dp_status dp_verify(const char* checks_csv, uint64_t seed, char** out_csv,
                    char** out_table) {
    if (out_csv) *out_csv = nullptr;
    if (out_table) *out_table = nullptr;
    return guarded([&]() -> dp_status {
        std::vector<std::string> selection;
        if (checks_csv && *checks_csv) {
            std::istringstream stream(checks_csv);
            std::string name;
            while (std::getline(stream, name, ',')) {
                if (!name.empty()) selection.push_back(name);
            }
        }
        const auto results = dp::verify::run_suite(selection, seed);
        if (out_csv) {
            std::ostringstream os;
            dp::verify::write_report_csv(results, os);
            *out_csv = dup_string(os.str());
        }
        if (out_table) {
            std::ostringstream os;
            dp::verify::write_report_table(results, os);
            *out_table = dup_string(os.str());
        }
        for (const auto& res : results) {
            if (!res.pass) {
                return set_error(DP_ERR_VERIFY_FAILED,
                                 "VERIFY_FAILED: " + res.name);
            }
        }
        return DP_OK;
    });
}

dp_status dp_bench(uint64_t n_evals, int reps, char** out_csv,
                   char** out_table) {
    if (out_csv) *out_csv = nullptr;
    if (out_table) *out_table = nullptr;
    return guarded([&] {
        const auto report =
            dp::bench::run_bench(static_cast<std::size_t>(n_evals), reps);
        if (out_csv) {
            std::ostringstream os;
            dp::bench::write_bench_csv(report, os);
            *out_csv = dup_string(os.str());
        }
        if (out_table) {
            std::ostringstream os;
            dp::bench::write_bench_table(report, os);
            *out_table = dup_string(os.str());
        }
        return DP_OK;
    });
}

const char* dp_last_error(void) { return g_last_error.c_str(); }

void dp_free_string(char* s) { std::free(s); }

}  // extern "C"
