#include "dualpricer/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dualpricer/analytic.hpp"
#include "dualpricer/binomial.hpp"
#include "dualpricer/mcpricer.hpp"
#include "dualpricer/normal.hpp"
#include "dualpricer/stochastic.hpp"

namespace dp::verify {

namespace {

using namespace dp::analytic;
using stochastic::RngStream;
using stochastic::TimeGrid;

CheckResult make_result(std::string name, double statistic, double tolerance) {
    CheckResult res;
    res.name = std::move(name);
    res.statistic = statistic;
    res.tolerance = tolerance;
    res.pass = statistic <= tolerance;
    return res;
}

// --- analytic identities ---------------------------------------------------

CheckResult bsm_pde_residual(std::uint64_t) {
    // c(t, x) for K = 100, T = 1, r = 0.05, sigma = 0.2; residual of
    // c_t + r x c_x + 1/2 sigma^2 x^2 c_xx - r c by central differences.
    const double strike = 100.0, maturity = 1.0, r = 0.05, sigma = 0.2;
    const double h_t = 1e-5;
    auto c = [&](double t, double x) {
        return bsm_call_value(maturity - t, x, strike, r, sigma);
    };
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double t = 0.9 * maturity * i / 19.0;
        for (int j = 0; j < 20; ++j) {
            const double x = 0.5 * strike + 1.5 * strike * j / 19.0;
            // h_x = 1e-3 x leaves ~1e-4 of truncation in the 1/2 sigma^2 x^2
            // c_xx term; 1e-4 x is still far above the round-off floor.
            const double h_x = 1e-4 * x;
            const double c_t = (c(t + h_t, x) - c(t - h_t, x)) / (2.0 * h_t);
            const double c_x = (c(t, x + h_x) - c(t, x - h_x)) / (2.0 * h_x);
            const double c_xx =
                (c(t, x + h_x) - 2.0 * c(t, x) + c(t, x - h_x)) / (h_x * h_x);
            const double residual = c_t + r * x * c_x +
                                    0.5 * sigma * sigma * x * x * c_xx -
                                    r * c(t, x);
            worst = std::max(worst, std::fabs(residual));
        }
    }
    return make_result("bsm_pde_residual", worst, 1e-5);
}

CheckResult dupire_residual_logistic(std::uint64_t) {
    // Forward PDE in (k, T): dp/dT = 1/2 a(k - s0, T)^2 d2p/dk2, a = 1.
    const double a = 1.0, s0 = 0.0;
    const double h_k = 5e-4, h_t = 1e-5;
    auto p = [&](double k, double maturity) {
        return logistic_put_value(k, s0, maturity, a);
    };
    double worst = 0.0;
    for (int i = 0; i <= 24; ++i) {
        const double x = -3.0 + 6.0 * i / 24.0;
        for (int j = 0; j <= 15; ++j) {
            const double maturity = 0.25 + 3.75 * j / 15.0;
            const double p_t =
                (p(x, maturity + h_t) - p(x, maturity - h_t)) / (2.0 * h_t);
            const double p_kk =
                (p(x + h_k, maturity) - 2.0 * p(x, maturity) + p(x - h_k, maturity)) /
                (h_k * h_k);
            const double vol = logistic_local_vol(x - s0, maturity, a);
            worst = std::max(worst, std::fabs(p_t - 0.5 * vol * vol * p_kk));
        }
    }
    return make_result("dupire_residual_logistic", worst, 1e-5);
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return std::max(fc, fd);
}

CheckResult legendre_duality(std::uint64_t) {
    // sup_z (delta z - pi(z)) must equal -H(delta) = pi*(delta).
    double worst = 0.0;
    for (int i = 0; i < 97; ++i) {
        const double delta = 0.01 + (0.99 - 0.01) * i / 96.0;
        const double sup = golden_section_max(
            [&](double z) { return delta * z - pi_z(z); }, -40.0, 40.0);
        worst = std::max(worst, std::fabs(sup + entropy(delta)));
    }
    return make_result("legendre_duality", worst, 1e-6);
}

CheckResult neumann_ode_residual(std::uint64_t) {
    // eta(z)^2 pi''(z) + z pi'(z) - pi(z) = 0 with exact pi' = delta(z),
    // pi'' = delta (1 - delta).
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double z = -10.0 + 20.0 * i / 400.0;
        const double d = delta_of_z(z);
        const double eta = eta_z(z);
        const double residual = eta * eta * d * (1.0 - d) + z * d - pi_z(z);
        worst = std::max(worst, std::fabs(residual));
    }
    return make_result("neumann_ode_residual", worst, 1e-6);
}

CheckResult binary_put_consistency(std::uint64_t) {
    // Central difference d(put)/dk against the closed-form binary put for
    // both the Bachelier and logistic models.
    const double s0 = 0.0, maturity = 1.7, sigma_n = 1.0, a = 1.0;
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i <= 30; ++i) {
        const double k = -3.0 + 6.0 * i / 30.0;
        const double fd_bach = (bachelier_put_value(k + h, s0, maturity, sigma_n) -
                                bachelier_put_value(k - h, s0, maturity, sigma_n)) /
                               (2.0 * h);
        worst = std::max(
            worst, std::fabs(fd_bach - bachelier_binary_put(k, s0, maturity, sigma_n)));
        const double fd_log = (logistic_put_value(k + h, s0, maturity, a) -
                               logistic_put_value(k - h, s0, maturity, a)) /
                              (2.0 * h);
        worst = std::max(
            worst, std::fabs(fd_log - logistic_binary_put(k, s0, maturity, a)));
    }
    return make_result("binary_put_consistency", worst, 1e-6);
}

CheckResult put_call_parity(std::uint64_t) {
    double worst = 0.0;
    const double s0 = 100.0, maturity = 1.0;
    for (int i = 0; i <= 20; ++i) {
        const double k = 80.0 + 2.0 * i;
        worst = std::max(worst,
                         std::fabs(bachelier_call_value(k, s0, maturity, 1.0) -
                                   bachelier_put_value(k, s0, maturity, 1.0) -
                                   (s0 - k)));
        worst = std::max(worst,
                         std::fabs(logistic_call_value(k, s0, maturity, 1.0) -
                                   logistic_put_value(k, s0, maturity, 1.0) -
                                   (s0 - k)));
        const double r = 0.05, sigma = 0.2;
        worst = std::max(
            worst, std::fabs(bsm_call_value(maturity, s0, k, r, sigma) -
                             bsm_put_value(maturity, s0, k, r, sigma) -
                             (s0 - k * std::exp(-r * maturity))));
    }
    return make_result("put_call_parity", worst, 1e-10);
}

CheckResult binomial_convergence(std::uint64_t) {
    // CRR lattice with n = 1000 against the closed form.
    const double s0 = 100.0, strike = 100.0, maturity = 1.0, r = 0.05,
                 sigma = 0.2;
    const int n = 1000;
    const double dt = maturity / n;
    BinomialParams params;
    params.up = std::exp(sigma * std::sqrt(dt));
    params.down = 1.0 / params.up;
    params.rate = r * dt;
    params.steps = n;
    OptionSpec spec{OptionKind::Call, ExerciseStyle::European, strike, maturity,
                    s0};
    auto lattice = binomial::build_lattice(s0, params);
    const double tree = binomial::price_european(lattice, spec).price;
    const double closed = bsm_call_value(maturity, s0, strike, r, sigma);
    auto res = make_result("binomial_convergence",
                           std::fabs(tree - closed) / closed, 1e-3);
    res.details["tree_price"] = tree;
    res.details["closed_form"] = closed;
    return res;
}

// --- stochastic checks -----------------------------------------------------

CheckResult qv_check(std::uint64_t seed) {
    const auto grid = TimeGrid::make_uniform(1.0, 1000000);
    const auto batch = stochastic::sample_brownian(grid, 1, seed);
    const double qv = stochastic::quadratic_variation(batch.path(0));
    auto res = make_result("qv_check", std::fabs(qv - 1.0), 0.01);
    res.details["estimate"] = qv;
    return res;
}

CheckResult ito_isometry(std::uint64_t seed) {
    // f = W: E[(int W dW)^2] against E[int W^2 dt], both by MC.
    const std::size_t n_paths = 100000;
    const auto grid = TimeGrid::make_uniform(1.0, 64);
    double sum_sq = 0.0, sum_sq2 = 0.0;
    double sum_qv = 0.0, sum_qv2 = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) {
        RngStream rng(seed, p);
        double w = 0.0, integral = 0.0, time_integral = 0.0;
        for (int i = 0; i < grid.steps(); ++i) {
            const double dw = std::sqrt(grid.dt(i)) * rng.next_normal();
            integral += w * dw;
            time_integral += w * w * grid.dt(i);
            w += dw;
        }
        sum_sq += integral * integral;
        sum_sq2 += integral * integral * integral * integral;
        sum_qv += time_integral;
        sum_qv2 += time_integral * time_integral;
    }
    const double n = static_cast<double>(n_paths);
    const double lhs = sum_sq / n, rhs = sum_qv / n;
    const double var_lhs = (sum_sq2 / n - lhs * lhs) / n;
    const double var_rhs = (sum_qv2 / n - rhs * rhs) / n;
    const double se_diff = std::sqrt(var_lhs + var_rhs);
    auto res = make_result("ito_isometry", std::fabs(lhs - rhs) / se_diff, 3.0);
    res.details["lhs"] = lhs;
    res.details["rhs"] = rhs;
    return res;
}

CheckResult ito_formula_identity(std::uint64_t seed) {
    // RMS over paths of |sum W dW - (W_T^2/2 - T/2)| at n = 1e5 steps.
    const std::size_t n_paths = 1000;
    const int n_steps = 100000;
    const double dt = 1.0 / n_steps;
    const double sqrt_dt = std::sqrt(dt);
    double sum_gap_sq = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) {
        RngStream rng(seed, p);
        double w = 0.0, integral = 0.0;
        for (int i = 0; i < n_steps; ++i) {
            const double dw = sqrt_dt * rng.next_normal();
            integral += w * dw;
            w += dw;
        }
        const double gap = integral - (0.5 * w * w - 0.5);
        sum_gap_sq += gap * gap;
    }
    const double rms = std::sqrt(sum_gap_sq / static_cast<double>(n_paths));
    return make_result("ito_formula_identity", rms, 0.01);
}

struct ExpStats {
    double mean_z = 0.0, se_z = 0.0;       // E[Z_T]
    double mean_ind = 0.0, se_ind = 0.0;   // E[Z_T 1{W_T + theta T <= 0}]
};

ExpStats stochastic_exponential_stats(double theta, std::uint64_t seed) {
    const std::size_t n_paths = 100000;
    const auto grid = TimeGrid::make_uniform(1.0, 16);
    const std::vector<double> thetas(grid.steps(), theta);
    double s1 = 0.0, s2 = 0.0, i1 = 0.0, i2 = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) {
        RngStream rng(seed, p);
        std::vector<double> path(grid.steps() + 1);
        path[0] = 0.0;
        for (int i = 0; i < grid.steps(); ++i) {
            path[i + 1] = path[i] + std::sqrt(grid.dt(i)) * rng.next_normal();
        }
        const double z = stochastic::stochastic_exponential(thetas, path, grid);
        s1 += z;
        s2 += z * z;
        const double ind = path.back() + theta * grid.horizon() <= 0.0 ? z : 0.0;
        i1 += ind;
        i2 += ind * ind;
    }
    const double n = static_cast<double>(n_paths);
    ExpStats stats;
    stats.mean_z = s1 / n;
    stats.se_z = std::sqrt((s2 / n - stats.mean_z * stats.mean_z) / n);
    stats.mean_ind = i1 / n;
    stats.se_ind = std::sqrt((i2 / n - stats.mean_ind * stats.mean_ind) / n);
    return stats;
}

CheckResult stoch_exp_martingale(std::uint64_t seed) {
    const auto stats = stochastic_exponential_stats(0.5, seed);
    auto res = make_result("stoch_exp_martingale",
                           std::fabs(stats.mean_z - 1.0) / stats.se_z, 3.0);
    res.details["mean"] = stats.mean_z;
    res.details["std_error"] = stats.se_z;
    return res;
}

CheckResult girsanov_shift(std::uint64_t seed) {
    // E[Z_T 1{W_T + theta T <= 0}] = N(0) = 1/2: the shifted process is
    // standard Brownian under the new measure.
    const auto stats = stochastic_exponential_stats(0.5, seed + 1);
    auto res = make_result("girsanov_shift",
                           std::fabs(stats.mean_ind - 0.5) / stats.se_ind, 3.0);
    res.details["mean"] = stats.mean_ind;
    res.details["std_error"] = stats.se_ind;
    return res;
}

CheckResult reflection_equality(std::uint64_t seed) {
    // One-sided gate: discrete monitoring biases the estimate low, so
    // rhs - lhs must lie in [-3 SE, 3 SE + C sqrt(dt)].
    const double level = 1.0, w = 0.5, t = 1.0;
    const int steps = 1024;
    const std::size_t n_paths = 200000;
    const auto est =
        stochastic::reflection_probability(level, w, t, n_paths, steps, seed);
    const double diff = est.rhs_closed_form - est.lhs_estimate;
    const double slack = 3.0 * est.lhs_std_error;
    const double bias_budget = 0.5 * std::sqrt(t / steps);
    const double statistic = std::max(-diff - slack, diff - slack - bias_budget);
    auto res = make_result("reflection_equality", statistic, 0.0);
    res.details["lhs"] = est.lhs_estimate;
    res.details["rhs"] = est.rhs_closed_form;
    res.details["std_error"] = est.lhs_std_error;
    return res;
}

CheckResult mc_vs_closed_form(std::uint64_t seed) {
    // Normalized error over the three continuous models; each model's error
    // is divided by its own allowance, so the joint tolerance is 1.
    double worst = 0.0;
    CheckResult res;

    {
        OptionSpec spec{OptionKind::Call, ExerciseStyle::European, 100.0, 1.0,
                        100.0};
        ModelParams params = BsmParams{0.05, 0.2};
        const auto est = mc::mc_price(params, spec, 1000000, 1, seed);
        const double err = std::fabs(est.value - *mc::closed_form_price(params, spec));
        worst = std::max(worst, err / (3.0 * est.std_error));
        res.details["bsm_error"] = err;
        res.details["bsm_std_error"] = est.std_error;
    }
    {
        OptionSpec spec{OptionKind::Put, ExerciseStyle::European, 100.0, 1.0,
                        100.0};
        ModelParams params = BachelierParams{1.0};
        const auto est = mc::mc_price(params, spec, 1000000, 1, seed + 1);
        const double err = std::fabs(est.value - *mc::closed_form_price(params, spec));
        worst = std::max(worst, err / (3.0 * est.std_error));
        res.details["bachelier_error"] = err;
        res.details["bachelier_std_error"] = est.std_error;
    }
    {
        OptionSpec spec{OptionKind::Put, ExerciseStyle::European, 100.0, 1.0,
                        100.0};
        ModelParams params = LogisticParams{1.0};
        const auto est = mc::mc_price(params, spec, 200000, 512, seed + 2);
        const double err = std::fabs(est.value - *mc::closed_form_price(params, spec));
        const double allowance = std::max(3.0 * est.std_error, 5e-3);
        worst = std::max(worst, err / allowance);
        res.details["logistic_error"] = err;
        res.details["logistic_std_error"] = est.std_error;
    }

    CheckResult out = make_result("mc_vs_closed_form", worst, 1.0);
    out.details = res.details;
    return out;
}

CheckResult dual_delta_check(std::uint64_t seed) {
    const auto from_half = dual_delta_martingale(1.0, 1.0, 100000, 512, seed, 0.5);
    const auto from_09 =
        dual_delta_martingale(1.0, 1.0, 100000, 512, seed + 1, 0.9);
    CheckResult res = make_result(
        "dual_delta_martingale",
        std::max(from_half.statistic, from_09.statistic), 3.0);
    res.details["mean_from_0.5"] = from_half.details.at("mean");
    res.details["mean_from_0.9"] = from_09.details.at("mean");
    return res;
}

struct Check {
    const char* name;
    CheckResult (*run)(std::uint64_t seed);
};

const Check kChecks[] = {
    {"bsm_pde_residual", bsm_pde_residual},
    {"dupire_residual_logistic", dupire_residual_logistic},
    {"legendre_duality", legendre_duality},
    {"neumann_ode_residual", neumann_ode_residual},
    {"binary_put_consistency", binary_put_consistency},
    {"put_call_parity", put_call_parity},
    {"binomial_convergence", binomial_convergence},
    {"qv_check", qv_check},
    {"ito_isometry", ito_isometry},
    {"ito_formula_identity", ito_formula_identity},
    {"stoch_exp_martingale", stoch_exp_martingale},
    {"girsanov_shift", girsanov_shift},
    {"reflection_equality", reflection_equality},
    {"mc_vs_closed_form", mc_vs_closed_form},
    {"dual_delta_martingale", dual_delta_check},
};

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& check : kChecks) out.emplace_back(check.name);
        return out;
    }();
    return names;
}

std::vector<CheckResult> run_suite(const std::vector<std::string>& selection,
                                   std::uint64_t seed) {
    for (const auto& name : selection) {
        const bool known =
            std::any_of(std::begin(kChecks), std::end(kChecks),
                        [&](const Check& c) { return name == c.name; });
        if (!known) {
            std::ostringstream msg;
            msg << "UNKNOWN_CHECK: '" << name << "'; valid names:";
            for (const auto& valid : check_names()) msg << ' ' << valid;
            throw std::invalid_argument(msg.str());
        }
    }

    std::vector<CheckResult> results;
    for (const auto& check : kChecks) {
        const bool wanted =
            selection.empty() ||
            std::find(selection.begin(), selection.end(), check.name) !=
                selection.end();
        if (wanted) results.push_back(check.run(seed));
    }
    return results;
}

CheckResult dual_delta_martingale(double a, double maturity,
                                  std::size_t n_paths, int n_steps,
                                  std::uint64_t seed, double delta0) {
    if (!(a > 0.0)) throw std::domain_error("DOMAIN: a must be > 0");
    constexpr double eps = 1e-9;
    const double dt = maturity / n_steps;
    const double sqrt_dt = std::sqrt(dt);
    double sum = 0.0, sum_sq = 0.0;
    bool in_bounds = true;
    for (std::size_t p = 0; p < n_paths; ++p) {
        RngStream rng(seed, p);
        double delta = delta0;
        for (int i = 0; i < n_steps; ++i) {
            delta += eta_delta(delta) * sqrt_dt * rng.next_normal();
            if (!std::isfinite(delta)) {
                throw std::runtime_error("NUMERIC: non-finite dual delta");
            }
            delta = std::clamp(delta, eps, 1.0 - eps);
        }
        if (delta < 0.0 || delta > 1.0) in_bounds = false;
        sum += delta;
        sum_sq += delta * delta;
    }
    const double n = static_cast<double>(n_paths);
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    double statistic = std::fabs(mean - delta0) / se;
    if (!in_bounds) statistic = std::numeric_limits<double>::infinity();
    auto res = make_result("dual_delta_martingale", statistic, 3.0);
    res.details["mean"] = mean;
    res.details["std_error"] = se;
    res.details["start"] = delta0;
    return res;
}

void write_report_csv(const std::vector<CheckResult>& results,
                      std::ostream& os) {
    os << "check,statistic,tolerance,pass\n";
    char line[192];
    for (const auto& res : results) {
        std::snprintf(line, sizeof(line), "%s,%.17g,%.17g,%s\n",
                      res.name.c_str(), res.statistic, res.tolerance,
                      res.pass ? "true" : "false");
        os << line;
    }
}

void write_report_table(const std::vector<CheckResult>& results,
                        std::ostream& os) {
    char line[192];
    for (const auto& res : results) {
        std::snprintf(line, sizeof(line), "%-26s  statistic %12.5g  tol %10.5g  %s\n",
                      res.name.c_str(), res.statistic, res.tolerance,
                      res.pass ? "PASS" : "FAIL");
        os << line;
    }
}

}  // namespace dp::verify
