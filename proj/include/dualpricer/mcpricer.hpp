#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dualpricer/types.hpp"

namespace dp::mc {

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
    int n_steps = 0;
    double elapsed_seconds = 0.0;
    std::uint64_t seed = 0;
};

/// Monte-Carlo price of a European option under the model's risk-neutral
/// dynamics. BSM and Bachelier sample the terminal distribution exactly and
/// ignore n_steps; the logistic model time-steps with Euler-Maruyama; the
/// binomial model samples up/down paths directly. Deterministic given seed,
/// independent of how paths are partitioned across workers.
///
/// With antithetic on, the path budget is spent on n_paths/2 (+Z, -Z) pairs
/// and the standard error is computed over pair averages.
Estimate mc_price(const ModelParams& params, const OptionSpec& spec,
                  std::size_t n_paths, int n_steps, std::uint64_t seed,
                  bool antithetic = false);

/// Closed-form reference value, when the model has one (not binomial).
std::optional<double> closed_form_price(const ModelParams& params,
                                        const OptionSpec& spec);

struct ConvergenceRow {
    std::size_t n_paths = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::optional<double> abs_error;  // empty when no closed form exists
};

std::vector<ConvergenceRow> convergence_report(
    const ModelParams& params, const OptionSpec& spec,
    const std::vector<std::size_t>& path_counts, int n_steps,
    std::uint64_t seed);

/// CSV: header n_paths,estimate,std_error,abs_error; abs_error left empty
/// when there is no oracle.
void write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                           std::ostream& os);

}  // namespace dp::mc
