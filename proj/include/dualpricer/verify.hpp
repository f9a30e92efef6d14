#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dp::verify {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct CheckResult {
    std::string name;
    double statistic = 0.0;  // pass iff statistic <= tolerance
    double tolerance = 0.0;
    bool pass = false;
    std::map<std::string, double> details;
};

/// All check names, in execution order.
const std::vector<std::string>& check_names();

/// Runs the selected checks (all when the selection is empty) and returns
/// every result; failures are data, not exceptions. Throws
/// std::invalid_argument with an UNKNOWN_CHECK message for a bad name.
std::vector<CheckResult> run_suite(const std::vector<std::string>& selection = {},
                                   std::uint64_t seed = kDefaultSeed);

/// Euler simulation of the dual-delta SDE d(Delta) = eta_delta(Delta) dW
/// from delta0, clamped to [1e-9, 1 - 1e-9]; asserts the martingale
/// property |mean - delta0| <= 3 SE and that every path stays in [0, 1].
CheckResult dual_delta_martingale(double a, double maturity,
                                  std::size_t n_paths, int n_steps,
                                  std::uint64_t seed, double delta0 = 0.5);

/// CSV: header check,statistic,tolerance,pass.
void write_report_csv(const std::vector<CheckResult>& results,
                      std::ostream& os);

/// Human-readable table, one line per check.
void write_report_table(const std::vector<CheckResult>& results,
                        std::ostream& os);

}  // namespace dp::verify
