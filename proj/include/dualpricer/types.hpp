#pragma once

#include <cmath>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace dp {

enum class OptionKind { Call, Put };
enum class ExerciseStyle { European, American };

/// Vanilla option contract descriptor. Strike and spot may be negative;
/// models that require positive prices reject such contracts in validate().
struct OptionSpec {
    OptionKind kind = OptionKind::Call;
    ExerciseStyle style = ExerciseStyle::European;
    double strike = 0.0;
    double maturity = 0.0;  // years
    double spot = 0.0;
};

struct BinomialParams {
    double up = 0.0;    // per-period up factor u
    double down = 0.0;  // per-period down factor d
    double rate = 0.0;  // per-period interest rate r
    int steps = 0;
};

struct BsmParams {
    double rate = 0.0;   // continuously compounded, per year
    double sigma = 0.0;  // per sqrt(year)
};

struct BachelierParams {
    double sigma_n = 0.0;  // absolute volatility, price units per sqrt(year)
};

struct LogisticParams {
    double scale = 0.0;  // local-volatility scale a, so b(T) = a * sqrt(T)
};

using ModelParams =
    std::variant<BinomialParams, BsmParams, BachelierParams, LogisticParams>;

const char* model_name(const ModelParams& params);

struct PricingResult {
    double price = 0.0;
    std::string model;
    std::map<std::string, double> greeks;
    std::map<std::string, double> diagnostics;
};

struct ValidationError {
    std::string code;     // machine readable, e.g. NO_ARBITRAGE_VIOLATED
    std::string message;  // human readable
};

/// Checks the (contract, model) pair against every model invariant,
/// including the binomial no-arbitrage gate d < 1+r < u. Pure and total:
/// returns the full list of violations, empty when admissible.
std::vector<ValidationError> validate(const OptionSpec& spec,
                                      const ModelParams& params);

}  // namespace dp
