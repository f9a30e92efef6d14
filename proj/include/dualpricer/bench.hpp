#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dp::bench {

enum class BenchFunction { EtaZ, EtaDelta, Pi, PiStar, DeltaOfZ, ZOfDelta };
enum class BenchModel { Bachelier, Logistic };

const char* function_name(BenchFunction f);
const char* model_name(BenchModel m);

struct BenchRow {
    BenchFunction function;
    BenchModel model;
    std::size_t n_evals = 0;
    double seconds = 0.0;   // minimum over repetitions
    double checksum = 0.0;  // sum of outputs; identical across runs
};

struct BenchReport {
    std::vector<BenchRow> rows;     // 12 rows: 6 functions x 2 models
    double total_bachelier = 0.0;   // exact sums of the row seconds
    double total_logistic = 0.0;
};

/// Times the six dual/primal functions for both models over fixed input
/// grids (z-functions over [-8, 8], delta-functions over (0.001, 0.999)),
/// cycling the grid until n_evals evaluations are done. Each cell's time is
/// the minimum over `repetitions` runs; checksums are repetition-invariant.
BenchReport run_bench(std::size_t n_evals, int repetitions = 5);

/// CSV: header function,model,n_evals,seconds.
void write_bench_csv(const BenchReport& report, std::ostream& os);

/// Table with one line per function (both models side by side plus the
/// faster model), ending with a Total row.
void write_bench_table(const BenchReport& report, std::ostream& os);

}  // namespace dp::bench
