#include "dualpricer/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "dualpricer/analytic.hpp"
#include "dualpricer/normal.hpp"

namespace dp::bench {

namespace {

using namespace dp::analytic;

// Normal-model put value in the standardized coordinate, pi_N(z) = z N(z) + N'(z),
// and its Legendre conjugate computed numerically (the logistic conjugate is
// closed-form; timing the normal one numerically is the point of the row).
double pi_normal(double z) { return z * normal::cdf(z) + normal::pdf(z); }

double pi_normal_conjugate(double delta) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = -40.0, b = 40.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    auto f = [&](double z) { return delta * z - pi_normal(z); };
    double fc = f(c), fd = f(d);
    while (b - a > 1e-8) {
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

std::vector<double> make_z_grid() {
    std::vector<double> grid(1001);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = -8.0 + 16.0 * static_cast<double>(i) / 1000.0;
    }
    return grid;
}

std::vector<double> make_delta_grid() {
    std::vector<double> grid(997);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = 0.001 + (0.999 - 0.001) * static_cast<double>(i) / 996.0;
    }
    return grid;
}

struct Cell {
    BenchFunction function;
    BenchModel model;
    const std::vector<double>* grid;
    std::function<double(double)> f;  // opaque call keeps the loop honest
};

BenchRow time_cell(const Cell& cell, std::size_t n_evals, int repetitions) {
    BenchRow row;
    row.function = cell.function;
    row.model = cell.model;
    row.n_evals = n_evals;
    row.seconds = std::numeric_limits<double>::infinity();
    const auto& grid = *cell.grid;
    for (int rep = 0; rep < repetitions; ++rep) {
        double checksum = 0.0;
        const auto start = std::chrono::steady_clock::now();
        for (std::size_t i = 0; i < n_evals; ++i) {
            checksum += cell.f(grid[i % grid.size()]);
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        row.seconds = std::min(row.seconds, seconds);
        if (rep == 0) {
            row.checksum = checksum;
        } else if (checksum != row.checksum) {
            throw std::runtime_error("NUMERIC: non-deterministic bench output");
        }
    }
    return row;
}

}  // namespace

const char* function_name(BenchFunction f) {
    switch (f) {
        case BenchFunction::EtaZ: return "eta_z";
        case BenchFunction::EtaDelta: return "eta_delta";
        case BenchFunction::Pi: return "pi";
        case BenchFunction::PiStar: return "pi_star";
        case BenchFunction::DeltaOfZ: return "delta_of_z";
        case BenchFunction::ZOfDelta: return "z_of_delta";
    }
    return "?";
}

const char* model_name(BenchModel m) {
    return m == BenchModel::Bachelier ? "bachelier" : "logistic";
}

BenchReport run_bench(std::size_t n_evals, int repetitions) {
    if (n_evals < 1000) {
        throw std::domain_error("DOMAIN: n_evals >= 1000 (timer noise dominates below)");
    }
    if (repetitions < 1) throw std::domain_error("DOMAIN: repetitions >= 1");

    static const std::vector<double> z_grid = make_z_grid();
    static const std::vector<double> delta_grid = make_delta_grid();

    const Cell cells[] = {
        {BenchFunction::EtaZ, BenchModel::Bachelier, &z_grid,
         [](double) { return 1.0; }},
        {BenchFunction::EtaZ, BenchModel::Logistic, &z_grid,
         [](double z) { return eta_z(z); }},
        {BenchFunction::EtaDelta, BenchModel::Bachelier, &delta_grid,
         [](double d) { return normal::pdf(normal::quantile(d)); }},
        {BenchFunction::EtaDelta, BenchModel::Logistic, &delta_grid,
         [](double d) { return eta_delta(d); }},
        {BenchFunction::Pi, BenchModel::Bachelier, &z_grid,
         [](double z) { return pi_normal(z); }},
        {BenchFunction::Pi, BenchModel::Logistic, &z_grid,
         [](double z) { return pi_z(z); }},
        {BenchFunction::PiStar, BenchModel::Bachelier, &delta_grid,
         [](double d) { return pi_normal_conjugate(d); }},
        {BenchFunction::PiStar, BenchModel::Logistic, &delta_grid,
         [](double d) { return pi_star(d); }},
        {BenchFunction::DeltaOfZ, BenchModel::Bachelier, &z_grid,
         [](double z) { return normal::cdf(z); }},
        {BenchFunction::DeltaOfZ, BenchModel::Logistic, &z_grid,
         [](double z) { return delta_of_z(z); }},
        {BenchFunction::ZOfDelta, BenchModel::Bachelier, &delta_grid,
         [](double d) { return normal::quantile(d); }},
        {BenchFunction::ZOfDelta, BenchModel::Logistic, &delta_grid,
         [](double d) { return z_of_delta(d); }},
    };

    BenchReport report;
    for (const auto& cell : cells) {
        const BenchRow row = time_cell(cell, n_evals, repetitions);
        if (cell.model == BenchModel::Bachelier) {
            report.total_bachelier += row.seconds;
        } else {
            report.total_logistic += row.seconds;
        }
        report.rows.push_back(row);
    }
    return report;
}

void write_bench_csv(const BenchReport& report, std::ostream& os) {
    os << "function,model,n_evals,seconds\n";
    char line[160];
    for (const auto& row : report.rows) {
        std::snprintf(line, sizeof(line), "%s,%s,%zu,%.17g\n",
                      function_name(row.function), model_name(row.model),
                      row.n_evals, row.seconds);
        os << line;
    }
}

void write_bench_table(const BenchReport& report, std::ostream& os) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s %14s %14s  %s\n", "function",
                  "bachelier (s)", "logistic (s)", "faster");
    os << line;
    for (std::size_t i = 0; i + 1 < report.rows.size(); i += 2) {
        const BenchRow& bach = report.rows[i];
        const BenchRow& log = report.rows[i + 1];
        std::snprintf(line, sizeof(line), "%-12s %14.6g %14.6g  %s\n",
                      function_name(bach.function), bach.seconds, log.seconds,
                      bach.seconds <= log.seconds ? "bachelier" : "logistic");
        os << line;
    }
    std::snprintf(line, sizeof(line), "%-12s %14.6g %14.6g  %s\n", "Total",
                  report.total_bachelier, report.total_logistic,
                  report.total_bachelier <= report.total_logistic
                      ? "bachelier"
                      : "logistic");
    os << line;
}

}  // namespace dp::bench
