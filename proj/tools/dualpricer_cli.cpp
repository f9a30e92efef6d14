// Command-line front end. Talks to the library exclusively through the C
// API in dualpricer.h.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dualpricer.h"

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

// Wraps a C-API string so it is always released.
struct ApiString {
    char* ptr = nullptr;
    ~ApiString() { dp_free_string(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

struct ScenarioHandle {
    dp_scenario* ptr = nullptr;
    ~ScenarioHandle() { dp_scenario_free(ptr); }
};

int fail(dp_status status) {
    std::cerr << "error: " << dp_last_error() << "\n";
    return static_cast<int>(status);
}

std::optional<std::uint64_t> env_seed() {
    const char* value = std::getenv("DUALITY_PRICER_SEED");
    if (!value || !*value) return std::nullopt;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(value, &end, 10);
    if (end == value || *end != '\0') return std::nullopt;
    return static_cast<std::uint64_t>(parsed);
}

// Seed precedence: --seed flag, then config file, then environment, then
// the repository default.
void apply_seed(dp_scenario* scenario, const std::optional<std::uint64_t>& flag) {
    if (flag) {
        dp_scenario_set_seed(scenario, *flag);
    } else if (!dp_scenario_has_seed(scenario)) {
        dp_scenario_set_seed(scenario, env_seed().value_or(kDefaultSeed));
    }
}

std::uint64_t standalone_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    return env_seed().value_or(kDefaultSeed);
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    out = buffer.str();
    return true;
}

// Write temp + rename so a crash mid-write never leaves a partial file.
bool write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return false;
        out << content;
        out.flush();
        if (!out) return false;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        return false;
    }
    return true;
}

int load_scenario(const std::string& config_path,
                  const std::optional<std::uint64_t>& seed_flag,
                  ScenarioHandle& handle) {
    std::string text;
    if (!read_file(config_path, text)) {
        std::cerr << "error: cannot read config file " << config_path << "\n";
        return 1;
    }
    const dp_status status = dp_scenario_from_json(text.c_str(), &handle.ptr);
    if (status != DP_OK) return fail(status);
    apply_seed(handle.ptr, seed_flag);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dualpricer: option pricing under binomial, Black-Scholes-"
                 "Merton, Bachelier, and logistic models"};
    app.require_subcommand(1);

    std::string config_path, out_path, checks;
    std::optional<std::uint64_t> seed_flag;
    bool with_greeks = false, reseed = false;
    double k_min = 0.0, k_max = 0.0;
    int k_steps = 0, reps = 5;
    std::uint64_t n_evals = 100000;

    auto* price = app.add_subcommand("price", "Price one scenario");
    price->add_option("--config", config_path, "Scenario JSON file")->required();
    price->add_flag("--greeks", with_greeks, "Include finite-difference greeks");
    price->add_option("--seed", seed_flag, "Seed override");

    auto* simulate = app.add_subcommand("simulate", "Simulate sample paths");
    simulate->add_option("--config", config_path, "Scenario JSON file")->required();
    simulate->add_option("--out", out_path, "Output CSV path")->required();
    simulate->add_option("--seed", seed_flag, "Seed override");

    auto* compare =
        app.add_subcommand("compare", "Per-strike model comparison curves");
    compare->add_option("--config", config_path, "Scenario JSON file")->required();
    compare->add_option("--k-min", k_min, "Lowest strike")->required();
    compare->add_option("--k-max", k_max, "Highest strike")->required();
    compare->add_option("--k-steps", k_steps, "Number of strike intervals")
        ->required();
    compare->add_option("--out", out_path, "Output CSV path")->required();

    auto* funcs =
        app.add_subcommand("funcs", "Dual/primal function family curves");
    funcs->add_option("--out", out_path, "Output CSV path")->required();

    auto* verify = app.add_subcommand("verify", "Run the verification suite");
    verify->add_option("--checks", checks,
                       "Comma-separated subset of check names");
    verify->add_option("--out", out_path, "Report CSV path");
    verify->add_option("--seed", seed_flag, "Seed override");
    verify->add_flag("--reseed", reseed,
                     "Rerun with fresh entropy and report without asserting");

    auto* bench = app.add_subcommand("bench", "Timing harness");
    bench->add_option("--n-evals", n_evals, "Evaluations per cell (>= 1000)");
    bench->add_option("--reps", reps, "Repetitions (minimum is reported)");
    bench->add_option("--out", out_path, "Output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n" << app.help();
        return 1;
    }

    if (price->parsed()) {
        ScenarioHandle scenario;
        if (int rc = load_scenario(config_path, seed_flag, scenario)) return rc;
        ApiString report;
        const dp_status status =
            dp_price(scenario.ptr, with_greeks ? 1 : 0, &report.ptr);
        if (status != DP_OK) return fail(status);
        std::cout << report.str();
        return 0;
    }

    if (simulate->parsed()) {
        ScenarioHandle scenario;
        if (int rc = load_scenario(config_path, seed_flag, scenario)) return rc;
        ApiString csv;
        const dp_status status = dp_simulate_csv(scenario.ptr, &csv.ptr);
        if (status != DP_OK) return fail(status);
        if (!write_file_atomic(out_path, csv.str())) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        return 0;
    }

    if (compare->parsed()) {
        ScenarioHandle scenario;
        if (int rc = load_scenario(config_path, seed_flag, scenario)) return rc;
        ApiString csv;
        const dp_status status =
            dp_compare_csv(scenario.ptr, k_min, k_max, k_steps, &csv.ptr);
        if (status != DP_OK) return fail(status);
        if (!write_file_atomic(out_path, csv.str())) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        return 0;
    }

    if (funcs->parsed()) {
        ApiString csv;
        const dp_status status = dp_funcs_csv(&csv.ptr);
        if (status != DP_OK) return fail(status);
        if (!write_file_atomic(out_path, csv.str())) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        return 0;
    }

    if (verify->parsed()) {
        std::uint64_t seed = standalone_seed(seed_flag);
        if (reseed) seed = std::random_device{}();
        ApiString csv, table;
        const dp_status status =
            dp_verify(checks.empty() ? nullptr : checks.c_str(), seed,
                      out_path.empty() ? nullptr : &csv.ptr, &table.ptr);
        if (status != DP_OK && status != DP_ERR_VERIFY_FAILED) {
            return fail(status);
        }
        std::cout << table.str();
        if (!out_path.empty() && !write_file_atomic(out_path, csv.str())) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        if (reseed) return 0;  // report-only mode never gates
        return status == DP_OK ? 0 : 2;
    }

    if (bench->parsed()) {
        ApiString csv, table;
        const dp_status status =
            dp_bench(n_evals, reps, out_path.empty() ? nullptr : &csv.ptr,
                     &table.ptr);
        if (status != DP_OK) return fail(status);
        std::cout << table.str();
        if (!out_path.empty() && !write_file_atomic(out_path, csv.str())) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        return 0;
    }

    std::cerr << app.help();
    return 1;
}
