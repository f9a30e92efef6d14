#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dualpricer/types.hpp"

namespace dp {

/// A fully-specified pricing/simulation scenario, parsed from a flat JSON
/// object. The model tag picks the parameter set; keys the model does not
/// use (and keys nobody uses) are rejected.
struct Scenario {
    std::string model;  // "binomial" | "bsm" | "bachelier" | "logistic"
    OptionSpec spec;
    ModelParams params;
    std::optional<std::uint64_t> seed;  // stochastic subcommands only
    std::size_t paths = 100000;         // simulation only
    int mc_steps = 256;                 // Euler steps (logistic simulation)
};

/// Parses a flat JSON object such as
///   {"model":"logistic","s0":100,"k":100,"T":1,"a":1,"option":"put"}
/// Accepted keys: model, s0, k, T, option, style, seed, paths, steps, and
/// the model's own parameters (r,sigma | sigma_n | a | u,d,r,steps).
/// Throws std::invalid_argument with an INVALID: message on malformed JSON,
/// unknown keys, missing keys, or validate() failures.
Scenario scenario_from_json(const std::string& text);

}  // namespace dp
