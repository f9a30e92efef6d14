#include "dualpricer/scenario.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("INVALID: " + what);
}

double require_number(const json& obj, const char* key) {
    if (!obj.contains(key)) fail(std::string("missing key '") + key + "'");
    const auto& value = obj.at(key);
    if (!value.is_number()) fail(std::string("key '") + key + "' must be a number");
    return value.get<double>();
}

std::string require_string(const json& obj, const char* key) {
    if (!obj.contains(key)) fail(std::string("missing key '") + key + "'");
    const auto& value = obj.at(key);
    if (!value.is_string()) fail(std::string("key '") + key + "' must be a string");
    return value.get<std::string>();
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) fail("config must be a JSON object");
    for (const auto& item : obj.items()) {
        if (item.value().is_object() || item.value().is_array()) {
            fail("config must be flat (no nested objects or arrays)");
        }
    }

    Scenario scenario;
    scenario.model = require_string(obj, "model");

    std::set<std::string> allowed = {"model", "s0",    "k",    "T",
                                     "option", "style", "seed", "paths"};
    if (scenario.model == "binomial") {
        BinomialParams p;
        p.up = require_number(obj, "u");
        p.down = require_number(obj, "d");
        p.rate = require_number(obj, "r");
        p.steps = static_cast<int>(require_number(obj, "steps"));
        scenario.params = p;
        allowed.insert({"u", "d", "r", "steps"});
    } else if (scenario.model == "bsm") {
        BsmParams p;
        p.rate = require_number(obj, "r");
        p.sigma = require_number(obj, "sigma");
        scenario.params = p;
        allowed.insert({"r", "sigma", "steps"});
    } else if (scenario.model == "bachelier") {
        scenario.params = BachelierParams{require_number(obj, "sigma_n")};
        allowed.insert("sigma_n");
        allowed.insert("steps");
    } else if (scenario.model == "logistic") {
        scenario.params = LogisticParams{require_number(obj, "a")};
        allowed.insert("a");
        allowed.insert("steps");
    } else {
        fail("unknown model '" + scenario.model +
             "' (expected binomial, bsm, bachelier, or logistic)");
    }

    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            fail("unknown key '" + item.key() + "' for model '" +
                 scenario.model + "'");
        }
    }

    scenario.spec.spot = require_number(obj, "s0");
    scenario.spec.strike = require_number(obj, "k");
    scenario.spec.maturity = require_number(obj, "T");

    const std::string option = require_string(obj, "option");
    if (option == "call") {
        scenario.spec.kind = OptionKind::Call;
    } else if (option == "put") {
        scenario.spec.kind = OptionKind::Put;
    } else {
        fail("option must be \"call\" or \"put\"");
    }

    if (obj.contains("style")) {
        const std::string style = require_string(obj, "style");
        if (style == "european") {
            scenario.spec.style = ExerciseStyle::European;
        } else if (style == "american") {
            scenario.spec.style = ExerciseStyle::American;
        } else {
            fail("style must be \"european\" or \"american\"");
        }
    }

    if (obj.contains("seed")) {
        if (!obj.at("seed").is_number_integer() &&
            !obj.at("seed").is_number_unsigned()) {
            fail("key 'seed' must be an integer");
        }
        scenario.seed = obj.at("seed").get<std::uint64_t>();
    }
    if (obj.contains("paths")) {
        const double paths = require_number(obj, "paths");
        if (paths < 1) fail("key 'paths' must be >= 1");
        scenario.paths = static_cast<std::size_t>(paths);
    }
    if (obj.contains("steps") && scenario.model != "binomial") {
        const double steps = require_number(obj, "steps");
        if (steps < 1) fail("key 'steps' must be >= 1");
        scenario.mc_steps = static_cast<int>(steps);
    }

    const auto errors = validate(scenario.spec, scenario.params);
    if (!errors.empty()) {
        std::ostringstream msg;
        msg << errors.front().code << " (" << errors.front().message << ")";
        fail(msg.str());
    }
    return scenario;
}

}  // namespace dp
