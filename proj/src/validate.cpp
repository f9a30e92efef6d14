#include "dualpricer/types.hpp"

#include <cmath>

namespace dp {

namespace {

void push(std::vector<ValidationError>& out, std::string code, std::string msg) {
    out.push_back({std::move(code), std::move(msg)});
}

void check_finite(std::vector<ValidationError>& out, double x, const char* what) {
    if (!std::isfinite(x)) {
        push(out, "NONFINITE_INPUT", std::string(what) + " must be finite");
    }
}

}  // namespace

const char* model_name(const ModelParams& params) {
    struct Visitor {
        const char* operator()(const BinomialParams&) const { return "binomial"; }
        const char* operator()(const BsmParams&) const { return "bsm"; }
        const char* operator()(const BachelierParams&) const { return "bachelier"; }
        const char* operator()(const LogisticParams&) const { return "logistic"; }
    };
    return std::visit(Visitor{}, params);
}

std::vector<ValidationError> validate(const OptionSpec& spec,
                                      const ModelParams& params) {
    std::vector<ValidationError> out;

    check_finite(out, spec.strike, "strike");
    check_finite(out, spec.spot, "spot");
    check_finite(out, spec.maturity, "maturity");
    if (!(spec.maturity > 0.0)) {
        push(out, "NONPOSITIVE_MATURITY", "maturity must be > 0");
    }

    const bool positive_price_model =
        std::holds_alternative<BinomialParams>(params) ||
        std::holds_alternative<BsmParams>(params);
    if (positive_price_model) {
        if (!(spec.spot > 0.0)) {
            push(out, "NONPOSITIVE_SPOT", "spot must be > 0 for this model");
        }
        if (!(spec.strike > 0.0)) {
            push(out, "NONPOSITIVE_STRIKE", "strike must be > 0 for this model");
        }
    }

    if (const auto* b = std::get_if<BinomialParams>(&params)) {
        check_finite(out, b->up, "up factor");
        check_finite(out, b->down, "down factor");
        check_finite(out, b->rate, "rate");
        if (!(b->down > 0.0) || !(b->up > b->down)) {
            push(out, "BAD_FACTORS", "factors must satisfy u > d > 0");
        } else if (!(b->down < 1.0 + b->rate && 1.0 + b->rate < b->up)) {
            push(out, "NO_ARBITRAGE_VIOLATED",
                 "no-arbitrage requires d < 1+r < u");
        }
        if (b->steps < 1) {
            push(out, "NONPOSITIVE_STEPS", "steps must be >= 1");
        }
    } else if (const auto* m = std::get_if<BsmParams>(&params)) {
        check_finite(out, m->rate, "rate");
        if (!(m->sigma > 0.0) || !std::isfinite(m->sigma)) {
            push(out, "NONPOSITIVE_SIGMA", "sigma must be > 0");
        }
    } else if (const auto* n = std::get_if<BachelierParams>(&params)) {
        if (!(n->sigma_n > 0.0) || !std::isfinite(n->sigma_n)) {
            push(out, "NONPOSITIVE_SIGMA", "sigma_n must be > 0");
        }
    } else if (const auto* l = std::get_if<LogisticParams>(&params)) {
        if (!(l->scale > 0.0) || !std::isfinite(l->scale)) {
            push(out, "NONPOSITIVE_SCALE", "scale a must be > 0");
        }
    }

    return out;
}

}  // namespace dp
