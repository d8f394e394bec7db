#include "mdl/environments/environment.hpp"

#include <stdexcept>

#include "mdl/core/errors.hpp"
#include "mdl/machines/block_machine.hpp"
#include "mdl/machines/reference_machine.hpp"

namespace mdl {

Environment::Environment(std::string descriptor, EnvironmentKind kind, Measure measure, Conditional conditional,
                         std::size_t max_length)
    : descriptor_(std::move(descriptor)),
      kind_(kind),
      measure_(std::move(measure)),
      conditional_(std::move(conditional)),
      max_length_(max_length) {}

void Environment::check_length(std::size_t n) const {
    if (n > max_length_) {
        throw std::out_of_range(descriptor_ + ": defined only up to length " + std::to_string(max_length_));
    }
}

ExactRational Environment::prob(const BinString& x) const {
    check_length(x.size());
    return measure_(x);
}

ExactRational Environment::conditional(const BinString& context, int symbol) const {
    check_length(context.size() + 1);
    return conditional_(context, symbol);
}

namespace {

void check_probability(const ExactRational& p, const char* what) {
    if (p.sign() < 0 || p > ExactRational(1)) {
        throw std::invalid_argument(std::string(what) + ": parameter " + p.str() + " outside [0,1]");
    }
}

[[noreturn]] void undefined(const std::string& who, const BinString& context) {
    throw UndefinedConditional(who + ": mu('" + context.str() + "') = 0");
}

}  // namespace

Environment bernoulli_env(const ExactRational& theta) {
    check_probability(theta, "bernoulli_env");
    const ExactRational one_minus = ExactRational(1) - theta;
    const std::string name = "bern:" + theta.str();
    auto measure = [theta, one_minus](const BinString& x) {
        ExactRational p(1);
        for (std::size_t i = 0; i < x.size() && !p.is_zero(); ++i) p *= x[i] ? theta : one_minus;
        return p;
    };
    auto cond = [theta, one_minus, measure, name](const BinString& context, int symbol) {
        if ((theta.is_zero() || one_minus.is_zero()) && measure(context).is_zero()) undefined(name, context);
        return symbol ? theta : one_minus;
    };
    return Environment(name, EnvironmentKind::bernoulli, measure, cond);
}

Environment product_env(std::vector<ExactRational> thetas) {
    if (thetas.empty()) throw std::invalid_argument("product_env: no parameters");
    std::string name = "prod:";
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        check_probability(thetas[i], "product_env");
        name += (i ? "," : "") + thetas[i].str();
    }
    auto bit_prob = [thetas](std::size_t t, int symbol) {
        const auto& th = thetas[t % thetas.size()];
        return symbol ? th : ExactRational(1) - th;
    };
    auto measure = [bit_prob](const BinString& x) {
        ExactRational p(1);
        for (std::size_t i = 0; i < x.size() && !p.is_zero(); ++i) p *= bit_prob(i, x[i]);
        return p;
    };
    auto cond = [bit_prob, measure, name](const BinString& context, int symbol) {
        if (measure(context).is_zero()) undefined(name, context);
        return bit_prob(context.size(), symbol);
    };
    return Environment(name, EnvironmentKind::product, measure, cond);
}

namespace {

// Number of members of A that extend the partial block w (len(w) <= s+1).
ExactRational completions(std::size_t s, const BinString& w) {
    if (w.empty()) return ExactRational::pow2(s);
    if (w.size() == s + 1) return ExactRational(in_block_alphabet(s, w) ? 1 : 0);
    if (w[0] == 0) return ExactRational(w.all_zero() ? 1 : 0);
    // 1 followed by any continuation, minus the excluded 1 0^s.
    const auto rest_zero = w.substr(1).all_zero();
    return ExactRational::pow2(s + 1 - w.size()) - ExactRational(rest_zero ? 1 : 0);
}

}  // namespace

Environment block_env(std::size_t s) {
    if (s < 2) throw std::invalid_argument("block_env: s must be >= 2");
    const std::string name = "block:s=" + std::to_string(s);
    const std::size_t block = s + 1;
    const ExactRational unit = ExactRational::dyadic(s);
    auto measure = [s, block, unit](const BinString& x) {
        const std::size_t k = x.size() / block;
        ExactRational p(1);
        for (std::size_t j = 0; j < k; ++j) {
            if (!in_block_alphabet(s, x.substr(j * block, block))) return ExactRational(0);
            p *= unit;
        }
        return p * completions(s, x.substr(k * block)) * unit;
    };
    auto cond = [s, block, measure, name](const BinString& context, int symbol) {
        const std::size_t k = context.size() / block;
        for (std::size_t j = 0; j < k; ++j) {
            if (!in_block_alphabet(s, context.substr(j * block, block))) undefined(name, context);
        }
        const auto w = context.substr(k * block);
        const auto base = completions(s, w);
        if (base.is_zero()) undefined(name, context);
        return completions(s, w.with(symbol)) / base;
    };
    return Environment(name, EnvironmentKind::block, measure, cond);
}

Environment deterministic_env(std::string descriptor, std::function<int(std::size_t)> bit_at, std::size_t max_length) {
    auto measure = [bit_at](const BinString& x) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] != bit_at(i)) return ExactRational(0);
        }
        return ExactRational(1);
    };
    auto cond = [bit_at, measure, descriptor](const BinString& context, int symbol) {
        if (measure(context).is_zero()) undefined(descriptor, context);
        return ExactRational(symbol == bit_at(context.size()) ? 1 : 0);
    };
    return Environment(descriptor, EnvironmentKind::deterministic, measure, cond, max_length);
}

Environment constant_env(int bit) {
    return deterministic_env(bit ? "det:ones" : "det:zeros", [bit](std::size_t) { return bit; });
}

Environment alternating_env() {
    return deterministic_env("det:alt", [](std::size_t t) { return static_cast<int>(t % 2); });
}

Environment program_env(const BinString& program, StepBudget budget) {
    const auto out = ReferenceMachine().run(program, budget).output;
    return deterministic_env("det:prog=" + program.str(), [out](std::size_t t) { return out[t]; }, out.size());
}

Environment make_environment(std::string_view descriptor) {
    const std::string d(descriptor);
    if (d == "det:zeros") return constant_env(0);
    if (d == "det:ones") return constant_env(1);
    if (d == "det:alt") return alternating_env();
    if (d.rfind("det:prog=", 0) == 0) return program_env(BinString(d.substr(9)));
    if (d.rfind("bern:", 0) == 0) return bernoulli_env(ExactRational::parse(d.substr(5)));
    if (d.rfind("block:s=", 0) == 0) {
        const auto digits = d.substr(8);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("bad block size in '" + d + "'");
        }
        return block_env(std::stoul(digits));
    }
    throw std::invalid_argument("unknown environment descriptor '" + d + "'");
}

PredictiveFunction as_predictive(const Environment& env) {
    return PredictiveFunction(
        env.descriptor(), [env](const BinString& x) { return env.prob(x); }, {},
        [env](const BinString& context, int symbol) { return env.conditional(context, symbol); });
}

std::optional<BinString> find_measure_violation(const Environment& env, std::size_t depth) {
    if (env.prob(BinString()) != ExactRational(1)) return BinString();
    if (depth == 0) return std::nullopt;
    for (const auto& x : all_strings_up_to(depth - 1)) {
        if (env.prob(x.with(0)) + env.prob(x.with(1)) != env.prob(x)) return x;
    }
    return std::nullopt;
}

BinString deterministic_sequence(const Environment& env, std::size_t n) {
    if (env.kind() != EnvironmentKind::deterministic) {
        throw std::invalid_argument(env.descriptor() + " is not deterministic");
    }
    BinString out;
    for (std::size_t t = 0; t < n; ++t) out.push_back(env.conditional(out, 1) == ExactRational(1) ? 1 : 0);
    return out;
}

}  // namespace mdl
