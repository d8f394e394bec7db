#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdl/core/rational.hpp"
#include "mdl/machines/machine.hpp"
#include "mdl/predict/predictive_function.hpp"

namespace mdl {

enum class EnvironmentKind { deterministic, bernoulli, block, product };

/// Exact computable measure mu on {0,1}*.
///
/// Holds both the measure and its one-step conditional, so sampling and
/// i.m.s. sums never have to divide long products.
class Environment {
public:
    using Measure = std::function<ExactRational(const BinString&)>;
    using Conditional = std::function<ExactRational(const BinString&, int)>;

    Environment(std::string descriptor, EnvironmentKind kind, Measure measure, Conditional conditional,
                std::size_t max_length = std::numeric_limits<std::size_t>::max());

    /// mu(x). Throws std::out_of_range beyond max_length().
    ExactRational prob(const BinString& x) const;
    /// mu(symbol | context). Throws UndefinedConditional when mu(context) = 0.
    ExactRational conditional(const BinString& context, int symbol) const;

    const std::string& descriptor() const noexcept { return descriptor_; }
    EnvironmentKind kind() const noexcept { return kind_; }
    /// Longest string the environment is defined on (finite only for
    /// program-driven sequences).
    std::size_t max_length() const noexcept { return max_length_; }

private:
    void check_length(std::size_t n) const;

    std::string descriptor_;
    EnvironmentKind kind_;
    Measure measure_;
    Conditional conditional_;
    std::size_t max_length_;
};

/// mu(x) = theta^#1(x) (1-theta)^#0(x). Throws std::invalid_argument outside [0,1].
Environment bernoulli_env(const ExactRational& theta);

/// Independent bits with P(x_t = 1) = thetas[(t-1) mod k].
Environment product_env(std::vector<ExactRational> thetas);

/// i.i.d. uniform blocks from A (each 2^-s), marginalized on partial blocks.
Environment block_env(std::size_t s);

/// Indicator measure of the sequence bit_at(0), bit_at(1), ...
Environment deterministic_env(std::string descriptor, std::function<int(std::size_t)> bit_at,
                              std::size_t max_length = std::numeric_limits<std::size_t>::max());
Environment constant_env(int bit);
Environment alternating_env();
/// The output of the reference machine on `program`, which must be long
/// enough for the horizons it is used at.
Environment program_env(const BinString& program, StepBudget budget = 1U << 20);

/// "det:zeros", "det:ones", "det:alt", "det:prog=<bits>", "bern:<p>/<q>",
/// "block:s=<n>". Throws std::invalid_argument.
Environment make_environment(std::string_view descriptor);

/// The environment as a predictive function (conditionals via its own rule).
PredictiveFunction as_predictive(const Environment& env);

/// First string x with mu(x0) + mu(x1) != mu(x) up to `depth`, or mu(eps) != 1.
std::optional<BinString> find_measure_violation(const Environment& env, std::size_t depth);

/// The first n bits of a deterministic environment.
BinString deterministic_sequence(const Environment& env, std::size_t n);

}  // namespace mdl
