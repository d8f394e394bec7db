#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "mdl/complexity/complexity_table.hpp"
#include "mdl/core/rational.hpp"

namespace mdl {

/// A function b : {0,1}* -> [0, inf) with a provenance tag.
///
/// Table-backed functions may be *censored*: a string with no witness within
/// the enumeration budget evaluates to 0, although its true value is positive
/// and at most some known bound. `censor_bound(x)` returns that bound for
/// censored strings and nullopt for exact ones. Property checks use it to tell
/// certain results from undetermined ones.
class PredictiveFunction {
public:
    using Evaluator = std::function<ExactRational(const BinString&)>;
    using CensorBound = std::function<std::optional<ExactRational>(const BinString&)>;
    /// Direct posterior rule (context, symbol) -> value, used instead of the
    /// chain-rule quotient when present.
    using StepRule = std::function<ExactRational(const BinString&, int)>;

    PredictiveFunction(std::string descriptor, Evaluator eval, CensorBound censor = {}, StepRule step = {});

    ExactRational operator()(const BinString& x) const { return eval_(x); }
    std::optional<ExactRational> censor_bound(const BinString& x) const;
    bool has_step_rule() const noexcept { return static_cast<bool>(step_); }
    const StepRule& step_rule() const noexcept { return step_; }
    const std::string& descriptor() const noexcept { return descriptor_; }

private:
    std::string descriptor_;
    Evaluator eval_;
    CensorBound censor_;
    StepRule step_;
};

using TablePtr = std::shared_ptr<const ComplexityTable>;

/// m(x) = 2^-Km(x). Censored where km is infinite: true Km >= L+1 on a
/// machine that can print every string, so the bound is 2^-(L+1), or 1 when
/// some run hit the step budget.
PredictiveFunction m_from_table(TablePtr table);
/// k(x) = 2^-K(x), censored like m.
PredictiveFunction k_from_table(TablePtr table);
/// Resource-bounded M(x); exact for its budget, never censored.
PredictiveFunction bigM_from_table(TablePtr table);

/// Values indexed by next symbol.
struct PosteriorVector {
    BinString context;
    std::array<ExactRational, 2> values;

    const ExactRational& operator[](int symbol) const { return values.at(symbol); }
    ExactRational total() const { return values[0] + values[1]; }
};

/// b(context·symbol) / b(context), or the function's step rule if it has one.
/// Throws UndefinedConditional when b(context) = 0.
ExactRational conditional(const PredictiveFunction& b, const BinString& context, int symbol);
PosteriorVector posterior(const PredictiveFunction& b, const BinString& context);

/// b_norm(x_1:n) = prod_t b(x_1:t) / sum_a b(x_<t a); a step whose
/// denominator is 0 contributes 1/2. The result is a measure.
PredictiveFunction normalize(const PredictiveFunction& b);

/// d(x_<n) = (1/b(eps)) prod_{t=1..n} b(x_<t) / sum_a b(x_<t a), evaluated for
/// context = x_<n, so that b_norm(x_<n a) = d(x_<n) b(x_<n a).
/// Throws UndefinedConditional when some factor has a zero denominator.
ExactRational normalization_factor(const PredictiveFunction& b, const BinString& context);

}  // namespace mdl
