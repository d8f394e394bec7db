#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mdl/complexity/complexity.hpp"
#include "mdl/predict/predictive_function.hpp"

namespace mdl {

/// Outcome of one exact comparison on possibly censored values.
enum class Verdict3 { holds, violated, undetermined };

struct PropertyWitness {
    BinString x;        // the context (or child for monotonicity)
    ExactRational lhs;  // e.g. b(x0) + b(x1)
    ExactRational rhs;  // e.g. b(x)
};

/// Non-violation count of the semimeasure inequality along one sequence,
/// against the monotone complexity of the sequence.
struct SequenceNonViolations {
    BinString sequence;
    std::vector<std::size_t> times;  // certain non-violations, 1-based t
    std::size_t undetermined = 0;
    Complexity km = Complexity::infinite();
    /// certain + undetermined <= km (false when km is infinite).
    bool within_bound() const {
        return km.finite() && times.size() + undetermined <= km.value();
    }
};

/// Definition-style property checks of b over all strings of length <= n.
struct PropertyReport {
    std::size_t horizon = 0;
    ExactRational root;  // b(eps)
    std::vector<PropertyWitness> monotonicity_violations;  // b(xa) > b(x)
    std::vector<PropertyWitness> semimeasure_violations;   // b(x0) + b(x1) > b(x)
    std::vector<PropertyWitness> measure_violations;       // b(x0) + b(x1) != b(x)
    std::size_t monotonicity_undetermined = 0;
    std::size_t semimeasure_undetermined = 0;
    std::size_t measure_undetermined = 0;
    std::optional<SequenceNonViolations> sequence;

    bool monotone() const { return monotonicity_violations.empty() && monotonicity_undetermined == 0; }
    bool semimeasure() const {
        return root <= ExactRational(1) && semimeasure_violations.empty() && semimeasure_undetermined == 0;
    }
    bool measure() const {
        return root == ExactRational(1) && measure_violations.empty() && measure_undetermined == 0;
    }
};

/// Classifies sum_a b(x a) <= b(x) using censoring bounds.
Verdict3 semimeasure_step(const PredictiveFunction& b, const BinString& x);

/// When `sequence` is given, also counts t <= len(sequence) at which the
/// semimeasure inequality holds at x_<t, compared against `km`.
PropertyReport property_suite(const PredictiveFunction& b, std::size_t n,
                              const std::optional<BinString>& sequence = std::nullopt,
                              Complexity km = Complexity::infinite());

struct DeviationStep {
    std::size_t t = 0;
    ExactRational on;         // b(x_t | x_<t)
    ExactRational off;        // b(flip x_t | x_<t), 0 if censored
    ExactRational off_upper;  // censoring bound on the true off value
};

/// On- and off-sequence deviation sums along x.
struct DeviationSums {
    ExactRational onseq;          // sum_t |1 - b(x_t | x_<t)|
    std::size_t count = 0;        // #{t : b(x_t | x_<t) != 1}
    ExactRational offseq;         // sum_t b(flip x_t | x_<t)
    ExactRational offseq_upper;   // same with censored terms at their bound
    std::vector<DeviationStep> steps;
};

/// Throws UndefinedConditional when b(x_<t) = 0 (message names t) and
/// BudgetInsufficient when an on-sequence value is censored.
DeviationSums deviation_sums(const PredictiveFunction& b, const BinString& x);

}  // namespace mdl
