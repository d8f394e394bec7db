#include "mdl/predict/properties.hpp"

#include "mdl/core/errors.hpp"

namespace mdl {

namespace {

// A value together with what is known about the true quantity behind it.
struct Bounded {
    ExactRational value;  // lower end; exact when !censored
    ExactRational upper;
    bool censored = false;  // true value lies in (value, upper]
};

Bounded bounded(const PredictiveFunction& b, const BinString& x) {
    Bounded out{b(x), {}, false};
    out.upper = out.value;
    if (auto bound = b.censor_bound(x)) {
        out.censored = true;
        out.upper = *bound;
    }
    return out;
}

// lhs <= rhs, where rhs is exact and lhs is a sum of possibly censored terms.
Verdict3 compare_le(const std::vector<Bounded>& terms, const ExactRational& rhs) {
    ExactRational lo;
    ExactRational hi;
    bool any_censored = false;
    for (const auto& t : terms) {
        lo += t.value;
        hi += t.upper;
        any_censored = any_censored || t.censored;
    }
    if (hi <= rhs) return Verdict3::holds;
    if (lo > rhs || (any_censored && lo >= rhs)) return Verdict3::violated;
    return Verdict3::undetermined;
}

}  // namespace

Verdict3 semimeasure_step(const PredictiveFunction& b, const BinString& x) {
    const auto parent = bounded(b, x);
    if (parent.censored) return Verdict3::undetermined;
    return compare_le({bounded(b, x.with(0)), bounded(b, x.with(1))}, parent.value);
}

PropertyReport property_suite(const PredictiveFunction& b, std::size_t n, const std::optional<BinString>& sequence,
                              Complexity km) {
    PropertyReport report;
    report.horizon = n;
    report.root = b(BinString());

    for (std::size_t len = 0; len < n; ++len) {
        for (const auto& x : all_strings(len)) {
            const auto parent = bounded(b, x);
            const Bounded kids[2] = {bounded(b, x.with(0)), bounded(b, x.with(1))};
            if (parent.censored) {
                report.monotonicity_undetermined += 2;
                ++report.semimeasure_undetermined;
                ++report.measure_undetermined;
                continue;
            }
            for (int a = 0; a < 2; ++a) {
                switch (compare_le({kids[a]}, parent.value)) {
                    case Verdict3::holds: break;
                    case Verdict3::violated:
                        report.monotonicity_violations.push_back({x.with(a), kids[a].value, parent.value});
                        break;
                    case Verdict3::undetermined: ++report.monotonicity_undetermined; break;
                }
            }
            const auto sum = kids[0].value + kids[1].value;
            switch (compare_le({kids[0], kids[1]}, parent.value)) {
                case Verdict3::holds: break;
                case Verdict3::violated: report.semimeasure_violations.push_back({x, sum, parent.value}); break;
                case Verdict3::undetermined: ++report.semimeasure_undetermined; break;
            }
            if (kids[0].censored || kids[1].censored) {
                // Equality can only be refuted, never confirmed, on censored values.
                if (compare_le({kids[0], kids[1]}, parent.value) == Verdict3::violated) {
                    report.measure_violations.push_back({x, sum, parent.value});
                } else {
                    ++report.measure_undetermined;
                }
            } else if (sum != parent.value) {
                report.measure_violations.push_back({x, sum, parent.value});
            }
        }
    }

    if (sequence) {
        SequenceNonViolations seq;
        seq.sequence = *sequence;
        seq.km = km;
        for (std::size_t t = 1; t <= sequence->size(); ++t) {
            switch (semimeasure_step(b, sequence->prefix(t - 1))) {
                case Verdict3::holds: seq.times.push_back(t); break;
                case Verdict3::violated: break;
                case Verdict3::undetermined: ++seq.undetermined; break;
            }
        }
        report.sequence = std::move(seq);
    }
    return report;
}

DeviationSums deviation_sums(const PredictiveFunction& b, const BinString& x) {
    DeviationSums out;
    for (std::size_t t = 1; t <= x.size(); ++t) {
        const auto context = x.prefix(t - 1);
        const auto parent = bounded(b, context);
        if (parent.value.is_zero()) {
            throw UndefinedConditional(b.descriptor() + ": b(x_<t) = 0 at t=" + std::to_string(t));
        }
        if (parent.censored) {
            throw BudgetInsufficient(b.descriptor() + ": context value censored at t=" + std::to_string(t));
        }
        const int on_symbol = x[t - 1];
        const auto on = bounded(b, context.with(on_symbol));
        if (on.censored) {
            throw BudgetInsufficient(b.descriptor() + ": on-sequence value censored at t=" + std::to_string(t));
        }
        const auto off = bounded(b, context.with(1 - on_symbol));

        DeviationStep step{t, on.value / parent.value, off.value / parent.value, off.upper / parent.value};
        out.onseq += abs(ExactRational(1) - step.on);
        if (step.on != ExactRational(1)) ++out.count;
        out.offseq += step.off;
        out.offseq_upper += step.off_upper;
        out.steps.push_back(std::move(step));
    }
    return out;
}

}  // namespace mdl
