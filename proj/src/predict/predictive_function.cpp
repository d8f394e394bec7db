#include "mdl/predict/predictive_function.hpp"

#include <stdexcept>

#include "mdl/core/errors.hpp"

namespace mdl {

PredictiveFunction::PredictiveFunction(std::string descriptor, Evaluator eval, CensorBound censor, StepRule step)
    : descriptor_(std::move(descriptor)), eval_(std::move(eval)), censor_(std::move(censor)), step_(std::move(step)) {
    if (!eval_) throw std::invalid_argument("PredictiveFunction: missing evaluator");
}

std::optional<ExactRational> PredictiveFunction::censor_bound(const BinString& x) const {
    if (!censor_) return std::nullopt;
    return censor_(x);
}

namespace {

PredictiveFunction::CensorBound censor_for(const TablePtr& table, Complexity (ComplexityTable::*query)(const BinString&) const) {
    return [table, query](const BinString& x) -> std::optional<ExactRational> {
        if (((*table).*query)(x).finite()) return std::nullopt;
        if (!table->saturated()) return ExactRational(1);
        return ExactRational::dyadic(table->budget().max_length + 1);
    };
}

}  // namespace

PredictiveFunction m_from_table(TablePtr table) {
    if (!table) throw std::invalid_argument("m_from_table: null table");
    auto censor = censor_for(table, &ComplexityTable::km);
    return PredictiveFunction(
        "m[" + table->descriptor() + ",L=" + std::to_string(table->budget().max_length) + "]",
        [table](const BinString& x) { return table->km(x).weight(); }, std::move(censor));
}

PredictiveFunction k_from_table(TablePtr table) {
    if (!table) throw std::invalid_argument("k_from_table: null table");
    auto censor = censor_for(table, &ComplexityTable::k);
    return PredictiveFunction(
        "k[" + table->descriptor() + ",L=" + std::to_string(table->budget().max_length) + "]",
        [table](const BinString& x) { return table->k(x).weight(); }, std::move(censor));
}

PredictiveFunction bigM_from_table(TablePtr table) {
    if (!table) throw std::invalid_argument("bigM_from_table: null table");
    return PredictiveFunction("M[" + table->descriptor() + ",L=" + std::to_string(table->budget().max_length) + "]",
                              [table](const BinString& x) { return table->bigM(x); });
}

ExactRational conditional(const PredictiveFunction& b, const BinString& context, int symbol) {
    if (b.has_step_rule()) return b.step_rule()(context, symbol);
    const auto denom = b(context);
    if (denom.is_zero()) {
        throw UndefinedConditional(b.descriptor() + ": conditional undefined, b('" + context.str() + "') = 0");
    }
    return b(context.with(symbol)) / denom;
}

PosteriorVector posterior(const PredictiveFunction& b, const BinString& context) {
    return PosteriorVector{context, {conditional(b, context, 0), conditional(b, context, 1)}};
}

PredictiveFunction normalize(const PredictiveFunction& b) {
    auto step = [b](const BinString& context, int symbol) {
        const auto v0 = b(context.with(0));
        const auto v1 = b(context.with(1));
        const auto sum = v0 + v1;
        if (sum.is_zero()) return ExactRational(1, 2);
        return (symbol == 0 ? v0 : v1) / sum;
    };
    auto eval = [step](const BinString& x) {
        ExactRational value(1);
        for (std::size_t t = 0; t < x.size() && !value.is_zero(); ++t) value *= step(x.prefix(t), x[t]);
        return value;
    };
    return PredictiveFunction(b.descriptor() + "_norm", std::move(eval), {}, std::move(step));
}

ExactRational normalization_factor(const PredictiveFunction& b, const BinString& context) {
    const auto root = b(BinString());
    if (root.is_zero()) throw UndefinedConditional(b.descriptor() + ": b(eps) = 0");
    ExactRational d = ExactRational(1) / root;
    for (std::size_t t = 0; t <= context.size(); ++t) {
        const auto prefix = context.prefix(t);
        const auto sum = b(prefix.with(0)) + b(prefix.with(1));
        if (sum.is_zero()) {
            throw UndefinedConditional(b.descriptor() + ": zero continuation mass after '" + prefix.str() + "'");
        }
        d *= b(prefix) / sum;
    }
    return d;
}

}  // namespace mdl
