#include "mdl/predict/predictor.hpp"

#include <algorithm>
#include <stdexcept>

#include "mdl/core/errors.hpp"

namespace mdl {

std::vector<ExactRational> weighted_losses(const LossMatrix& loss, const PosteriorVector& posterior) {
    std::vector<ExactRational> out(loss.num_actions());
    for (std::size_t y = 0; y < out.size(); ++y) {
        out[y] = posterior[0] * loss.at(0, y) + posterior[1] * loss.at(1, y);
    }
    return out;
}

std::vector<std::size_t> act_set(const LossMatrix& loss, const PosteriorVector& posterior) {
    if (posterior[0].sign() < 0 || posterior[1].sign() < 0) throw std::invalid_argument("act: negative posterior");
    if (posterior.total().is_zero()) throw std::invalid_argument("act: all-zero posterior");
    const auto losses = weighted_losses(loss, posterior);
    const auto best = *std::min_element(losses.begin(), losses.end());
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < losses.size(); ++y) {
        if (losses[y] == best) out.push_back(y);
    }
    return out;
}

std::size_t act(const LossMatrix& loss, const PosteriorVector& posterior) { return act_set(loss, posterior).front(); }

ExactRational expected_loss(const PosteriorVector& mu_posterior, const LossMatrix& loss, std::size_t action) {
    if (mu_posterior[0].sign() < 0 || mu_posterior[1].sign() < 0 || mu_posterior.total() != ExactRational(1)) {
        throw std::invalid_argument("expected_loss: mu posterior (" + mu_posterior[0].str() + ", " +
                                    mu_posterior[1].str() + ") is not a distribution");
    }
    return mu_posterior[0] * loss.at(0, action) + mu_posterior[1] * loss.at(1, action);
}

ExactRational gamma_threshold(const LossMatrix& loss) {
    if (loss.num_actions() != 2) throw std::invalid_argument("gamma_threshold: needs exactly two actions");
    const auto rise = loss.at(0, 1) - loss.at(0, 0);
    const auto denom = rise + loss.at(1, 0) - loss.at(1, 1);
    if (denom.sign() <= 0) throw std::domain_error("gamma_threshold: degenerate loss, denominator " + denom.str());
    return rise / denom;
}

StepLossReport step_loss(const PredictiveFunction& b, const PredictiveFunction& mu, const LossMatrix& loss,
                         const BinString& context) {
    StepLossReport r;
    r.t = context.size() + 1;
    r.context = context;
    r.b_posterior = posterior(b, context);
    r.mu_posterior = posterior(mu, context);
    r.action_b = act(loss, r.b_posterior);
    r.action_mu = act(loss, r.mu_posterior);
    r.loss_b = expected_loss(r.mu_posterior, loss, r.action_b);
    r.loss_mu = expected_loss(r.mu_posterior, loss, r.action_mu);
    if (!r.loss_mu.is_zero()) r.ratio = r.loss_b / r.loss_mu;
    return r;
}

std::vector<StepLossReport> loss_trace(const PredictiveFunction& b, const PredictiveFunction& mu,
                                       const LossMatrix& loss, const BinString& sequence) {
    std::vector<StepLossReport> out;
    out.reserve(sequence.size());
    for (std::size_t t = 0; t < sequence.size(); ++t) out.push_back(step_loss(b, mu, loss, sequence.prefix(t)));
    return out;
}

std::vector<MdlComparison> mdl_equivalence_report(const ComplexityTable& table, const std::vector<BinString>& contexts) {
    const auto error_loss = LossMatrix::error_loss();
    std::vector<MdlComparison> out;
    out.reserve(contexts.size());
    for (const auto& x : contexts) {
        MdlComparison c;
        c.context = x;
        const auto m_of = [&](const BinString& s) { return table.km(s).weight(); };
        const auto mx = m_of(x);
        if (mx.is_zero()) {
            throw UndefinedConditional("mdl_equivalence: m('" + x.str() + "') = 0 at this budget");
        }
        PosteriorVector post{x, {m_of(x.with(0)) / mx, m_of(x.with(1)) / mx}};
        c.by_posterior = act(error_loss, post);
        c.by_joint = m_of(x.with(1)) > m_of(x.with(0)) ? 1 : 0;
        c.by_complexity = table.km(x.with(1)) < table.km(x.with(0)) ? 1 : 0;
        out.push_back(std::move(c));
    }
    return out;
}

bool mdl_equivalence_check(const ComplexityTable& table, const std::vector<BinString>& contexts) {
    const auto report = mdl_equivalence_report(table, contexts);
    return std::all_of(report.begin(), report.end(), [](const MdlComparison& c) { return c.agree(); });
}

SelfOptimizingCheck self_opt_bound(const PosteriorVector& b_posterior, const PosteriorVector& mu_posterior,
                                   const LossMatrix& loss) {
    const auto yb = act(loss, b_posterior);
    const auto ymu = act(loss, mu_posterior);
    SelfOptimizingCheck c;
    c.gap = expected_loss(mu_posterior, loss, yb) - expected_loss(mu_posterior, loss, ymu);
    c.bound = abs(b_posterior[0] - mu_posterior[0]) + abs(b_posterior[1] - mu_posterior[1]);
    return c;
}

}  // namespace mdl
