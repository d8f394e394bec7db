#pragma once

#include <optional>
#include <vector>

#include "mdl/core/loss_matrix.hpp"
#include "mdl/predict/predictive_function.hpp"

namespace mdl {

/// sum_x posterior(x) * l_xy for every action y (posterior need not be normalized).
std::vector<ExactRational> weighted_losses(const LossMatrix& loss, const PosteriorVector& posterior);

/// Full argmin set of the posterior-weighted loss, ascending.
/// Throws std::invalid_argument on a negative or all-zero posterior.
std::vector<std::size_t> act_set(const LossMatrix& loss, const PosteriorVector& posterior);
/// Lowest-index minimizer of the posterior-weighted loss.
std::size_t act(const LossMatrix& loss, const PosteriorVector& posterior);

/// Exact mu-expected loss of `action`. Throws std::invalid_argument unless
/// mu_posterior is a distribution.
ExactRational expected_loss(const PosteriorVector& mu_posterior, const LossMatrix& loss, std::size_t action);

/// gamma = (l01 - l00) / (l01 - l00 + l10 - l11) for two actions. Action 1 is
/// chosen iff posterior(1) > gamma, action 0 iff posterior(1) < gamma.
/// Throws std::domain_error when the denominator is not positive.
ExactRational gamma_threshold(const LossMatrix& loss);

/// Lambda_rho: acts on the posterior of a predictive function.
class PredictorLambda {
public:
    PredictorLambda(PredictiveFunction source, LossMatrix loss) : source_(std::move(source)), loss_(std::move(loss)) {}

    std::size_t action(const BinString& context) const { return act(loss_, posterior(source_, context)); }
    std::vector<std::size_t> action_set(const BinString& context) const {
        return act_set(loss_, posterior(source_, context));
    }
    const PredictiveFunction& source() const noexcept { return source_; }
    const LossMatrix& loss() const noexcept { return loss_; }

private:
    PredictiveFunction source_;
    LossMatrix loss_;
};

/// One step of Lambda_b against Lambda_mu.
struct StepLossReport {
    std::size_t t = 0;  // 1-based
    BinString context;
    PosteriorVector b_posterior;
    PosteriorVector mu_posterior;
    std::size_t action_b = 0;
    std::size_t action_mu = 0;
    ExactRational loss_b;
    ExactRational loss_mu;
    /// loss_b / loss_mu; absent when loss_mu = 0.
    std::optional<ExactRational> ratio;
};

StepLossReport step_loss(const PredictiveFunction& b, const PredictiveFunction& mu, const LossMatrix& loss,
                         const BinString& context);
/// Reports for contexts x_<t, t = 1..len(sequence).
std::vector<StepLossReport> loss_trace(const PredictiveFunction& b, const PredictiveFunction& mu,
                                       const LossMatrix& loss, const BinString& sequence);

/// Three routes to the error-loss / MDL prediction at one context.
struct MdlComparison {
    BinString context;
    std::size_t by_posterior = 0;   // Lambda_m under error-loss
    std::size_t by_joint = 0;       // argmax_y m(xy)
    std::size_t by_complexity = 0;  // argmin_y Km(xy)
    bool agree() const { return by_posterior == by_joint && by_joint == by_complexity; }
};

/// Throws UndefinedConditional when m(context) = 0 for some context.
std::vector<MdlComparison> mdl_equivalence_report(const ComplexityTable& table, const std::vector<BinString>& contexts);
bool mdl_equivalence_check(const ComplexityTable& table, const std::vector<BinString>& contexts);

/// 0 <= l(Lambda_b) - l(Lambda_mu) <= sum_x |b(x) - mu(x)| at one context.
struct SelfOptimizingCheck {
    ExactRational gap;
    ExactRational bound;
    bool holds() const { return gap.sign() >= 0 && gap <= bound; }
};

SelfOptimizingCheck self_opt_bound(const PosteriorVector& b_posterior, const PosteriorVector& mu_posterior,
                                   const LossMatrix& loss);
inline bool self_opt_bound_check(const PosteriorVector& b_posterior, const PosteriorVector& mu_posterior,
                                 const LossMatrix& loss) {
    return self_opt_bound(b_posterior, mu_posterior, loss).holds();
}

}  // namespace mdl
