#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mdl/core/rational.hpp"

namespace mdl {

/// Loss table l[x][y] for outcome x in {0,1} and action y in {0..numActions-1}.
/// Entries are exact and lie in [0,1].
class LossMatrix {
public:
    /// Throws std::invalid_argument unless both rows have the same length
    /// >= 2 and every entry is in [0,1].
    LossMatrix(std::vector<ExactRational> row0, std::vector<ExactRational> row1);

    /// l_xy = 1 - delta_xy with two actions.
    static LossMatrix error_loss();
    /// l_x0 = x, l_x1 = middle, l_x2 = (2/3)(1-x).
    static LossMatrix three_action(const ExactRational& middle);

    std::size_t num_actions() const noexcept { return rows_[0].size(); }
    const ExactRational& at(int outcome, std::size_t action) const { return rows_.at(outcome).at(action); }

    /// { y : l_xy = min_y' l_xy' }, ascending.
    std::vector<std::size_t> argmin_set(int outcome) const;

    /// Copy extended to `actions` columns with loss 1 for every new action.
    LossMatrix padded(std::size_t actions) const;

    friend bool operator==(const LossMatrix&, const LossMatrix&) = default;

private:
    std::array<std::vector<ExactRational>, 2> rows_;
};

/// true iff no single action is optimal for every outcome.
bool is_non_degenerate(const LossMatrix& loss);

}  // namespace mdl
