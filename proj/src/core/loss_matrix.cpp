#include "mdl/core/loss_matrix.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace mdl {

LossMatrix::LossMatrix(std::vector<ExactRational> row0, std::vector<ExactRational> row1)
    : rows_{std::move(row0), std::move(row1)} {
    if (rows_[0].size() != rows_[1].size()) throw std::invalid_argument("LossMatrix: ragged rows");
    if (rows_[0].size() < 2) throw std::invalid_argument("LossMatrix: need at least two actions");
    for (const auto& row : rows_) {
        for (const auto& v : row) {
            if (v.sign() < 0 || v > ExactRational(1)) {
                throw std::invalid_argument("LossMatrix: entry " + v.str() + " outside [0,1]");
            }
        }
    }
}

LossMatrix LossMatrix::error_loss() { return LossMatrix({0, 1}, {1, 0}); }

LossMatrix LossMatrix::three_action(const ExactRational& middle) {
    const ExactRational two_thirds(2, 3);
    return LossMatrix({0, middle, two_thirds}, {1, middle, 0});
}

std::vector<std::size_t> LossMatrix::argmin_set(int outcome) const {
    const auto& row = rows_.at(outcome);
    const auto best = *std::min_element(row.begin(), row.end());
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < row.size(); ++y) {
        if (row[y] == best) out.push_back(y);
    }
    return out;
}

LossMatrix LossMatrix::padded(std::size_t actions) const {
    if (actions < num_actions()) throw std::invalid_argument("LossMatrix::padded: cannot shrink");
    auto r0 = rows_[0];
    auto r1 = rows_[1];
    r0.resize(actions, ExactRational(1));
    r1.resize(actions, ExactRational(1));
    return LossMatrix(std::move(r0), std::move(r1));
}

bool is_non_degenerate(const LossMatrix& loss) {
    const auto a = loss.argmin_set(0);
    const auto b = loss.argmin_set(1);
    std::vector<std::size_t> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return common.empty();
}

}  // namespace mdl
