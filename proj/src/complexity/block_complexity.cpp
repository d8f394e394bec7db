#include "mdl/complexity/block_complexity.hpp"

#include <algorithm>

#include "mdl/core/errors.hpp"
#include "mdl/machines/block_machine.hpp"

namespace mdl {

Complexity km_block_one_branch(std::size_t s, const BinString& x) {
    if (x.empty()) return Complexity(std::size_t{0});
    const std::size_t block = s + 1;
    const std::size_t k = x.size() / block;
    for (std::size_t j = 0; j < k; ++j) {
        if (!in_block_alphabet(s, x.substr(j * block, block))) return Complexity::infinite();
    }
    const BinString w = x.substr(k * block);
    std::size_t blocks = 0;
    if (w.empty()) {
        blocks = x.substr((k - 1) * block).all_zero() ? k : k + 1;
    } else if (w.all_zero()) {
        blocks = k + 1;
    } else if (w[0] == 1) {
        blocks = k + 2;
    } else {
        return Complexity::infinite();
    }
    return Complexity(1 + s * blocks);
}

BlockKmBounds km_block_bounds(std::size_t s, const BinString& x, const ComplexityTable& inner) {
    const Complexity one = km_block_one_branch(s, x);
    if (x.empty()) return {one, one};
    const std::size_t prefix_cost = 1 + 3 * s;
    const Complexity inner_km = inner.km(x);
    if (inner_km.finite() && inner.saturated()) {
        const Complexity zero(prefix_cost + inner_km.value());
        const auto best = std::min(one, zero);
        return {best, best};
    }
    // Unknown inner value: Km_inner(x) > L if saturated, otherwise only >= 1.
    const Complexity zero_lower(prefix_cost + (inner.saturated() ? inner.budget().max_length + 1 : 1));
    const Complexity zero_upper = inner_km.finite() ? Complexity(prefix_cost + inner_km.value()) : Complexity::infinite();
    return {std::min(one, zero_lower), std::min(one, zero_upper)};
}

Complexity km_block_exact(std::size_t s, const BinString& x, const ComplexityTable& inner) {
    const auto b = km_block_bounds(s, x, inner);
    if (!b.exact()) {
        throw BudgetInsufficient("km_block_exact: inner table " + inner.descriptor() + " at L=" +
                                 std::to_string(inner.budget().max_length) + " cannot certify Km of '" + x.str() +
                                 "' (bounds " + b.lower.str() + ".." + b.upper.str() + ")");
    }
    return b.lower;
}

}  // namespace mdl
