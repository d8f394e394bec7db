#pragma once

#include <cstddef>

#include "mdl/complexity/complexity_table.hpp"

namespace mdl {

/// Exact Km of x on U_s restricted to the empty program and programs that
/// start with 1. Split x into full (s+1)-blocks a_1..a_k and a partial block
/// w; with i the number of s-bit input blocks needed up to and including the
/// flushing terminator, the value is 1 + s*i:
///   w empty:            i = k, or k+1 when a_k != 0^(s+1)
///   w = 0^j (j >= 1):   i = k+1 (the terminator itself supplies w)
///   w starts with 1:    i = k+2
///   otherwise, or some a_j not in A: infinite.
/// For x in A^k this gives Km(x0) = len(c(x)) + s + 1 and
/// Km(x1) = len(c(x)) + 2s + 1.
Complexity km_block_one_branch(std::size_t s, const BinString& x);

/// Interval [lower, upper] containing Km of x on U_s, where the 0-branch cost
/// 1 + 3s + Km_inner(x) is read from `inner`. An infinite inner entry means
/// Km_inner(x) > L when the inner table is saturated.
struct BlockKmBounds {
    Complexity lower;
    Complexity upper;
    bool exact() const { return lower == upper; }
};

BlockKmBounds km_block_bounds(std::size_t s, const BinString& x, const ComplexityTable& inner);

/// Km of x on U_s. Throws BudgetInsufficient when the inner table cannot
/// certify that the 0-branch is no shorter than the 1-branch.
Complexity km_block_exact(std::size_t s, const BinString& x, const ComplexityTable& inner);

}  // namespace mdl
