#pragma once

#include <initializer_list>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mdl/core/bin_string.hpp"
#include "mdl/core/rational.hpp"

namespace mdl {

/// Finite set of binary strings, kept in canonical order.
class PrefixSet {
public:
    PrefixSet() = default;
    PrefixSet(std::initializer_list<BinString> members) : members_(members) {}
    explicit PrefixSet(const std::vector<BinString>& members) : members_(members.begin(), members.end()) {}

    void insert(BinString x) { members_.insert(std::move(x)); }
    bool contains(const BinString& x) const { return members_.count(x) != 0; }
    std::size_t size() const noexcept { return members_.size(); }
    const std::set<BinString, CanonicalLess>& members() const noexcept { return members_; }

    /// First pair (x, y) with x a proper prefix of y, if any.
    std::optional<std::pair<BinString, BinString>> prefix_conflict() const;
    bool is_prefix_free() const { return !prefix_conflict(); }

    friend bool operator==(const PrefixSet&, const PrefixSet&) = default;

private:
    std::set<BinString, CanonicalLess> members_;
};

/// Sum of 2^-len(x) over the set. Throws NotPrefixFree otherwise.
ExactRational kraft_sum(const PrefixSet& set);

/// { x_<t flip(x_t) : 1 <= t <= n } for x of length n >= 1.
PrefixSet off_sequence_set(const BinString& x);

}  // namespace mdl
