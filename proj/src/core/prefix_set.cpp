#include "mdl/core/prefix_set.hpp"

#include <stdexcept>
#include <string>

#include "mdl/core/errors.hpp"

namespace mdl {

std::optional<std::pair<BinString, BinString>> PrefixSet::prefix_conflict() const {
    // Proper prefixes are shorter, so checking every prefix of each member
    // against the set finds any conflict.
    for (const auto& y : members_) {
        for (std::size_t len = 0; len < y.size(); ++len) {
            auto p = y.prefix(len);
            if (members_.count(p)) return std::make_pair(std::move(p), y);
        }
    }
    return std::nullopt;
}

ExactRational kraft_sum(const PrefixSet& set) {
    if (auto conflict = set.prefix_conflict()) {
        throw NotPrefixFree("not prefix-free: '" + conflict->first.str() + "' is a proper prefix of '" +
                            conflict->second.str() + "'");
    }
    ExactRational total;
    for (const auto& x : set.members()) total += ExactRational::dyadic(x.size());
    return total;
}

PrefixSet off_sequence_set(const BinString& x) {
    if (x.empty()) throw std::invalid_argument("off_sequence_set: empty sequence");
    PrefixSet out;
    for (std::size_t t = 0; t < x.size(); ++t) out.insert(x.prefix(t).with(1 - x[t]));
    return out;
}

}  // namespace mdl
