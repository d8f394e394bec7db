#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "mdl/complexity/complexity.hpp"
#include "mdl/complexity/enumeration.hpp"
#include "mdl/core/prefix_set.hpp"

namespace mdl {

struct TableEntry {
    BinString x;
    Complexity km;
    Complexity k;
    ExactRational bigM;
};

/// Resource-bounded Km, K and M for one machine at one budget (L, S).
///
/// Built from the full record list of `enumerate`. Strings of length <= depth
/// are answered from an output trie; longer strings fall back to a scan of the
/// records, so every query is answered exactly for the budget regardless of
/// depth.
class ComplexityTable {
public:
    ComplexityTable(std::string descriptor, EnumerationBudget budget, std::size_t depth,
                    std::vector<ProgramRecord> records);

    static ComplexityTable build(const MonotoneMachine& machine, EnumerationBudget budget, std::size_t depth,
                                 unsigned threads = 1);

    const std::string& descriptor() const noexcept { return descriptor_; }
    const EnumerationBudget& budget() const noexcept { return budget_; }
    std::size_t depth() const noexcept { return depth_; }
    const std::vector<ProgramRecord>& records() const noexcept { return records_; }

    /// min len(p) over programs with output starting with x.
    Complexity km(const BinString& x) const;
    /// min len(p) over halting programs with output exactly x.
    Complexity k(const BinString& x) const;
    /// Sum of 2^-len(p) over minimal programs for x.
    ExactRational bigM(const BinString& x) const;

    std::size_t exhausted_runs() const noexcept { return exhausted_; }
    /// No run hit the step budget, so every result is the unbounded-step one.
    bool saturated() const noexcept { return exhausted_ == 0; }

    /// Consumed-bit halting programs; prefix-free by construction.
    PrefixSet halting_programs() const;

    /// Strings of length <= depth with finite km or k, in canonical order.
    std::vector<TableEntry> entries() const;

    friend bool operator==(const ComplexityTable& a, const ComplexityTable& b) {
        return a.descriptor_ == b.descriptor_ && a.budget_ == b.budget_ && a.depth_ == b.depth_ &&
               a.records_ == b.records_;
    }

private:
    static constexpr std::uint32_t kNoProgram = 0xFFFFFFFFU;

    struct Node {
        std::int32_t child[2] = {-1, -1};
        std::uint64_t mass = 0;  // in units of 2^-L
        std::uint32_t km = kNoProgram;
    };

    void index();
    std::int32_t find(const BinString& x) const;
    std::size_t parent_output_length(const ProgramRecord& r) const;

    std::string descriptor_;
    EnumerationBudget budget_;
    std::size_t depth_;
    std::vector<ProgramRecord> records_;
    std::vector<Node> nodes_;
    std::unordered_map<BinString, std::size_t> k_;
    std::size_t exhausted_ = 0;
};

// Convenience wrappers matching the one-shot query API.
Complexity km_approx(const BinString& x, const MonotoneMachine& machine, EnumerationBudget budget);
Complexity k_approx(const BinString& x, const MonotoneMachine& machine, EnumerationBudget budget);
ExactRational bigM_approx(const BinString& x, const MonotoneMachine& machine, EnumerationBudget budget);

}  // namespace mdl
