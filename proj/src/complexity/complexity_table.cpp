#include "mdl/complexity/complexity_table.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mdl {

ComplexityTable::ComplexityTable(std::string descriptor, EnumerationBudget budget, std::size_t depth,
                                 std::vector<ProgramRecord> records)
    : descriptor_(std::move(descriptor)), budget_(budget), depth_(depth), records_(std::move(records)) {
    validate(budget_);
    const std::uint64_t expected = (std::uint64_t{1} << (budget_.max_length + 1)) - 1;
    if (records_.size() != expected) {
        throw std::invalid_argument("ComplexityTable: expected " + std::to_string(expected) + " records, got " +
                                    std::to_string(records_.size()));
    }
    for (std::size_t i = 0; i < records_.size(); ++i) {
        if (canonical_index(records_[i].program) != i) {
            throw std::invalid_argument("ComplexityTable: records not in canonical order at '" +
                                        records_[i].program.str() + "'");
        }
    }
    index();
}

ComplexityTable ComplexityTable::build(const MonotoneMachine& machine, EnumerationBudget budget, std::size_t depth,
                                       unsigned threads) {
    return ComplexityTable(machine.descriptor(), budget, depth, enumerate(machine, budget, threads));
}

std::size_t ComplexityTable::parent_output_length(const ProgramRecord& r) const {
    return records_[canonical_index(r.program.parent())].output.size();
}

void ComplexityTable::index() {
    nodes_.assign(1, Node{});
    k_.clear();
    exhausted_ = 0;
    const std::size_t L = budget_.max_length;

    for (const auto& r : records_) {
        if (r.exhausted) ++exhausted_;
        if (r.halted && !r.redundant()) {
            auto [it, inserted] = k_.try_emplace(r.output, r.program.size());
            if (!inserted) it->second = std::min(it->second, r.program.size());
        }
        // p is minimal for exactly the prefixes of its output that are longer
        // than its parent's output (outputs grow monotonically along p).
        const std::size_t lo = r.program.empty() ? 0 : parent_output_length(r) + 1;
        const std::size_t hi = std::min(r.output.size(), depth_);
        if (lo > hi) continue;
        const std::uint64_t mass = std::uint64_t{1} << (L - r.program.size());
        std::int32_t node = 0;
        for (std::size_t j = 0;; ++j) {
            if (j >= lo) {
                nodes_[node].mass += mass;
                nodes_[node].km = std::min<std::uint32_t>(nodes_[node].km, static_cast<std::uint32_t>(r.program.size()));
            }
            if (j == hi) break;
            const int bit = r.output[j];
            if (nodes_[node].child[bit] < 0) {
                nodes_[node].child[bit] = static_cast<std::int32_t>(nodes_.size());
                nodes_.emplace_back();
            }
            node = nodes_[node].child[bit];
        }
    }
}

std::int32_t ComplexityTable::find(const BinString& x) const {
    std::int32_t node = 0;
    for (std::size_t j = 0; j < x.size() && node >= 0; ++j) node = nodes_[node].child[x[j]];
    return node;
}

Complexity ComplexityTable::km(const BinString& x) const {
    if (x.size() > depth_) return Complexity(scan_km(records_, x));
    const auto node = find(x);
    if (node < 0 || nodes_[node].km == kNoProgram) return Complexity::infinite();
    return Complexity(static_cast<std::size_t>(nodes_[node].km));
}

Complexity ComplexityTable::k(const BinString& x) const {
    const auto it = k_.find(x);
    return it == k_.end() ? Complexity::infinite() : Complexity(it->second);
}

ExactRational ComplexityTable::bigM(const BinString& x) const {
    const std::size_t L = budget_.max_length;
    if (x.size() <= depth_) {
        const auto node = find(x);
        return node < 0 ? ExactRational(0) : ExactRational::scaled(nodes_[node].mass, L);
    }
    std::uint64_t mass = 0;
    for (const auto& r : records_) {
        if (!r.program.empty() && r.output.starts_with(x) && parent_output_length(r) < x.size()) {
            mass += std::uint64_t{1} << (L - r.program.size());
        }
    }
    return ExactRational::scaled(mass, L);
}

PrefixSet ComplexityTable::halting_programs() const {
    PrefixSet out;
    for (const auto& r : records_) {
        if (r.halted && !r.redundant()) out.insert(r.program);
    }
    return out;
}

std::vector<TableEntry> ComplexityTable::entries() const {
    std::set<BinString, CanonicalLess> keys;
    // Depth-first walk of the trie collects every reached string.
    std::vector<std::pair<std::int32_t, BinString>> stack{{0, BinString()}};
    while (!stack.empty()) {
        auto [node, x] = std::move(stack.back());
        stack.pop_back();
        if (nodes_[node].km != kNoProgram) keys.insert(x);
        for (int bit = 0; bit < 2; ++bit) {
            if (nodes_[node].child[bit] >= 0) stack.emplace_back(nodes_[node].child[bit], x.with(bit));
        }
    }
    for (const auto& [x, len] : k_) {
        if (x.size() <= depth_) keys.insert(x);
    }
    std::vector<TableEntry> out;
    out.reserve(keys.size());
    for (const auto& x : keys) out.push_back(TableEntry{x, km(x), k(x), bigM(x)});
    return out;
}

Complexity km_approx(const BinString& x, const MonotoneMachine& machine, EnumerationBudget budget) {
    return Complexity(scan_km(enumerate(machine, budget), x));
}

Complexity k_approx(const BinString& x, const MonotoneMachine& machine, EnumerationBudget budget) {
    return Complexity(scan_k(enumerate(machine, budget), x));
}

ExactRational bigM_approx(const BinString& x, const MonotoneMachine& machine, EnumerationBudget budget) {
    return scan_bigM(enumerate(machine, budget), x);
}

}  // namespace mdl
