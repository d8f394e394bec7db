#pragma once

#include <cstddef>
#include <vector>

#include "mdl/core/rational.hpp"
#include "mdl/machines/machine.hpp"

namespace mdl {

/// Desk-scale stand-in for an unbounded search: every program of length <= L
/// runs for at most S steps.
struct EnumerationBudget {
    std::size_t max_length = 0;  // L
    StepBudget steps = 1;        // S

    friend bool operator==(const EnumerationBudget&, const EnumerationBudget&) = default;
};

/// Throws std::invalid_argument on S = 0 or L too large to enumerate.
void validate(const EnumerationBudget& budget);

struct ProgramRecord {
    BinString program;
    BinString output;
    std::size_t consumed = 0;
    bool halted = false;
    StepBudget steps = 0;
    bool exhausted = false;

    /// The machine stopped before reading all of `program`; the consumed
    /// prefix is the canonical program for this run.
    bool redundant() const noexcept { return consumed < program.size(); }

    friend bool operator==(const ProgramRecord&, const ProgramRecord&) = default;
};

/// One record per program of length <= L, in canonical (length, then
/// lexicographic) order, so records[canonical_index(p)] is p's record.
/// Work is split over `threads` workers; the result does not depend on it.
std::vector<ProgramRecord> enumerate(const MonotoneMachine& machine, EnumerationBudget budget,
                                     unsigned threads = 1);

// Direct scans over a record list. These are the literal definitions and are
// used as reference implementations for the indexed ComplexityTable.

/// Length of the shortest program whose output starts with x, or nullopt.
std::optional<std::size_t> scan_km(const std::vector<ProgramRecord>& records, const BinString& x);
/// Length of the shortest halting (consumed == length) program with output exactly x.
std::optional<std::size_t> scan_k(const std::vector<ProgramRecord>& records, const BinString& x);
/// Sum of 2^-len(p) over minimal programs p for x: output(p) starts with x and
/// no proper prefix of p already does.
ExactRational scan_bigM(const std::vector<ProgramRecord>& records, const BinString& x);

}  // namespace mdl
