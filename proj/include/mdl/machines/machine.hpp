#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "mdl/core/bin_string.hpp"

namespace mdl {

using StepBudget = std::uint64_t;

/// Outcome of running a program on a monotone machine.
///
/// `consumed` counts input bits actually read, including the bits of a
/// truncated opcode or code word. An exhausted run stops at the step that
/// would exceed the budget and records steps = budget + 1.
struct RunResult {
    BinString output;
    std::size_t consumed = 0;
    bool halted = false;
    StepBudget steps = 0;
    bool exhausted = false;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Machine with one-way binary input and output tapes. Implementations are
/// pure: identical (program, budget) pairs give identical results.
class MonotoneMachine {
public:
    virtual ~MonotoneMachine() = default;
    virtual RunResult run(const BinString& program, StepBudget budget) const = 0;
    /// "R" or "U:s=<n>:inner=<descriptor>".
    virtual std::string descriptor() const = 0;
};

using MachinePtr = std::shared_ptr<const MonotoneMachine>;

/// Parses a machine descriptor. Throws std::invalid_argument.
MachinePtr make_machine(std::string_view descriptor);

struct MonotoneViolation {
    BinString program;
    BinString extension;
    BinString program_output;
    BinString extension_output;
};

/// Exhaustive check that output(p) is a prefix of output(pq) for all programs
/// p, pq of length <= max_len. On failure, reports the first violating
/// extension pq in canonical order together with its shortest violated prefix.
std::optional<MonotoneViolation> find_monotone_violation(const MonotoneMachine& machine,
                                                         std::size_t max_len, StepBudget budget);

inline bool check_monotone(const MonotoneMachine& machine, std::size_t max_len, StepBudget budget) {
    return !find_monotone_violation(machine, max_len, budget);
}

}  // namespace mdl
