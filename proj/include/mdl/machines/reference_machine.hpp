#pragma once

#include <cstdint>

#include "mdl/machines/machine.hpp"

namespace mdl {

/// Elias-gamma code of n >= 1: (b-1) zeros then the b-bit binary expansion.
BinString elias_gamma(std::uint64_t n);

/// Desk-scale reference machine R.
///
/// Opcodes are 2-bit groups read left to right:
///   00  emit 0
///   01  emit 1
///   10  read an Elias-gamma integer n >= 1, then append n copies of the
///       whole current output
///   11  halt
/// Running out of input ends the run un-halted. Each decoded opcode costs one
/// step and each emitted symbol costs one step.
class ReferenceMachine final : public MonotoneMachine {
public:
    RunResult run(const BinString& program, StepBudget budget) const override;
    std::string descriptor() const override { return "R"; }
};

}  // namespace mdl
