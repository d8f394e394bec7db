#pragma once

#include <cstddef>
#include <vector>

#include "mdl/machines/machine.hpp"

namespace mdl {

// Block code over blocks of s input bits and s+1 output bits.
//   A = {0^(s+1)} u 1{0,1}^s \ {1 0^s}
//   d(0^s) = 0^(s+1),  d(z) = 1z otherwise;  c = d^-1.

/// Throws std::invalid_argument unless len(z) == s.
BinString decode_d(std::size_t s, const BinString& z);
/// Throws std::invalid_argument unless a is in A.
BinString encode_c(std::size_t s, const BinString& a);
bool in_block_alphabet(std::size_t s, const BinString& a);
/// A in lexicographic order (2^s members).
std::vector<BinString> block_alphabet(std::size_t s);
/// d applied blockwise; len(z) must be a multiple of s.
BinString decode_blocks(std::size_t s, const BinString& z);
/// c applied blockwise; len(a) must be a multiple of s+1 and every block in A.
BinString encode_blocks(std::size_t s, const BinString& a);

/// Block-coding machine U_s.
///
/// First bit 1: read s-bit blocks, buffering their d-images; on the block
/// 0^s flush the buffer followed by 0^(s+1), then keep going. Nothing is
/// output before a flush.
/// First bit 0: skip 3s bits and run the inner machine on the rest.
/// Steps: one per input bit read by U itself, one per emitted symbol; the
/// inner machine gets whatever budget remains.
class BlockMachine final : public MonotoneMachine {
public:
    explicit BlockMachine(std::size_t s, MachinePtr inner = nullptr);

    RunResult run(const BinString& program, StepBudget budget) const override;
    std::string descriptor() const override;

    std::size_t block_size() const noexcept { return s_; }
    const MonotoneMachine& inner() const noexcept { return *inner_; }

private:
    std::size_t s_;
    MachinePtr inner_;
};

}  // namespace mdl
