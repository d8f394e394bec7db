#include "mdl/machines/block_machine.hpp"

#include <stdexcept>
#include <string>

#include "mdl/machines/reference_machine.hpp"

namespace mdl {

BinString decode_d(std::size_t s, const BinString& z) {
    if (z.size() != s) {
        throw std::invalid_argument("decode_d: expected " + std::to_string(s) + " bits, got '" + z.str() + "'");
    }
    if (z.all_zero()) return BinString::zeros(s + 1);
    return BinString("1") + z;
}

bool in_block_alphabet(std::size_t s, const BinString& a) {
    if (a.size() != s + 1) return false;
    if (a[0] == 0) return a.all_zero();
    return !a.substr(1).all_zero();
}

BinString encode_c(std::size_t s, const BinString& a) {
    if (!in_block_alphabet(s, a)) throw std::invalid_argument("encode_c: '" + a.str() + "' is not in A");
    if (a[0] == 0) return BinString::zeros(s);
    return a.substr(1);
}

std::vector<BinString> block_alphabet(std::size_t s) {
    std::vector<BinString> out;
    out.push_back(BinString::zeros(s + 1));
    for (const auto& z : all_strings(s)) {
        if (!z.all_zero()) out.push_back(BinString("1") + z);
    }
    return out;
}

BinString decode_blocks(std::size_t s, const BinString& z) {
    if (z.size() % s != 0) throw std::invalid_argument("decode_blocks: length not a multiple of s");
    BinString out;
    for (std::size_t i = 0; i < z.size(); i += s) out.append(decode_d(s, z.substr(i, s)));
    return out;
}

BinString encode_blocks(std::size_t s, const BinString& a) {
    if (a.size() % (s + 1) != 0) throw std::invalid_argument("encode_blocks: length not a multiple of s+1");
    BinString out;
    for (std::size_t i = 0; i < a.size(); i += s + 1) out.append(encode_c(s, a.substr(i, s + 1)));
    return out;
}

BlockMachine::BlockMachine(std::size_t s, MachinePtr inner)
    : s_(s), inner_(inner ? std::move(inner) : std::make_shared<ReferenceMachine>()) {
    if (s < 2) throw std::invalid_argument("BlockMachine: block size must be >= 2");
}

std::string BlockMachine::descriptor() const {
    return "U:s=" + std::to_string(s_) + ":inner=" + inner_->descriptor();
}

RunResult BlockMachine::run(const BinString& program, StepBudget budget) const {
    if (budget == 0) throw std::invalid_argument("run: budget must be >= 1");
    RunResult r;
    auto charge = [&]() {
        if (r.steps + 1 > budget) {
            r.steps = budget + 1;
            r.exhausted = true;
            return false;
        }
        ++r.steps;
        return true;
    };
    auto read = [&](int& bit) {
        if (r.consumed >= program.size()) return false;
        if (!charge()) return false;
        bit = program[r.consumed++];
        return true;
    };

    int bit = 0;
    if (!read(bit)) return r;

    if (bit == 0) {
        for (std::size_t i = 0; i < 3 * s_; ++i) {
            if (!read(bit)) return r;
        }
        const BinString rest = program.substr(r.consumed);
        if (rest.empty()) return r;
        if (r.steps >= budget) {
            // The inner machine would need at least one step.
            r.steps = budget + 1;
            r.exhausted = true;
            return r;
        }
        RunResult inner = inner_->run(rest, budget - r.steps);
        r.output = std::move(inner.output);
        r.consumed += inner.consumed;
        r.halted = inner.halted;
        r.exhausted = inner.exhausted;
        r.steps = inner.exhausted ? budget + 1 : r.steps + inner.steps;
        return r;
    }

    BinString pending;
    while (true) {
        BinString block;
        for (std::size_t i = 0; i < s_; ++i) {
            if (!read(bit)) return r;
            block.push_back(bit);
        }
        if (!block.all_zero()) {
            pending.append(decode_d(s_, block));
            continue;
        }
        pending.append(BinString::zeros(s_ + 1));
        for (std::size_t i = 0; i < pending.size(); ++i) {
            if (!charge()) return r;
            r.output.push_back(pending[i]);
        }
        pending = BinString();
    }
}

}  // namespace mdl
