#include "mdl/complexity/enumeration.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace mdl {

void validate(const EnumerationBudget& budget) {
    if (budget.steps == 0) throw std::invalid_argument("budget: S must be >= 1");
    if (budget.max_length > 30) throw std::invalid_argument("budget: L > 30 is not enumerable here");
}

std::vector<ProgramRecord> enumerate(const MonotoneMachine& machine, EnumerationBudget budget,
                                     unsigned threads) {
    validate(budget);
    const std::uint64_t count = (std::uint64_t{1} << (budget.max_length + 1)) - 1;
    std::vector<ProgramRecord> records(count);

    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            auto program = from_canonical_index(i);
            auto r = machine.run(program, budget.steps);
            records[i] = ProgramRecord{std::move(program), std::move(r.output), r.consumed,
                                       r.halted,           r.steps,            r.exhausted};
        }
    };

    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(count, 64))));
    if (threads == 1) {
        work(0, count);
        return records;
    }
    // Each worker owns a contiguous slice of the canonical order, so writes
    // never overlap and the merged result is the single-threaded one.
    {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (count + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::uint64_t begin = std::min<std::uint64_t>(count, w * chunk);
            const std::uint64_t end = std::min(count, begin + chunk);
            pool.emplace_back(work, begin, end);
        }
    }
    return records;
}

std::optional<std::size_t> scan_km(const std::vector<ProgramRecord>& records, const BinString& x) {
    for (const auto& r : records) {
        if (r.output.starts_with(x)) return r.program.size();
    }
    return std::nullopt;
}

std::optional<std::size_t> scan_k(const std::vector<ProgramRecord>& records, const BinString& x) {
    for (const auto& r : records) {
        if (r.halted && !r.redundant() && r.output == x) return r.program.size();
    }
    return std::nullopt;
}

ExactRational scan_bigM(const std::vector<ProgramRecord>& records, const BinString& x) {
    ExactRational total;
    for (const auto& r : records) {
        if (!r.output.starts_with(x)) continue;
        bool minimal = true;
        for (std::size_t len = 0; len < r.program.size() && minimal; ++len) {
            if (records[canonical_index(r.program.prefix(len))].output.starts_with(x)) minimal = false;
        }
        if (minimal) total += ExactRational::dyadic(r.program.size());
    }
    return total;
}

}  // namespace mdl
