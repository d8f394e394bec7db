#include "mdl/machines/reference_machine.hpp"

#include <stdexcept>

namespace mdl {

BinString elias_gamma(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("elias_gamma: n must be >= 1");
    std::size_t width = 0;
    while (width < 64 && (n >> width) != 0) ++width;
    return BinString::zeros(width - 1) + BinString::from_uint(n, width);
}

namespace {

class Run {
public:
    Run(const BinString& program, StepBudget budget) : program_(program), budget_(budget) {}

    RunResult execute() {
        while (true) {
            int hi = 0;
            int lo = 0;
            if (!read(hi) || !read(lo)) return finish(false);
            if (!charge()) return finish(false);
            const int op = hi * 2 + lo;
            if (op == 0 || op == 1) {
                if (!emit(op)) return finish(false);
            } else if (op == 2) {
                std::uint64_t n = 0;
                if (!read_gamma(n)) return finish(false);
                const BinString base = result_.output;
                for (std::uint64_t i = 0; i < n && !base.empty(); ++i) {
                    for (std::size_t j = 0; j < base.size(); ++j) {
                        if (!emit(base[j])) return finish(false);
                    }
                }
            } else {
                return finish(true);
            }
        }
    }

private:
    bool read(int& bit) {
        if (result_.consumed >= program_.size()) return false;
        bit = program_[result_.consumed++];
        return true;
    }

    bool read_gamma(std::uint64_t& n) {
        std::size_t zeros = 0;
        int bit = 0;
        while (true) {
            if (!read(bit)) return false;
            if (bit == 1) break;
            ++zeros;
        }
        if (zeros >= 63) throw std::overflow_error("elias gamma value exceeds 64 bits");
        n = 1;
        for (std::size_t i = 0; i < zeros; ++i) {
            if (!read(bit)) return false;
            n = (n << 1) | static_cast<std::uint64_t>(bit);
        }
        return true;
    }

    bool charge() {
        if (result_.steps + 1 > budget_) {
            result_.steps = budget_ + 1;
            result_.exhausted = true;
            return false;
        }
        ++result_.steps;
        return true;
    }

    bool emit(int bit) {
        if (!charge()) return false;
        result_.output.push_back(bit);
        return true;
    }

    RunResult finish(bool halted) {
        result_.halted = halted;
        return std::move(result_);
    }

    const BinString& program_;
    StepBudget budget_;
    RunResult result_;
};

}  // namespace

RunResult ReferenceMachine::run(const BinString& program, StepBudget budget) const {
    if (budget == 0) throw std::invalid_argument("run: budget must be >= 1");
    return Run(program, budget).execute();
}

}  // namespace mdl
