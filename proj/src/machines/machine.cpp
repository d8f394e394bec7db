#include "mdl/machines/machine.hpp"

#include <stdexcept>
#include <string>

#include "mdl/machines/block_machine.hpp"
#include "mdl/machines/reference_machine.hpp"

namespace mdl {

MachinePtr make_machine(std::string_view descriptor) {
    if (descriptor == "R") return std::make_shared<ReferenceMachine>();
    constexpr std::string_view head = "U:s=";
    constexpr std::string_view tail = ":inner=";
    if (descriptor.substr(0, head.size()) == head) {
        const auto rest = descriptor.substr(head.size());
        const auto sep = rest.find(tail);
        const auto digits = rest.substr(0, sep);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos) {
            throw std::invalid_argument("bad block size in machine descriptor '" + std::string(descriptor) + "'");
        }
        const std::size_t s = std::stoul(std::string(digits));
        MachinePtr inner = sep == std::string_view::npos ? make_machine("R") : make_machine(rest.substr(sep + tail.size()));
        return std::make_shared<BlockMachine>(s, std::move(inner));
    }
    throw std::invalid_argument("unknown machine descriptor '" + std::string(descriptor) + "'");
}

std::optional<MonotoneViolation> find_monotone_violation(const MonotoneMachine& machine,
                                                         std::size_t max_len, StepBudget budget) {
    const auto programs = all_strings_up_to(max_len);
    std::vector<BinString> outputs;
    outputs.reserve(programs.size());
    for (const auto& p : programs) outputs.push_back(machine.run(p, budget).output);

    // Checking each program against its one-bit parent covers every (p, pq)
    // pair by transitivity of the prefix relation.
    for (std::size_t i = 1; i < programs.size(); ++i) {
        const auto parent = canonical_index(programs[i].parent());
        if (!outputs[i].starts_with(outputs[parent])) {
            // Report the shortest ancestor that is violated, for readability.
            const auto& pq = programs[i];
            for (std::size_t len = 0; len < pq.size(); ++len) {
                const auto a = canonical_index(pq.prefix(len));
                if (!outputs[i].starts_with(outputs[a])) {
                    return MonotoneViolation{programs[a], pq, outputs[a], outputs[i]};
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace mdl
