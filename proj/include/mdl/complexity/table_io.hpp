#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "mdl/complexity/complexity_table.hpp"

namespace mdl {

// Cache file format (line-oriented, tab-separated):
//   header:  "mdl-lab-cache v1" TAB "machine=<descriptor>" TAB "L=<n>" TAB "S=<n>" TAB "depth=<n>"
//   records: program TAB output TAB consumed TAB halted(0|1) TAB steps
// Records appear in canonical program order. An exhausted run has steps = S+1.

void table_save(const ComplexityTable& table, const std::filesystem::path& path);

struct CacheKey {
    std::string descriptor;
    EnumerationBudget budget;
};

/// Throws CacheError on a corrupt file or when `expected` is given and the
/// header does not match it.
ComplexityTable table_load(const std::filesystem::path& path, const std::optional<CacheKey>& expected = std::nullopt);

/// CSV with columns x, km, k, bigM_num, bigM_den, budget_L, budget_S; the empty string is written as "eps".
void table_export_csv(const ComplexityTable& table, const std::filesystem::path& path);

/// Directory of cache files keyed by (machine descriptor, L, S).
class TableCache {
public:
    explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// Loads the cached records if present, otherwise enumerates and saves.
    /// The trie depth is not part of the key; it is rebuilt as requested.
    ComplexityTable get(const MonotoneMachine& machine, EnumerationBudget budget, std::size_t depth,
                        unsigned threads = 1);

    std::filesystem::path path_for(const std::string& descriptor, EnumerationBudget budget) const;

    std::size_t hits() const noexcept { return hits_; }
    std::size_t builds() const noexcept { return builds_; }

private:
    std::filesystem::path dir_;
    std::size_t hits_ = 0;
    std::size_t builds_ = 0;
};

}  // namespace mdl
