#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mdl/complexity/complexity_table.hpp"
#include "mdl/core/loss_matrix.hpp"
#include "mdl/core/rational.hpp"
#include "mdl/predict/predictive_function.hpp"

namespace mdl {

struct ExperimentConfig {
    std::string id = "all";
    std::string machine = "R";
    EnumerationBudget budget{14, 4096};
    /// Unset: each experiment uses its own default horizon.
    std::optional<std::size_t> horizon;
    std::size_t s = 6;
    ExactRational eps = ExactRational(1, 24);
    std::uint64_t seed = 1;
    std::size_t seeds = 8;
    std::filesystem::path out = "mdl-out";
    std::optional<std::filesystem::path> cache;
    unsigned threads = 1;

    std::size_t horizon_or(std::size_t fallback) const { return horizon.value_or(fallback); }
};

/// Throws std::invalid_argument on an unusable configuration.
void validate(const ExperimentConfig& config);

struct Witness {
    std::string name;
    ExactRational value;
    std::string anchor;  // the claim this value stands for
};

struct Verdict {
    std::string experiment;
    bool pass = false;
    std::vector<Witness> witnesses;
    std::vector<std::filesystem::path> traces;  // relative to the output directory
    std::vector<std::string> notes;              // free text for the console
};

/// Shared source of complexity tables: memoized in memory and, with a cache
/// directory, on disk. Safe to use from several experiments at once.
class TableSource {
public:
    explicit TableSource(std::optional<std::filesystem::path> cache_dir = std::nullopt, unsigned threads = 1);

    TablePtr get(const std::string& machine, EnumerationBudget budget, std::size_t depth);

private:
    std::optional<std::filesystem::path> cache_dir_;
    unsigned threads_;
    std::mutex mutex_;
    std::map<std::tuple<std::string, std::size_t, StepBudget, std::size_t>, TablePtr> tables_;
};

/// Experiment ids, in the order `all` runs them.
const std::vector<std::string>& experiment_ids();

// Each experiment writes its traces under config.out / <id>.
Verdict exp_range_obstruction(const ExperimentConfig& config, TableSource& tables);
Verdict exp_loss_gap(const ExperimentConfig& config);
Verdict exp_block_machine(const ExperimentConfig& config, TableSource& tables,
                          const LossMatrix& loss = LossMatrix::error_loss());
Verdict exp_bounds(const ExperimentConfig& config, TableSource& tables);
Verdict exp_krels(const ExperimentConfig& config, TableSource& tables);
Verdict exp_M_convergence(const ExperimentConfig& config, TableSource& tables);

/// Runs one experiment by id ("all" is not accepted here).
Verdict run_experiment(std::string_view id, const ExperimentConfig& config, TableSource& tables);

/// Runs config.id ("all" or a single id), writes manifest.txt and
/// verdicts.csv, and returns the verdicts in run order.
std::vector<Verdict> run_suite(const ExperimentConfig& config);

/// The program-driven sequence: output of the reference machine on this program.
const BinString& program_driven_program();

/// Loss ratio (2/5) / l_x1 of the three-action construction for l_x1 = 1/3 + eps.
ExactRational loss_gap_ratio(const ExactRational& eps);

}  // namespace mdl
