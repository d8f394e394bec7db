#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "mdl/experiments/experiments.hpp"

namespace mdl {

/// Minimal CSV writer; quotes a field only when it contains a comma, quote or newline.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& fields);

private:
    std::ofstream out_;
    std::size_t columns_;
};

/// Empty strings render as "eps" so rows never have a blank key.
std::string csv_string(const BinString& x);

void write_manifest(const ExperimentConfig& config, const std::filesystem::path& path);
/// Columns: experiment, pass, witness_name, witness_value, paper_anchor.
void write_verdicts(const std::vector<Verdict>& verdicts, const std::filesystem::path& path);

}  // namespace mdl
