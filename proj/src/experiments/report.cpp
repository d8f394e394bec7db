#include "mdl/experiments/report.hpp"

#include <stdexcept>

namespace mdl {

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_) throw std::logic_error("CsvWriter: wrong number of fields");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        const auto& f = fields[i];
        if (f.find_first_of(",\"\n") == std::string::npos) {
            out_ << f;
            continue;
        }
        out_ << '"';
        for (char c : f) out_ << (c == '"' ? "\"\"" : std::string(1, c));
        out_ << '"';
    }
    out_ << '\n';
}

std::string csv_string(const BinString& x) { return x.empty() ? "eps" : x.str(); }

void write_manifest(const ExperimentConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "experiment=" << config.id << '\n'
        << "machine=" << config.machine << '\n'
        << "budget_L=" << config.budget.max_length << '\n'
        << "budget_S=" << config.budget.steps << '\n'
        << "horizon=" << (config.horizon ? std::to_string(*config.horizon) : "default") << '\n'
        << "horizon_defaults=range-obstruction:8,krels:6,bounds:32,block-machine:32,m-convergence:8\n"
        << "s=" << config.s << '\n'
        << "eps=" << config.eps.str() << '\n'
        << "seed=" << config.seed << '\n'
        << "seeds=" << config.seeds << '\n'
        << "threads=" << config.threads << '\n'
        << "cache=" << (config.cache ? config.cache->string() : "none") << '\n'
        << "out=" << config.out.string() << '\n'
        << "rng=splitmix64-counter: u_k = mix64(seed + (k+1)*0x9E3779B97F4A7C15)\n"
        << "sampling=bit t is 0 iff u_t/2^64 < mu(0|x_<t), exact\n"
        << "shannon_fano_samples=200\n"
        << "shannon_fano_tolerance=one-sided, frequency >= 1-2^-s - 2^-s\n";
}

void write_verdicts(const std::vector<Verdict>& verdicts, const std::filesystem::path& path) {
    CsvWriter csv(path, {"experiment", "pass", "witness_name", "witness_value", "paper_anchor"});
    for (const auto& v : verdicts) {
        for (const auto& w : v.witnesses) {
            csv.row({v.experiment, v.pass ? "1" : "0", w.name, w.value.str(), w.anchor});
        }
    }
}

}  // namespace mdl
