#include "mdl/complexity/table_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "mdl/core/errors.hpp"

namespace mdl {

namespace {

constexpr const char* kMagic = "mdl-lab-cache v1";

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return out;
}

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) throw CacheError("bad " + what + ": '" + text + "'");
    return v;
}

std::string field(const std::string& token, const std::string& key) {
    const std::string prefix = key + "=";
    if (token.rfind(prefix, 0) != 0) throw CacheError("expected '" + prefix + "...' in header, got '" + token + "'");
    return token.substr(prefix.size());
}

}  // namespace

void table_save(const ComplexityTable& table, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + path.string());
    out << kMagic << "\tmachine=" << table.descriptor() << "\tL=" << table.budget().max_length
        << "\tS=" << table.budget().steps << "\tdepth=" << table.depth() << '\n';
    for (const auto& r : table.records()) {
        out << r.program << '\t' << r.output << '\t' << r.consumed << '\t' << (r.halted ? 1 : 0) << '\t' << r.steps
            << '\n';
    }
    if (!out) throw CacheError("write failed for " + path.string());
}

ComplexityTable table_load(const std::filesystem::path& path, const std::optional<CacheKey>& expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw CacheError("empty cache file " + path.string());
    const auto head = split_tabs(line);
    if (head.size() != 5 || head[0] != kMagic) throw CacheError("bad cache header in " + path.string());
    const std::string descriptor = field(head[1], "machine");
    EnumerationBudget budget{parse_uint(field(head[2], "L"), "L"), parse_uint(field(head[3], "S"), "S")};
    const std::size_t depth = parse_uint(field(head[4], "depth"), "depth");
    if (expected) {
        if (expected->descriptor != descriptor) {
            throw CacheError("cache machine mismatch: file has '" + descriptor + "', expected '" +
                             expected->descriptor + "'");
        }
        if (!(expected->budget == budget)) throw CacheError("cache budget mismatch in " + path.string());
    }
    try {
        validate(budget);
    } catch (const std::invalid_argument& e) {
        throw CacheError(std::string("cache budget invalid: ") + e.what());
    }

    std::vector<ProgramRecord> records;
    records.reserve((std::size_t{1} << (budget.max_length + 1)) - 1);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto f = split_tabs(line);
        if (f.size() != 5) throw CacheError("line " + std::to_string(lineno) + ": expected 5 fields");
        try {
            ProgramRecord r;
            r.program = BinString(f[0]);
            r.output = BinString(f[1]);
            r.consumed = parse_uint(f[2], "consumed");
            const auto halted = parse_uint(f[3], "halted");
            if (halted > 1) throw CacheError("bad halted flag");
            r.halted = halted == 1;
            r.steps = parse_uint(f[4], "steps");
            r.exhausted = r.steps > budget.steps;
            if (r.consumed > r.program.size()) throw CacheError("consumed exceeds program length");
            if (r.steps > budget.steps + 1) throw CacheError("steps exceed budget");
            records.push_back(std::move(r));
        } catch (const std::invalid_argument& e) {
            throw CacheError("line " + std::to_string(lineno) + ": " + e.what());
        } catch (const CacheError& e) {
            throw CacheError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    try {
        return ComplexityTable(descriptor, budget, depth, std::move(records));
    } catch (const std::invalid_argument& e) {
        throw CacheError(std::string("corrupt cache: ") + e.what());
    }
}

void table_export_csv(const ComplexityTable& table, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "x,km,k,bigM_num,bigM_den,budget_L,budget_S\n";
    for (const auto& e : table.entries()) {
        out << (e.x.empty() ? std::string("eps") : e.x.str()) << ',' << e.km.str() << ',' << e.k.str() << ',' << e.bigM.numerator() << ','
            << e.bigM.denominator() << ',' << table.budget().max_length << ',' << table.budget().steps << '\n';
    }
}

std::filesystem::path TableCache::path_for(const std::string& descriptor, EnumerationBudget budget) const {
    std::string name;
    for (char c : descriptor) name += (c == ':' || c == '=' || c == '/') ? '_' : c;
    return dir_ / (name + "_L" + std::to_string(budget.max_length) + "_S" + std::to_string(budget.steps) + ".tsv");
}

ComplexityTable TableCache::get(const MonotoneMachine& machine, EnumerationBudget budget, std::size_t depth,
                                unsigned threads) {
    const auto path = path_for(machine.descriptor(), budget);
    if (std::filesystem::exists(path)) {
        auto loaded = table_load(path, CacheKey{machine.descriptor(), budget});
        ++hits_;
        if (loaded.depth() == depth) return loaded;
        return ComplexityTable(loaded.descriptor(), loaded.budget(), depth, loaded.records());
    }
    auto table = ComplexityTable::build(machine, budget, depth, threads);
    ++builds_;
    table_save(table, path);
    return table;
}

}  // namespace mdl
