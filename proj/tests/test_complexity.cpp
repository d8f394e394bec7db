#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "mdl/complexity/block_complexity.hpp"
#include "mdl/complexity/complexity_table.hpp"
#include "mdl/complexity/enumeration.hpp"
#include "mdl/complexity/table_io.hpp"
#include "mdl/core/errors.hpp"
#include "mdl/core/prefix_set.hpp"
#include "mdl/machines/block_machine.hpp"
#include "mdl/machines/reference_machine.hpp"
#include "oracles.hpp"

using namespace mdl;
using Q = ExactRational;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("mdl_lab_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Complexity as_complexity(std::optional<std::size_t> v) { return Complexity(v); }

}  // namespace

TEST_CASE("enumeration of the reference machine at L=2") {
    const auto records = enumerate(ReferenceMachine(), {2, 16});
    REQUIRE(records.size() == 7);  // the empty program plus 2 + 4
    CHECK(records[0].program.str() == "");
    CHECK(records[1].program.str() == "0");
    CHECK(records[1].output.str() == "");
    CHECK(records[2].program.str() == "1");
    CHECK(records[2].output.str() == "");
    CHECK(records[3].output.str() == "0");
    CHECK(records[4].output.str() == "1");
    CHECK(records[5].output.str() == "");
    CHECK_FALSE(records[5].halted);
    CHECK(records[6].output.str() == "");
    CHECK(records[6].halted);

    const auto empty = enumerate(ReferenceMachine(), {0, 1});
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].output.str() == "");

    CHECK(enumerate(ReferenceMachine(), {10, 256}) == enumerate(ReferenceMachine(), {10, 256}));
    CHECK(enumerate(ReferenceMachine(), {12, 256}, 1) == enumerate(ReferenceMachine(), {12, 256}, 5));
    CHECK_THROWS(validate(EnumerationBudget{31, 10}));
    CHECK_THROWS(validate(EnumerationBudget{4, 0}));
}

TEST_CASE("redundant records carry their consumed prefix") {
    const auto records = enumerate(ReferenceMachine(), {6, 64});
    for (const auto& r : records) {
        if (!r.redundant()) continue;
        const auto& canonical = records[canonical_index(r.program.prefix(r.consumed))];
        CHECK(canonical.output == r.output);
        CHECK(canonical.halted == r.halted);
    }
}

TEST_CASE("one-shot queries") {
    const ReferenceMachine r;
    CHECK(km_approx(BinString("0"), r, {8, 64}) == Complexity(2));
    CHECK(km_approx(BinString("0000"), r, {8, 64}) == Complexity(7));
    CHECK(km_approx(BinString(), r, {3, 64}) == Complexity(0));
    CHECK(k_approx(BinString("0"), r, {8, 64}) == Complexity(4));
    CHECK(k_approx(BinString(), r, {8, 64}) == Complexity(2));
    CHECK_FALSE(k_approx(BinString("0"), r, {1, 64}).finite());

    for (std::size_t l : {0, 3, 8}) CHECK(bigM_approx(BinString(), r, {l, 64}) == Q(1));
    const auto v = bigM_approx(BinString("0"), r, {8, 64});
    CHECK(v >= Q(1, 4));
    CHECK(v <= Q(1));
    CHECK(bigM_approx(BinString("01"), r, {10, 64}) >= bigM_approx(BinString("01"), r, {8, 64}));
}

TEST_CASE("table queries agree with a brute-force oracle") {
    struct Case {
        std::string descriptor;
        std::size_t l;
        StepBudget s;
    };
    for (const auto& c : {Case{"R", 10, 256}, Case{"R", 9, 6}, Case{"U:s=2", 9, 4096}, Case{"U:s=3", 10, 40}}) {
        INFO(c.descriptor << " L=" << c.l << " S=" << c.s);
        const auto machine = make_machine(c.descriptor);
        const oracle::Brute brute(
            [&](const std::string& p) {
                return c.descriptor == "R" ? oracle::run_r(p, c.s) : oracle::run_u(c.descriptor == "U:s=2" ? 2 : 3, p, c.s);
            },
            c.l);
        const auto table = ComplexityTable::build(*machine, {c.l, c.s}, 5, 3);
        for (const auto& x : oracle::strings_up_to(7)) {
            INFO("x=" << x);
            const BinString bx(x);
            CHECK(table.km(bx) == as_complexity(brute.km(x)));
            CHECK(table.k(bx) == as_complexity(brute.k(x)));
            CHECK(table.bigM(bx) == Q::scaled(brute.bigM_scaled(x, c.l), c.l));
            CHECK(as_complexity(scan_km(table.records(), bx)) == table.km(bx));
            CHECK(as_complexity(scan_k(table.records(), bx)) == table.k(bx));
            CHECK(scan_bigM(table.records(), bx) == table.bigM(bx));
        }
    }
}

TEST_CASE("table invariants on the reference machine") {
    const auto table = ComplexityTable::build(ReferenceMachine(), {14, 4096}, 8, 4);
    REQUIRE(table.saturated());
    const auto strings = all_strings_up_to(8);
    for (const auto& x : strings) {
        const auto km = table.km(x);
        const auto k = table.k(x);
        const auto m = table.bigM(x);
        CHECK(km <= k);
        if (km.finite()) {
            CHECK(m >= km.weight());
            CHECK(m <= Q(1));
        }
        if (x.size() < 8) {
            CHECK(table.bigM(x.with(0)) + table.bigM(x.with(1)) <= m);
            for (int a = 0; a < 2; ++a) CHECK(table.km(x.with(a)) >= km);
        }
    }
    const auto halting = table.halting_programs();
    CHECK(halting.is_prefix_free());
    CHECK(kraft_sum(halting) <= Q(1));
    const auto entries = table.entries();
    CHECK_FALSE(entries.empty());
    CHECK(entries.front().x == BinString());
}

TEST_CASE("budgets only ever lower complexities") {
    const ReferenceMachine r;
    const auto small = ComplexityTable::build(r, {9, 6}, 6);
    const auto more_l = ComplexityTable::build(r, {11, 6}, 6);
    const auto more_s = ComplexityTable::build(r, {9, 4096}, 6);
    for (const auto& x : all_strings_up_to(6)) {
        CHECK(more_l.km(x) <= small.km(x));
        CHECK(more_s.km(x) <= small.km(x));
        CHECK(more_l.k(x) <= small.k(x));
        CHECK(more_s.k(x) <= small.k(x));
    }
    CHECK_FALSE(small.saturated());
    CHECK(small.exhausted_runs() > 0);
}

TEST_CASE("analytic Km on the block machine") {
    const auto inner = ComplexityTable::build(ReferenceMachine(), {9, 4096}, 8);
    CHECK(km_block_exact(2, BinString("0000"), inner) == Complexity(5));
    CHECK(km_block_exact(2, BinString("0001"), inner) == Complexity(7));
    CHECK(km_block_one_branch(2, BinString()) == Complexity(0));
    CHECK_FALSE(km_block_one_branch(2, BinString("100")).finite());  // 100 is not in A
    CHECK_FALSE(km_block_one_branch(2, BinString("01")).finite());   // no block starts 01

    // For x in A^k, Km(x0) = len(c(x)) + s + 1 and Km(x1) = len(c(x)) + 2s + 1.
    for (std::size_t s : {2, 3, 4}) {
        for (const auto& z : all_strings_up_to(2 * s)) {
            if (z.size() % s != 0) continue;
            const auto x = decode_blocks(s, z);
            CHECK(km_block_one_branch(s, x.with(0)) == Complexity(z.size() + s + 1));
            CHECK(km_block_one_branch(s, x.with(1)) == Complexity(z.size() + 2 * s + 1));
        }
    }
}

TEST_CASE("analytic Km matches enumeration on U_2") {
    const auto direct = ComplexityTable::build(BlockMachine(2), {9, 4096}, 8, 4);
    const auto inner = ComplexityTable::build(ReferenceMachine(), {9, 4096}, 8);
    for (const auto& x : all_strings_up_to(8)) {
        INFO("x=" << x);
        const auto e = direct.km(x);
        const auto b = km_block_bounds(2, x, inner);
        CHECK(b.lower <= b.upper);
        if (e.finite()) {
            CHECK(b.exact());
            CHECK(b.lower == e);
        } else {
            CHECK((!b.lower.finite() || b.lower.value() > 9));
        }
    }
}

TEST_CASE("analytic Km refuses when the inner table is too small") {
    const auto inner = ComplexityTable::build(ReferenceMachine(), {8, 4096}, 8);
    // x in A^4 then 1 at s=6: the 1-branch costs 37 bits, the 0-branch at least 2+18+9.
    const auto x = decode_blocks(6, BinString("101101110001011010100110")).with(1);
    CHECK_THROWS_AS(km_block_exact(6, x, inner), BudgetInsufficient);
    const auto big = ComplexityTable::build(ReferenceMachine(), {17, 4096}, 8, 4);
    CHECK(km_block_exact(6, x, big) == Complexity(37));
}

TEST_CASE("cache round trip and errors") {
    const auto dir = scratch("cache");
    const auto table = ComplexityTable::build(ReferenceMachine(), {10, 512}, 4);
    table_save(table, dir / "t.tsv");
    const auto loaded = table_load(dir / "t.tsv");
    CHECK(loaded == table);
    CHECK(table_load(dir / "t.tsv", CacheKey{"R", {10, 512}}) == table);
    CHECK_THROWS_AS(table_load(dir / "t.tsv", CacheKey{"U:s=2:inner=R", {10, 512}}), CacheError);
    CHECK_THROWS_AS(table_load(dir / "t.tsv", CacheKey{"R", {10, 513}}), CacheError);
    CHECK_THROWS_AS(table_load(dir / "missing.tsv"), CacheError);

    {
        std::ifstream in(dir / "t.tsv");
        std::string header, line;
        std::getline(in, header);
        std::getline(in, line);
        std::ofstream out(dir / "bad.tsv");
        out << header << '\n' << line << "\textra\n";
    }
    CHECK_THROWS_AS(table_load(dir / "bad.tsv"), CacheError);
    {
        std::ofstream out(dir / "short.tsv");
        std::ifstream in(dir / "t.tsv");
        std::string header;
        std::getline(in, header);
        out << header << '\n';
    }
    CHECK_THROWS(table_load(dir / "short.tsv"));

    TableCache cache(dir / "cache");
    const auto a = cache.get(ReferenceMachine(), {10, 512}, 4);
    CHECK(cache.builds() == 1);
    CHECK(cache.hits() == 0);
    const auto b = cache.get(ReferenceMachine(), {10, 512}, 6);
    CHECK(cache.builds() == 1);
    CHECK(cache.hits() == 1);
    CHECK(a.records() == b.records());
    CHECK(b.depth() == 6);
    CHECK(fs::exists(cache.path_for("R", {10, 512})));
}

TEST_CASE("CSV export") {
    const auto dir = scratch("csv");
    const auto table = ComplexityTable::build(ReferenceMachine(), {10, 4096}, 3);
    table_export_csv(table, dir / "t.csv");
    std::ifstream in(dir / "t.csv");
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "x,km,k,bigM_num,bigM_den,budget_L,budget_S");
    CHECK(first == "eps,0,2,1,1,10,4096");
}
