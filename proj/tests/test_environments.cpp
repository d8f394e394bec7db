#include <doctest.h>

#include <algorithm>
#include <map>

#include "mdl/complexity/complexity_table.hpp"
#include "mdl/core/errors.hpp"
#include "mdl/environments/environment.hpp"
#include "mdl/environments/sampling.hpp"
#include "mdl/machines/block_machine.hpp"
#include "mdl/machines/reference_machine.hpp"

using namespace mdl;
using Q = ExactRational;

namespace {

TablePtr r_table(std::size_t l) {
    static std::map<std::size_t, TablePtr> tables;
    auto& slot = tables[l];
    if (!slot) slot = std::make_shared<const ComplexityTable>(ComplexityTable::build(ReferenceMachine(), {l, 4096}, 8, 4));
    return slot;
}

}  // namespace

TEST_CASE("bernoulli environments") {
    const auto b = bernoulli_env(Q(3, 8));
    for (const auto& x : all_strings_up_to(6)) CHECK(b.conditional(x, 1) == Q(3, 8));
    CHECK(bernoulli_env(Q(5, 12)).conditional(BinString("0110"), 1) == Q(5, 12));
    CHECK(b.prob(BinString("101")) == Q(3, 8) * Q(5, 8) * Q(3, 8));
    const auto ones = bernoulli_env(Q(1));
    CHECK(ones.prob(BinString("1111")) == Q(1));
    CHECK(ones.prob(BinString("1101")) == Q(0));
    CHECK_THROWS_AS(ones.conditional(BinString("0"), 1), UndefinedConditional);
    CHECK_THROWS(bernoulli_env(Q(-1, 8)));
    CHECK_THROWS(bernoulli_env(Q(9, 8)));
}

TEST_CASE("block environments") {
    const auto e = block_env(2);
    CHECK(e.prob(BinString("000")) == Q(1, 4));
    CHECK(e.prob(BinString("100")) == Q(0));
    for (const auto& a : all_strings_up_to(6)) {
        if (a.size() % 3 != 0) continue;
        if (e.prob(a).is_zero()) continue;
        CHECK(e.conditional(a, 1) == Q(3, 4));
        CHECK(e.conditional(a, 0) == Q(1, 4));
    }
    // Marginals agree with the uniform law on A, block by block.
    for (std::size_t s : {2, 3}) {
        const auto env = block_env(s);
        const auto alphabet = block_alphabet(s);
        for (const auto& a : all_strings(s + 1)) {
            const bool member = std::find(alphabet.begin(), alphabet.end(), a) != alphabet.end();
            CHECK(env.prob(a) == (member ? Q::dyadic(s) : Q(0)));
            CHECK(env.prob(alphabet[1] + a) == (member ? Q::dyadic(2 * s) : Q(0)));
        }
    }
    CHECK_THROWS(block_env(1));
}

TEST_CASE("deterministic environments") {
    CHECK(constant_env(0).prob(BinString("000")) == Q(1));
    CHECK(alternating_env().prob(BinString("0101")) == Q(1));
    CHECK(alternating_env().prob(BinString("00")) == Q(0));
    CHECK(deterministic_sequence(alternating_env(), 5).str() == "01010");
    const auto prog = program_env(BinString("0101001000111"));
    CHECK(prog.max_length() == 24);
    CHECK(deterministic_sequence(prog, 24) == BinString::repeat("110", 8));
    CHECK_THROWS_AS(prog.prob(BinString::zeros(25)), std::out_of_range);
}

TEST_CASE("every environment is an exact measure") {
    const std::vector<Environment> envs{bernoulli_env(Q(3, 8)), bernoulli_env(Q(0)), block_env(2), block_env(3),
                                        constant_env(0),        constant_env(1),     alternating_env(),
                                        product_env({Q(1, 3), Q(3, 4), Q(1)}), program_env(BinString("0101001000111"))};
    for (const auto& env : envs) {
        INFO(env.descriptor());
        CHECK_FALSE(find_measure_violation(env, 12).has_value());
    }
    const Environment broken("broken", EnvironmentKind::product,
                             [](const BinString& x) { return x.size() == 2 ? Q(1, 8) : Q::dyadic(x.size()); },
                             [](const BinString&, int) { return Q(1, 2); });
    CHECK(find_measure_violation(broken, 4) == BinString("0"));
}

TEST_CASE("environment descriptors") {
    CHECK(make_environment("det:zeros").prob(BinString("00")) == Q(1));
    CHECK(make_environment("det:ones").prob(BinString("11")) == Q(1));
    CHECK(make_environment("det:alt").prob(BinString("01")) == Q(1));
    CHECK(make_environment("det:prog=0101001000111").max_length() == 24);
    CHECK(make_environment("bern:3/8").conditional(BinString(), 1) == Q(3, 8));
    CHECK(make_environment("block:s=2").prob(BinString("101")) == Q(1, 4));
    CHECK_THROWS(make_environment("bern:9/8"));
    CHECK_THROWS(make_environment("geo:1/2"));
    CHECK_THROWS(make_environment("block:s=x"));
}

TEST_CASE("counter stream") {
    // First SplitMix64 output for seed 0.
    CHECK(CounterStream(0).at(0) == 0xE220A8397B1DCDAFULL);
    CHECK(CounterStream(42).at(7) == CounterStream(42).at(7));
    CHECK(CounterStream(42).at(7) != CounterStream(43).at(7));
}

TEST_CASE("sampling") {
    CHECK(sample(constant_env(1), 10, 1) == BinString("1111111111"));
    CHECK(sample(alternating_env(), 6, 99) == BinString("010101"));
    const auto half = bernoulli_env(Q(1, 2));
    CHECK(sample(half, 16, 7) == sample(half, 16, 7));
    CHECK(sample(half, 16, 7) != sample(half, 16, 8));
    CHECK(sample(half, 32, 7).prefix(16) == sample(half, 16, 7));

    const auto b = bernoulli_env(Q(3, 8));
    // sd of one frequency is about 0.0048; per seed allow 4 sd, pooled 0.01.
    double pooled = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto x = sample(b, 10000, seed);
        const double freq = static_cast<double>(x.count_ones()) / 10000.0;
        CHECK(freq >= 0.355);
        CHECK(freq <= 0.395);
        pooled += freq / 5;
    }
    CHECK(pooled >= 0.365);
    CHECK(pooled <= 0.385);
    // Block samples stay inside A.
    const auto blocks = sample(block_env(3), 40, 5);
    for (std::size_t i = 0; i < 40; i += 4) CHECK(in_block_alphabet(3, blocks.substr(i, 4)));
}

TEST_CASE("i.m.s. sums") {
    const auto b38 = bernoulli_env(Q(3, 8));
    CHECK(ims_sum(as_predictive(b38), b38, 10) == Q(0));
    const auto trace0 = ims_trace(as_predictive(b38), b38, 6);
    for (const auto& v : trace0) CHECK(v == Q(0));

    // Two Bernoulli laws: every context adds 2 (theta - theta')^2.
    const auto other = as_predictive(bernoulli_env(Q(1, 2)));
    CHECK(ims_sum(other, b38, 7) == Q(7) * Q(2) * Q(1, 64));

    // m_norm keeps its distance: at least 2 gap^2 per step.
    const auto mn = normalize(m_from_table(r_table(14)));
    const auto b512 = bernoulli_env(Q(5, 12));
    const auto t512 = ims_trace(mn, b512, 8);
    const auto t38 = ims_trace(mn, b38, 8);
    for (std::size_t t = 0; t < 8; ++t) {
        CHECK(t512[t] >= Q(static_cast<long>(t + 1)) * Q(2, 144));
        CHECK(t38[t] >= Q(static_cast<long>(t + 1)) * Q(2, 576));
    }

    // M_norm on the zero sequence: increments shrink.
    const auto bn = normalize(bigM_from_table(r_table(14)));
    const auto tz = ims_trace(bn, constant_env(0), 12);
    CHECK(tz[11] - tz[5] < tz[5]);

    CHECK_THROWS_AS(ims_sum(mn, b38, 21), std::invalid_argument);
    const PredictiveFunction zero("zero", [](const BinString& x) { return x.size() >= 2 ? Q(0) : Q(1, 2); });
    try {
        ims_sum(zero, b38, 4);
        FAIL("expected an undefined conditional");
    } catch (const UndefinedConditional& e) {
        CHECK(std::string(e.what()).find("zero") != std::string::npos);
    }

    const auto est = ims_sum_sampled(other, b38, 7, 1, 8);
    CHECK(est.seeds == 8);
    CHECK(est.mean == Q(7) * Q(2) * Q(1, 64));  // same gap on every path
    CHECK(est.trace.size() == 7);
    CHECK_THROWS(ims_sum_sampled(other, b38, 7, 1, 0));
}
