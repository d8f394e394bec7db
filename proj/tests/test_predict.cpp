#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "mdl/complexity/complexity_table.hpp"
#include "mdl/core/errors.hpp"
#include "mdl/environments/environment.hpp"
#include "mdl/machines/reference_machine.hpp"
#include "mdl/predict/predictive_function.hpp"
#include "mdl/predict/predictor.hpp"
#include "mdl/predict/properties.hpp"

using namespace mdl;
using Q = ExactRational;

namespace {

TablePtr r_table(std::size_t l, std::size_t depth = 8) {
    static std::map<std::size_t, TablePtr> tables;
    auto& slot = tables[l * 100 + depth];
    if (!slot) {
        slot = std::make_shared<const ComplexityTable>(ComplexityTable::build(ReferenceMachine(), {l, 4096}, depth, 4));
    }
    return slot;
}

PosteriorVector pv(const Q& p0, const Q& p1) { return PosteriorVector{BinString(), {p0, p1}}; }

Q random_unit(std::mt19937_64& rng, long den = 60) { return Q(static_cast<long>(rng() % (den + 1)), den); }

LossMatrix random_loss(std::mt19937_64& rng) {
    const std::size_t actions = 2 + rng() % 3;
    std::vector<Q> r0, r1;
    for (std::size_t a = 0; a < actions; ++a) {
        r0.push_back(random_unit(rng, 12));
        r1.push_back(random_unit(rng, 12));
    }
    return LossMatrix(r0, r1);
}

}  // namespace

TEST_CASE("conditionals") {
    const auto m = m_from_table(r_table(12));
    for (const auto& x : all_strings_up_to(4)) {
        for (int a = 0; a < 2; ++a) {
            const auto c = conditional(m, x, a);
            CHECK(c <= Q(1));
            CHECK(c.dyadic_exponent().has_value());
        }
    }
    const auto zeros = as_predictive(constant_env(0));
    CHECK(conditional(zeros, BinString("00"), 0) == Q(1));
    CHECK(conditional(zeros, BinString("00"), 1) == Q(0));

    const PredictiveFunction b("custom", [](const BinString& x) { return x.str() == "0" ? Q(0) : Q(1, 2); });
    CHECK_THROWS_AS(conditional(b, BinString("0"), 1), UndefinedConditional);
    CHECK(conditional(b, BinString("1"), 1) == Q(1));
}

TEST_CASE("normalization") {
    // A measure keeps its posteriors.
    const auto mu = as_predictive(bernoulli_env(Q(3, 8)));
    const auto mu_norm = normalize(mu);
    for (const auto& x : all_strings_up_to(5)) {
        for (int a = 0; a < 2; ++a) CHECK(conditional(mu_norm, x, a) == conditional(mu, x, a));
        CHECK(mu_norm(x) == mu(x));
    }

    // Normalized m posteriors are 1/(1+2^z) or the 1/2 convention.
    const auto m = m_from_table(r_table(12));
    const auto mn = normalize(m);
    for (const auto& x : all_strings_up_to(5)) {
        const auto p = conditional(mn, x, 0);
        const auto odds = Q(1) / p - Q(1);
        CHECK((odds.dyadic_exponent().has_value() || (Q(1) / odds).dyadic_exponent().has_value()));
        CHECK(mn(x.with(0)) + mn(x.with(1)) == mn(x));
    }
    CHECK(mn(BinString()) == Q(1));

    // Zero denominators fall back to 1/2.
    const PredictiveFunction z("zero", [](const BinString& x) { return x.empty() ? Q(1) : Q(0); });
    CHECK(conditional(normalize(z), BinString(), 1) == Q(1, 2));
    CHECK(normalize(z)(BinString("101")) == Q(1, 8));
}

TEST_CASE("normalization factor") {
    const auto big = bigM_from_table(r_table(14));
    const auto bn = normalize(big);
    for (const auto& x : all_strings_up_to(6)) {
        const auto d = normalization_factor(big, x);
        CHECK(d >= Q(1));  // M is a semimeasure
        for (int a = 0; a < 2; ++a) CHECK(bn(x.with(a)) == d * big(x.with(a)));
    }
    const PredictiveFunction z("zero", [](const BinString& x) { return x.empty() ? Q(1) : Q(0); });
    CHECK_THROWS_AS(normalization_factor(z, BinString()), UndefinedConditional);
}

TEST_CASE("act and expected loss") {
    const auto three = LossMatrix::three_action(Q(3, 8));
    CHECK(act(three, pv(Q(3, 5), Q(2, 5))) == 1);
    CHECK(act(three, pv(Q(2, 3), Q(1, 3))) == 0);
    CHECK(act(LossMatrix::error_loss(), pv(Q(1, 4), Q(3, 4))) == 1);
    CHECK(act(LossMatrix::error_loss(), pv(Q(1, 2), Q(1, 2))) == 0);
    CHECK(act_set(LossMatrix::error_loss(), pv(Q(1, 2), Q(1, 2))) == std::vector<std::size_t>{0, 1});
    CHECK_THROWS(act(three, pv(Q(0), Q(0))));
    CHECK_THROWS(act(three, pv(Q(-1, 2), Q(1))));

    const auto mu = pv(Q(3, 5), Q(2, 5));
    CHECK(expected_loss(mu, three, 1) == Q(3, 8));
    CHECK(expected_loss(mu, three, 0) == Q(2, 5));
    CHECK(expected_loss(mu, three, 2) == Q(2, 5));
    CHECK_THROWS(expected_loss(pv(Q(1, 2), Q(1, 4)), three, 0));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto loss = random_loss(rng);
        for (std::size_t y = 0; y < loss.num_actions(); ++y) CHECK(expected_loss(pv(Q(1), Q(0)), loss, y) == loss.at(0, y));
    }
}

TEST_CASE("act is scale invariant and Lambda_mu is optimal") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const auto loss = random_loss(rng);
        auto p1 = random_unit(rng);
        const auto post = pv(Q(1) - p1, p1);
        const Q c(static_cast<long>(1 + rng() % 50), static_cast<long>(1 + rng() % 50));
        const auto y = act(loss, post);
        CHECK(act(loss, pv(post[0] * c, post[1] * c)) == y);
        for (std::size_t other = 0; other < loss.num_actions(); ++other) {
            CHECK(expected_loss(post, loss, y) <= expected_loss(post, loss, other));
        }
        const auto set = act_set(loss, post);
        CHECK(std::find(set.begin(), set.end(), y) != set.end());
        CHECK(set.front() == y);
    }
}

TEST_CASE("gamma threshold") {
    CHECK(gamma_threshold(LossMatrix::error_loss()) == Q(1, 2));
    CHECK(gamma_threshold(LossMatrix({Q(0), Q(1, 2)}, {Q(1), Q(0)})) == Q(1, 3));
    CHECK_THROWS_AS(gamma_threshold(LossMatrix({Q(1, 2), Q(1, 2)}, {Q(1, 2), Q(1, 2)})), std::domain_error);
    CHECK_THROWS(gamma_threshold(LossMatrix::three_action(Q(3, 8))));

    std::mt19937_64 rng(99);
    int tested = 0;
    while (tested < 1000) {
        const LossMatrix loss({random_unit(rng, 10), random_unit(rng, 10)}, {random_unit(rng, 10), random_unit(rng, 10)});
        Q g;
        try {
            g = gamma_threshold(loss);
        } catch (const std::domain_error&) {
            continue;
        }
        ++tested;
        const auto p1 = random_unit(rng, 97);
        const auto y = act(loss, pv(Q(1) - p1, p1));
        if (p1 > g) CHECK(y == 1);
        if (p1 < g) CHECK(y == 0);
    }
}

TEST_CASE("MDL equivalence under error loss") {
    const auto table = r_table(12);
    const auto contexts = all_strings_up_to(4);
    CHECK(mdl_equivalence_check(*table, contexts));
    const auto report = mdl_equivalence_report(*table, {BinString()});
    REQUIRE(report.size() == 1);
    // Km(0) = Km(1) = 2: the tie resolves to action 0 on every route.
    CHECK(table->km(BinString("0")) == table->km(BinString("1")));
    CHECK(report[0].by_posterior == 0);
    CHECK(report[0].by_joint == 0);
    CHECK(report[0].by_complexity == 0);
    CHECK(report[0].agree());
}

TEST_CASE("property suites") {
    const auto m = m_from_table(r_table(14));
    const auto rep = property_suite(m, 6);
    CHECK(rep.monotonicity_violations.empty());
    CHECK(rep.monotone());

    const auto big = bigM_from_table(r_table(14));
    const auto brep = property_suite(big, 6);
    CHECK(brep.semimeasure());
    CHECK(brep.semimeasure_violations.empty());
    CHECK_FALSE(brep.measure());

    const auto nrep = property_suite(normalize(m), 6);
    CHECK(nrep.measure());

    const auto x = BinString::zeros(16);
    const auto km = r_table(14)->km(x);
    const auto srep = property_suite(m, 0, x, km);
    REQUIRE(srep.sequence);
    CHECK(srep.sequence->within_bound());

    // A function that is not monotone.
    const PredictiveFunction bad("bad", [](const BinString& x) { return x.size() == 1 ? Q(2) : Q(1); });
    const auto badrep = property_suite(bad, 2);
    CHECK_FALSE(badrep.monotone());
    CHECK(badrep.monotonicity_violations.size() == 2);
    CHECK_FALSE(badrep.semimeasure());
}

TEST_CASE("censored values are never counted as certain") {
    // At L=6 most length-5 strings have no program; the suite must not call
    // m a measure, and semimeasure checks there are undetermined, not violated.
    const auto m = m_from_table(r_table(6, 6));
    const auto rep = property_suite(m, 5);
    CHECK(rep.monotone() == false);
    CHECK(rep.monotonicity_violations.empty());
    CHECK(rep.monotonicity_undetermined > 0);
    CHECK_FALSE(rep.measure());
}

TEST_CASE("deviation sums") {
    const auto m = m_from_table(r_table(14));
    const auto x = BinString::zeros(16);
    const auto km = r_table(14)->km(x);
    REQUIRE(km.finite());
    const auto dev = deviation_sums(m, x);
    CHECK(Q(2) * dev.onseq <= Q(static_cast<long>(km.value())));
    CHECK(dev.count <= km.value());
    CHECK(dev.offseq_upper <= Q::pow2(km.value()));
    CHECK(dev.offseq <= dev.offseq_upper);
    CHECK(dev.steps.size() == 16);

    const auto truth = as_predictive(constant_env(0));
    const auto exact = deviation_sums(truth, x);
    CHECK(exact.onseq == Q(0));
    CHECK(exact.count == 0);
    CHECK(exact.offseq == Q(0));

    try {
        deviation_sums(truth, BinString("0010"));
        FAIL("expected an undefined conditional");
    } catch (const UndefinedConditional& e) {
        CHECK(std::string(e.what()).find("t=4") != std::string::npos);
    }
}

TEST_CASE("self-optimizing bound") {
    const auto three = LossMatrix::three_action(Q(3, 8));
    const auto mu = pv(Q(3, 5), Q(2, 5));
    const auto same = self_opt_bound(mu, mu, three);
    CHECK(same.gap == Q(0));
    CHECK(same.bound == Q(0));
    CHECK(same.holds());

    const auto c = self_opt_bound(pv(Q(2, 3), Q(1, 3)), mu, three);
    CHECK(c.gap == Q(1, 40));
    CHECK(c.bound == Q(2, 15));
    CHECK(c.holds());

    std::mt19937_64 rng(1234);
    for (int i = 0; i < 1000; ++i) {
        const auto loss = random_loss(rng);
        const auto b1 = random_unit(rng, 97);
        const auto m1 = random_unit(rng, 89);
        CHECK(self_opt_bound_check(pv(Q(1) - b1, b1), pv(Q(1) - m1, m1), loss));
    }
}

TEST_CASE("loss traces") {
    const auto mu = as_predictive(bernoulli_env(Q(2, 5)));
    const auto b = as_predictive(bernoulli_env(Q(1, 3)));
    const auto trace = loss_trace(b, mu, LossMatrix::three_action(Q(3, 8)), BinString("0110"));
    REQUIRE(trace.size() == 4);
    for (const auto& r : trace) {
        CHECK(r.action_b == 0);
        CHECK(r.action_mu == 1);
        CHECK(r.loss_mu <= r.loss_b);
        REQUIRE(r.ratio);
        CHECK(*r.ratio == Q(16, 15));
    }
    CHECK(trace[2].t == 3);
    CHECK(trace[2].context == BinString("01"));
}
