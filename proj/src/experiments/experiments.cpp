#include "mdl/experiments/experiments.hpp"

#include <algorithm>
#include <stdexcept>

#include "mdl/complexity/block_complexity.hpp"
#include "mdl/complexity/table_io.hpp"
#include "mdl/core/errors.hpp"
#include "mdl/environments/environment.hpp"
#include "mdl/environments/sampling.hpp"
#include "mdl/experiments/report.hpp"
#include "mdl/machines/block_machine.hpp"
#include "mdl/machines/machine.hpp"
#include "mdl/predict/predictor.hpp"
#include "mdl/predict/properties.hpp"

namespace mdl {

namespace fs = std::filesystem;

void validate(const ExperimentConfig& config) {
    validate(config.budget);
    make_machine(config.machine);
    if (config.s < 2) throw std::invalid_argument("s must be at least 2");
    if (config.eps.sign() < 0 || config.eps >= ExactRational(1, 15)) {
        throw std::invalid_argument("eps must lie in [0, 1/15), got " + config.eps.str());
    }
    if (config.horizon && *config.horizon == 0) throw std::invalid_argument("horizon must be positive");
    if (config.seeds == 0) throw std::invalid_argument("seeds must be positive");
    if (config.threads == 0) throw std::invalid_argument("threads must be positive");
    if (config.id != "all") {
        const auto& ids = experiment_ids();
        if (std::find(ids.begin(), ids.end(), config.id) == ids.end()) {
            throw std::invalid_argument("unknown experiment id: " + config.id);
        }
    }
}

const std::vector<std::string>& experiment_ids() {
    static const std::vector<std::string> ids{"loss-gap", "range-obstruction", "krels",
                                              "bounds",   "block-machine",     "m-convergence"};
    return ids;
}

TableSource::TableSource(std::optional<fs::path> cache_dir, unsigned threads)
    : cache_dir_(std::move(cache_dir)), threads_(threads) {}

TablePtr TableSource::get(const std::string& machine, EnumerationBudget budget, std::size_t depth) {
    const auto m = make_machine(machine);
    const auto key = std::make_tuple(m->descriptor(), budget.max_length, budget.steps, depth);
    std::lock_guard lock(mutex_);
    if (auto it = tables_.find(key); it != tables_.end()) return it->second;
    TablePtr table;
    if (cache_dir_) {
        TableCache cache(*cache_dir_);
        table = std::make_shared<const ComplexityTable>(cache.get(*m, budget, depth, threads_));
    } else {
        table = std::make_shared<const ComplexityTable>(ComplexityTable::build(*m, budget, depth, threads_));
    }
    tables_.emplace(key, table);
    return table;
}

namespace {

fs::path trace_dir(const ExperimentConfig& config, const std::string& id) {
    const auto dir = config.out / id;
    fs::create_directories(dir);
    return dir;
}

std::string yes_no(bool b) { return b ? "1" : "0"; }

ExactRational count(std::size_t n) { return ExactRational(static_cast<long>(n)); }

// r = 2^z for some integer z.
bool is_power_of_two(const ExactRational& r) {
    if (r.sign() <= 0) return false;
    const auto& q = r.raw();
    auto pow2 = [](const mpz_class& v) { return v > 0 && (v & (v - 1)) == 0; };
    return (q.get_num() == 1 && pow2(q.get_den())) || (q.get_den() == 1 && pow2(q.get_num()));
}

// ---------------------------------------------------------------- range

struct RangeScan {
    std::size_t raw_checked = 0;
    std::size_t raw_censored = 0;
    std::size_t raw_out_of_range = 0;
    std::optional<ExactRational> raw_min_gap;
    std::size_t norm_checked = 0;
    std::size_t norm_censored = 0;
    std::size_t norm_out_of_range = 0;
    std::optional<ExactRational> norm_min_gap;

    bool clean() const { return raw_out_of_range == 0 && norm_out_of_range == 0; }
};

void keep_min(std::optional<ExactRational>& slot, const ExactRational& v) {
    if (!slot || v < *slot) slot = v;
}

RangeScan scan_range(const TablePtr& table, std::size_t n, const ExactRational& raw_target,
                     const ExactRational& norm_target, CsvWriter* trace) {
    const auto m = m_from_table(table);
    RangeScan scan;
    for (const auto& x : all_strings_up_to(n - 1)) {
        const bool ctx_censored = m.censor_bound(x).has_value();
        std::array<bool, 2> kid_censored{};
        std::array<ExactRational, 2> kid;
        for (int a = 0; a < 2; ++a) {
            kid[a] = m(x.with(a));
            kid_censored[a] = ctx_censored || m.censor_bound(x.with(a)).has_value();
        }
        const bool norm_censored = kid_censored[0] || kid_censored[1];
        for (int a = 0; a < 2; ++a) {
            std::string raw_s = "censored";
            std::string norm_s = "censored";
            if (kid_censored[a]) {
                ++scan.raw_censored;
            } else {
                const auto p = kid[a] / m(x);
                ++scan.raw_checked;
                if (!p.dyadic_exponent()) ++scan.raw_out_of_range;
                keep_min(scan.raw_min_gap, abs(p - raw_target));
                raw_s = p.str();
            }
            if (norm_censored) {
                ++scan.norm_censored;
            } else {
                const auto p = kid[a] / (kid[0] + kid[1]);
                ++scan.norm_checked;
                // p = 1/(1 + 2^z)  <=>  1/p - 1 is a power of two (z = 0 gives 1/2)
                if (!is_power_of_two(ExactRational(1) / p - ExactRational(1))) ++scan.norm_out_of_range;
                keep_min(scan.norm_min_gap, abs(p - norm_target));
                norm_s = p.str();
            }
            if (trace) trace->row({csv_string(x), std::to_string(a), raw_s, norm_s});
        }
    }
    return scan;
}

}  // namespace

Verdict exp_range_obstruction(const ExperimentConfig& config, TableSource& tables) {
    Verdict v;
    v.experiment = "range-obstruction";
    const std::size_t n = config.horizon_or(8);
    const ExactRational raw_target(3, 8), raw_bound(1, 8);
    const ExactRational norm_target(5, 12), norm_bound(1, 12);
    const auto dir = trace_dir(config, v.experiment);

    const auto table = tables.get(config.machine, config.budget, n);
    CsvWriter trace(dir / "posteriors.csv", {"context", "symbol", "raw", "normalized"});
    const auto scan = scan_range(table, n, raw_target, norm_target, &trace);
    v.traces.push_back(fs::path(v.experiment) / "posteriors.csv");

    auto gaps_ok = [&](const RangeScan& s) {
        return s.clean() && (!s.raw_min_gap || *s.raw_min_gap >= raw_bound) &&
               (!s.norm_min_gap || *s.norm_min_gap >= norm_bound);
    };
    bool pass = gaps_ok(scan) && scan.raw_checked > 0;
    v.witnesses.push_back({"raw_posteriors_checked", count(scan.raw_checked), "m posterior is a power of 1/2"});
    v.witnesses.push_back({"raw_outside_powers_of_half", count(scan.raw_out_of_range), "m posterior is a power of 1/2"});
    if (scan.raw_min_gap) {
        v.witnesses.push_back({"raw_min_gap_to_3/8", *scan.raw_min_gap, "m posterior stays >= 1/8 from 3/8"});
    }
    v.witnesses.push_back({"normalized_posteriors_checked", count(scan.norm_checked),
                           "normalized m posterior is 1/(1+2^z)"});
    v.witnesses.push_back({"normalized_outside_range", count(scan.norm_out_of_range),
                           "normalized m posterior is 1/(1+2^z)"});
    if (scan.norm_min_gap) {
        v.witnesses.push_back({"normalized_min_gap_to_5/12", *scan.norm_min_gap,
                               "normalized m posterior stays >= 1/12 from 5/12"});
    }
    v.witnesses.push_back({"censored_raw_at_budget", count(scan.raw_censored), "table budget coverage"});
    v.witnesses.push_back({"censored_normalized_at_budget", count(scan.norm_censored), "table budget coverage"});

    if (scan.raw_censored + scan.norm_censored > 0) {
        // Some children are beyond the budget. On R every string of length
        // ell has Km <= 2 ell, so L = 2n resolves every posterior to horizon n.
        const bool is_r = make_machine(config.machine)->descriptor() == "R";
        const std::size_t full_l = 2 * n;
        if (!is_r || full_l > 24) {
            v.notes.push_back("posteriors beyond the table budget cannot be resolved for this machine/horizon");
            pass = false;
        } else {
            const auto full = tables.get(config.machine, {full_l, config.budget.steps}, n);
            const auto rescan = scan_range(full, n, raw_target, norm_target, nullptr);
            v.witnesses.push_back({"resolving_budget_L", count(full_l), "table budget coverage"});
            v.witnesses.push_back({"censored_at_resolving_budget", count(rescan.raw_censored + rescan.norm_censored),
                                   "table budget coverage"});
            v.witnesses.push_back({"resolved_raw_min_gap_to_3/8", rescan.raw_min_gap.value_or(ExactRational(0)),
                                   "m posterior stays >= 1/8 from 3/8"});
            v.witnesses.push_back({"resolved_normalized_min_gap_to_5/12",
                                   rescan.norm_min_gap.value_or(ExactRational(0)),
                                   "normalized m posterior stays >= 1/12 from 5/12"});
            pass = pass && gaps_ok(rescan) && rescan.raw_censored == 0 && rescan.norm_censored == 0;
            v.notes.push_back(std::to_string(scan.raw_censored) + " raw posteriors censored at L=" +
                              std::to_string(config.budget.max_length) + "; all resolved at L=" +
                              std::to_string(full_l));
        }
    }
    v.pass = pass;
    return v;
}

// ---------------------------------------------------------------- loss gap

ExactRational loss_gap_ratio(const ExactRational& eps) {
    return ExactRational(2, 5) / (ExactRational(1, 3) + eps);
}

namespace {

struct LossGapCase {
    std::string label;
    ExactRational middle;
    bool ok = true;
    ExactRational ratio;
};

// m_norm(1|x) ranges over 1/(1+2^z); z in [-kZ, kZ] plus the limits 0 and 1.
constexpr int kZ = 64;

std::vector<ExactRational> m_norm_range() {
    std::vector<ExactRational> out{ExactRational(0), ExactRational(1)};
    for (int z = -kZ; z <= kZ; ++z) {
        const auto two_z = z >= 0 ? ExactRational::pow2(z) : ExactRational::dyadic(-z);
        out.push_back(ExactRational(1) / (ExactRational(1) + two_z));
    }
    return out;
}

LossGapCase run_loss_gap_case(const std::string& label, const ExactRational& middle, CsvWriter& trace) {
    LossGapCase c;
    c.label = label;
    c.middle = middle;
    const auto loss = LossMatrix::three_action(middle);
    const auto padded = loss.padded(5);
    const PosteriorVector mu{BinString(), {ExactRational(3, 5), ExactRational(2, 5)}};

    const auto a_mu = act(loss, mu);
    const auto l_mu = expected_loss(mu, loss, a_mu);
    c.ok = a_mu == 1 && l_mu == middle && act(padded, mu) == a_mu;

    ExactRational l_m;
    bool first = true;
    for (const auto& p : m_norm_range()) {
        const PosteriorVector post{BinString(), {ExactRational(1) - p, p}};
        const auto a = act(loss, post);
        const auto l = expected_loss(mu, loss, a);
        bool row_ok = (a == 0 || a == 2) && l == ExactRational(2, 5);
        row_ok = row_ok && act(padded, post) == a && expected_loss(mu, padded, a) == l;
        // Acting on an unnormalized multiple of the posterior changes nothing.
        for (const auto& scale : {ExactRational(1, 3), ExactRational(7), ExactRational::dyadic(20)}) {
            const PosteriorVector scaled{BinString(), {post[0] * scale, post[1] * scale}};
            row_ok = row_ok && act(loss, scaled) == a;
        }
        if (first || l > l_m) l_m = l;
        first = false;
        c.ok = c.ok && row_ok;
        trace.row({label, p.str(), std::to_string(a), l.str(), std::to_string(a_mu), l_mu.str(), yes_no(row_ok)});
    }
    c.ratio = l_m / l_mu;
    return c;
}

}  // namespace

Verdict exp_loss_gap(const ExperimentConfig& config) {
    Verdict v;
    v.experiment = "loss-gap";
    if (config.eps.sign() < 0 || config.eps >= ExactRational(1, 15)) {
        throw std::invalid_argument("loss-gap: eps must lie in [0, 1/15), got " + config.eps.str());
    }
    const auto dir = trace_dir(config, v.experiment);
    CsvWriter trace(dir / "actions.csv",
                    {"loss", "m_posterior_1", "action_m", "mu_loss_m", "action_mu", "mu_loss_mu", "ok"});
    v.traces.push_back(fs::path(v.experiment) / "actions.csv");

    std::vector<std::pair<std::string, ExactRational>> middles{
        {"l_x1=3/8", ExactRational(3, 8)},
        {"l_x1=1/3+1/24", ExactRational(1, 3) + ExactRational(1, 24)},
        {"l_x1=1/3+1/120", ExactRational(1, 3) + ExactRational(1, 120)},
    };
    // eps = 0 is reported as a limit only: at m_norm(1|x) = 1/2 actions 1 and 2
    // tie and the lowest-index rule picks 1, so the ratio 6/5 is approached, not attained.
    if (config.eps != ExactRational(1, 24) && config.eps != ExactRational(1, 120)) {
        middles.push_back({"l_x1=1/3+" + config.eps.str(), ExactRational(1, 3) + config.eps});
    }
    bool pass = true;
    for (const auto& [label, middle] : middles) {
        const auto c = run_loss_gap_case(label, middle, trace);
        const auto expected = ExactRational(2, 5) / middle;
        pass = pass && c.ok && c.ratio == expected;
        v.witnesses.push_back({"ratio_" + label, c.ratio, "Lambda_m loses to Lambda_mu by (2/5)/l_x1"});
    }
    pass = pass && loss_gap_ratio(ExactRational(1, 24)) == ExactRational(16, 15);
    v.witnesses.push_back({"ratio_limit_eps_to_0", loss_gap_ratio(ExactRational(0)),
                           "loss ratio approaches 6/5"});
    v.witnesses.push_back({"padded_actions", ExactRational(5), "extra actions with loss 1 are never chosen"});
    v.pass = pass;
    return v;
}

// ---------------------------------------------------------------- block machine

namespace {

// Sample paths for Monte Carlo checks use seeds CounterStream(seed).at(i).
std::uint64_t path_seed(std::uint64_t seed, std::size_t i) { return CounterStream(seed).at(i); }

constexpr std::size_t kShannonFanoSamples = 200;

}  // namespace

Verdict exp_block_machine(const ExperimentConfig& config, TableSource& tables, const LossMatrix& loss) {
    Verdict v;
    v.experiment = "block-machine";
    if (!is_non_degenerate(loss)) {
        throw std::invalid_argument(
            "block-machine: loss is degenerate; a single action optimal for every outcome makes every "
            "predictor self-optimizing, so non-degeneracy is necessary");
    }
    const std::size_t s = config.s;
    const std::size_t n = config.horizon_or(32);
    const std::size_t block = s + 1;
    const std::size_t boundaries = (n - 1) / block + 1;  // t - 1 in {0, s+1, ...}, t <= n
    const std::size_t kmax = boundaries - 1;
    const auto dir = trace_dir(config, v.experiment);

    // Certifying the 1-branch for x in A^k needs Km_inner(x) > s(k-1) - 2.
    const std::size_t need = kmax >= 1 ? s * (kmax - 1) : 0;
    const std::size_t inner_l = std::max(config.budget.max_length, need > 0 ? need - 1 : 0);
    if (inner_l > 22) {
        throw BudgetInsufficient("block-machine: inner table would need L=" + std::to_string(inner_l));
    }
    const auto inner = tables.get("R", {inner_l, config.budget.steps}, 8);
    const auto env = block_env(s);
    const auto mu = as_predictive(env);
    v.witnesses.push_back({"inner_budget_L", count(inner_l), "exact Km on U_s via the inner table"});

    // Predictions at block boundaries of sampled sequences.
    CsvWriter bt(dir / "boundaries.csv", {"path", "k", "context", "km_x0", "km_x1", "m_norm_0", "mu_0", "action_m",
                                          "action_mu", "loss_m", "loss_mu", "ratio"});
    v.traces.push_back(fs::path(v.experiment) / "boundaries.csv");
    bool separated = true;
    std::size_t checked = 0;
    std::optional<ExactRational> ratio_all;
    bool ratio_constant = true;
    std::optional<ExactRational> m_norm0;
    for (std::size_t path = 0; path < config.seeds; ++path) {
        const auto seq = sample(env, kmax * block, path_seed(config.seed, path));
        for (std::size_t k = 0; k <= kmax; ++k) {
            const auto x = seq.prefix(k * block);
            const auto km0 = km_block_exact(s, x.with(0), *inner);
            const auto km1 = km_block_exact(s, x.with(1), *inner);
            const PosteriorVector bpost{x, {km0.weight(), km1.weight()}};
            const auto mpost = posterior(mu, x);
            const auto a_m = act(loss, bpost);
            const auto a_mu = act(loss, mpost);
            const auto l_m = expected_loss(mpost, loss, a_m);
            const auto l_mu = expected_loss(mpost, loss, a_mu);
            const auto norm0 = bpost[0] / bpost.total();
            const auto m_set = loss.argmin_set(0);
            const auto mu_set = loss.argmin_set(1);
            const bool ok = std::find(m_set.begin(), m_set.end(), a_m) != m_set.end() &&
                            std::find(mu_set.begin(), mu_set.end(), a_mu) != mu_set.end() && a_m != a_mu;
            separated = separated && ok;
            ++checked;
            std::string ratio_s = "undefined";
            if (l_mu.is_zero()) {
                ratio_constant = false;
            } else {
                const auto r = l_m / l_mu;
                ratio_s = r.str();
                if (!ratio_all) ratio_all = r;
                ratio_constant = ratio_constant && r == *ratio_all;
            }
            if (!m_norm0) m_norm0 = norm0;
            ratio_constant = ratio_constant && norm0 == *m_norm0;
            bt.row({std::to_string(path), std::to_string(k), csv_string(x), km0.str(), km1.str(), norm0.str(),
                    mpost[0].str(), std::to_string(a_m), std::to_string(a_mu), l_m.str(), l_mu.str(), ratio_s});
        }
    }
    v.witnesses.push_back({"boundaries_checked", count(checked), "Lambda_m and Lambda_mu act differently"});
    v.witnesses.push_back({"m_norm_0_at_boundary", m_norm0.value_or(ExactRational(0)), "m_norm(0|x) = 1/(1+2^-s)"});
    v.witnesses.push_back({"loss_ratio", ratio_all.value_or(ExactRational(0)), "Lambda_m is not self-optimizing"});
    const auto expected_norm0 = ExactRational(1) / (ExactRational(1) + ExactRational::dyadic(s));
    bool pass = separated && ratio_constant && m_norm0 == expected_norm0;
    if (loss == LossMatrix::error_loss()) {
        const auto two_s = ExactRational::pow2(s);
        pass = pass && ratio_all == two_s - ExactRational(1);
    }

    // Cross-check the closed form against enumeration on U_2.
    {
        const std::size_t cs = 2;
        const EnumerationBudget cb{9, config.budget.steps};
        const auto direct = tables.get("U:s=2", cb, 8);
        const auto inner2 = tables.get("R", cb, 8);
        CsvWriter ct(dir / "cross_check_s2.csv", {"x", "km_enumerated", "km_lower", "km_upper", "match"});
        v.traces.push_back(fs::path(v.experiment) / "cross_check_s2.csv");
        std::size_t tested = 0, matched = 0;
        for (const auto& x : all_strings_up_to(8)) {
            const auto e = direct->km(x);
            const auto b = km_block_bounds(cs, x, *inner2);
            bool ok = false;
            if (e.finite()) {
                ok = b.exact() && b.lower == e;
            } else {
                ok = !b.lower.finite() || b.lower.value() > cb.max_length;
            }
            ++tested;
            if (ok) ++matched;
            ct.row({csv_string(x), e.str(), b.lower.str(), b.upper.str(), yes_no(ok)});
        }
        v.witnesses.push_back({"s2_prefixes_tested", count(tested), "closed-form Km agrees with enumeration"});
        v.witnesses.push_back({"s2_prefixes_matched", count(matched), "closed-form Km agrees with enumeration"});
        pass = pass && matched == tested;
    }

    // Shannon-Fano frequency: how often c(x) is within s bits of Km on the inner machine.
    {
        CsvWriter st(dir / "shannon_fano.csv", {"sample", "x", "len_c", "km_inner", "ok"});
        v.traces.push_back(fs::path(v.experiment) / "shannon_fano.csv");
        const std::size_t k = std::max<std::size_t>(kmax, 1);
        std::size_t good = 0;
        for (std::size_t i = 0; i < kShannonFanoSamples; ++i) {
            const auto x = sample(env, k * block, path_seed(config.seed ^ 0x5F5F5F5FULL, i));
            const std::size_t len_c = s * k;
            const auto km = inner->km(x);
            // Infinite at a saturated budget means Km_inner >= L+1.
            const bool ok = km.finite() ? len_c <= km.value() + s
                                        : inner->saturated() && len_c <= inner_l + 1 + s;
            if (ok) ++good;
            st.row({std::to_string(i), csv_string(x), std::to_string(len_c), km.str(), yes_no(ok)});
        }
        const auto freq = ExactRational(static_cast<long>(good), static_cast<long>(kShannonFanoSamples));
        const auto target = ExactRational(1) - ExactRational::dyadic(s);
        const auto floor = target - ExactRational::dyadic(s);
        v.witnesses.push_back({"shannon_fano_frequency", freq, "c is Shannon-Fano: frequency near 1-2^-s"});
        v.witnesses.push_back({"shannon_fano_target", target, "c is Shannon-Fano: frequency near 1-2^-s"});
        v.witnesses.push_back({"shannon_fano_floor", floor, "c is Shannon-Fano: frequency near 1-2^-s"});
        pass = pass && freq >= floor;
    }
    v.pass = pass;
    return v;
}

// ---------------------------------------------------------------- bounds

const BinString& program_driven_program() {
    // 01 01 00: print 110; 10 00111: append 7 copies -> (110)^8
    static const BinString p("0101001000111");
    return p;
}

Verdict exp_bounds(const ExperimentConfig& config, TableSource& tables) {
    Verdict v;
    v.experiment = "bounds";
    const std::size_t n = config.horizon_or(32);
    const auto dir = trace_dir(config, v.experiment);
    const auto table = tables.get(config.machine, config.budget, 8);
    const auto m = m_from_table(table);

    const auto prog = program_env(program_driven_program());
    struct Seq {
        std::string name;
        BinString x;
    };
    const std::vector<Seq> seqs{
        {"zeros", deterministic_sequence(constant_env(0), n)},
        {"alternating", deterministic_sequence(alternating_env(), n)},
        {"program", deterministic_sequence(prog, std::min(n, prog.max_length()))},
    };

    bool pass = true;
    for (const auto& [name, x] : seqs) {
        const auto km = table->km(x);
        if (!km.finite()) {
            v.notes.push_back(name + ": Km beyond the table budget");
            v.witnesses.push_back({name + "_km_finite", ExactRational(0), "bounds need a finite Km"});
            pass = false;
            continue;
        }
        const auto kmv = km.value();
        DeviationSums dev;
        try {
            dev = deviation_sums(m, x);
        } catch (const BudgetInsufficient& e) {
            v.notes.push_back(name + ": " + e.what());
            pass = false;
            continue;
        }
        const auto report = property_suite(m, 0, x, km);
        const auto& nv = *report.sequence;

        const ExactRational kmr = count(kmv);
        const bool on_ok = ExactRational(2) * dev.onseq <= kmr;
        const bool count_ok = dev.count <= kmv;
        const auto off_bound = ExactRational::pow2(kmv);
        const bool off_ok = dev.offseq_upper <= off_bound;
        const bool nv_ok = nv.within_bound();
        pass = pass && on_ok && count_ok && off_ok && nv_ok;

        v.witnesses.push_back({name + "_length", count(x.size()), "sequence horizon"});
        v.witnesses.push_back({name + "_km", kmr, "Km of the sequence"});
        v.witnesses.push_back({name + "_onseq", dev.onseq, "sum |1-m(x_t|x_<t)| <= Km/2"});
        v.witnesses.push_back({name + "_errors", count(dev.count), "#{t: m(x_t|x_<t) != 1} <= Km"});
        v.witnesses.push_back({name + "_offseq_upper", dev.offseq_upper, "sum m(not x_t|x_<t) <= 2^Km"});
        v.witnesses.push_back({name + "_nonviolations", count(nv.times.size() + nv.undetermined),
                               "semimeasure non-violations along x <= Km"});

        CsvWriter tr(dir / (name + ".csv"),
                     {"t", "on", "off", "off_upper", "onseq", "errors", "offseq_upper", "semimeasure_step"});
        v.traces.push_back(fs::path(v.experiment) / (name + ".csv"));
        ExactRational on_sum, off_sum;
        std::size_t errors = 0;
        for (const auto& step : dev.steps) {
            on_sum += ExactRational(1) - step.on;
            off_sum += step.off_upper;
            if (step.on != ExactRational(1)) ++errors;
            const auto verdict = semimeasure_step(m, x.prefix(step.t - 1));
            const char* vs = verdict == Verdict3::holds ? "holds" : verdict == Verdict3::violated ? "violated"
                                                                                                 : "undetermined";
            tr.row({std::to_string(step.t), step.on.str(), step.off.str(), step.off_upper.str(), on_sum.str(),
                    std::to_string(errors), off_sum.str(), vs});
        }
    }
    v.pass = pass;
    return v;
}

// ---------------------------------------------------------------- krels

Verdict exp_krels(const ExperimentConfig& config, TableSource& tables) {
    Verdict v;
    v.experiment = "krels";
    const std::size_t n = config.horizon_or(6);
    const auto dir = trace_dir(config, v.experiment);
    const auto table = tables.get(config.machine, config.budget, n);

    bool pass = true;
    std::size_t checked = 0, failures = 0;
    for (const auto& x : all_strings_up_to(n)) {
        const auto km = table->km(x);
        const auto k = table->k(x);
        if (!km.finite()) {
            // A halting program is also a monotone witness.
            if (k.finite()) ++failures;
            continue;
        }
        const auto bigM = table->bigM(x);
        ++checked;
        const bool ok = bigM <= ExactRational(1) && bigM >= km.weight() && km <= k;
        if (!ok) ++failures;
    }
    pass = failures == 0 && checked > 0;
    table_export_csv(*table, dir / "table.csv");
    v.traces.push_back(fs::path(v.experiment) / "table.csv");

    const BinString eps;
    v.witnesses.push_back({"strings_checked", count(checked), "0 <= -log M <= Km <= K"});
    v.witnesses.push_back({"ordering_failures", count(failures), "0 <= -log M <= Km <= K"});
    v.witnesses.push_back({"bigM(eps)", table->bigM(eps), "0 <= -log M <= Km <= K"});
    v.witnesses.push_back({"km(eps)", count(table->km(eps).value()), "0 <= -log M <= Km <= K"});
    if (table->k(eps).finite()) {
        v.witnesses.push_back({"k(eps)", count(table->k(eps).value()), "0 <= -log M <= Km <= K"});
    }
    const auto kraft = kraft_sum(table->halting_programs());
    v.witnesses.push_back({"kraft_sum_halting_programs", kraft, "halting programs satisfy Kraft"});
    pass = pass && kraft <= ExactRational(1);
    v.pass = pass;
    return v;
}

// ---------------------------------------------------------------- M convergence

Verdict exp_M_convergence(const ExperimentConfig& config, TableSource& tables) {
    Verdict v;
    v.experiment = "m-convergence";
    const std::size_t n = config.horizon_or(8);
    if (n > kMaxExactImsHorizon) {
        throw std::invalid_argument("m-convergence: horizon above " + std::to_string(kMaxExactImsHorizon));
    }
    const auto dir = trace_dir(config, v.experiment);
    const auto table = tables.get(config.machine, config.budget, n);
    const auto bn = normalize(bigM_from_table(table));
    const auto mn = normalize(m_from_table(table));
    bool pass = true;

    // On-sequence posterior of M_norm along deterministic sequences.
    {
        CsvWriter tr(dir / "posteriors.csv", {"sequence", "t", "bigM_norm_on"});
        v.traces.push_back(fs::path(v.experiment) / "posteriors.csv");
        const std::vector<std::pair<std::string, Environment>> seqs{
            {"zeros", constant_env(0)}, {"ones", constant_env(1)}, {"alternating", alternating_env()}};
        for (const auto& [name, env] : seqs) {
            const auto x = deterministic_sequence(env, n);
            ExactRational first, last;
            for (std::size_t t = 1; t <= n; ++t) {
                const auto p = conditional(bn, x.prefix(t - 1), x[t - 1]);
                if (t == 1) first = p;
                last = p;
                tr.row({name, std::to_string(t), p.str()});
            }
            const bool up = n == 1 || last > first;
            pass = pass && up;
            v.witnesses.push_back({name + "_posterior_t1", first, "M_norm converges on computable sequences"});
            v.witnesses.push_back({name + "_posterior_tn", last, "M_norm converges on computable sequences"});
        }
    }

    // i.m.s. traces.
    {
        const auto half = bernoulli_env(ExactRational(1, 2));
        const auto control = ims_trace(as_predictive(half), half, n);
        const auto zeros = ims_trace(bn, constant_env(0), n);
        const auto sampled = ims_sum_sampled(bn, half, n, config.seed, config.seeds);
        const auto b512 = bernoulli_env(ExactRational(5, 12));
        const auto b38 = bernoulli_env(ExactRational(3, 8));
        const auto gap512 = ims_trace(mn, b512, n);
        const auto gap38 = ims_trace(mn, b38, n);
        // Pointwise gaps of m_norm: >= 1/12 from 5/12 and >= 1/24 from 3/8,
        // on both coordinates, so each step adds at least 2 gap^2.
        const auto step512 = ExactRational(2) * ExactRational(1, 144);
        const auto step38 = ExactRational(2) * ExactRational(1, 576);

        CsvWriter tr(dir / "ims.csv", {"t", "control_mu_vs_mu", "bigM_norm_zeros", "bigM_norm_bern_1/2_sampled",
                                       "m_norm_bern_5/12", "lower_5/12", "m_norm_bern_3/8", "lower_3/8"});
        v.traces.push_back(fs::path(v.experiment) / "ims.csv");
        bool control_zero = true, linear = true;
        for (std::size_t t = 0; t < n; ++t) {
            const auto lo512 = step512 * count(t + 1);
            const auto lo38 = step38 * count(t + 1);
            control_zero = control_zero && control[t].is_zero();
            linear = linear && gap512[t] >= lo512 && gap38[t] >= lo38;
            tr.row({std::to_string(t + 1), control[t].str(), zeros[t].str(), sampled.trace[t].str(), gap512[t].str(),
                    lo512.str(), gap38[t].str(), lo38.str()});
        }
        pass = pass && control_zero && linear;
        v.witnesses.push_back({"ims_control", control.back(), "b = mu gives i.m.s. sum 0"});
        v.witnesses.push_back({"ims_bigM_norm_zeros", zeros.back(), "M_norm converges i.m.s."});
        v.witnesses.push_back({"ims_bigM_norm_bern_1/2_sampled", sampled.mean, "M_norm converges i.m.s."});
        v.witnesses.push_back({"ims_sampled_seeds", count(sampled.seeds), "M_norm converges i.m.s."});
        v.witnesses.push_back({"ims_m_norm_bern_5/12", gap512.back(), "m_norm does not converge i.m.s."});
        v.witnesses.push_back({"ims_m_norm_bern_3/8", gap38.back(), "m_norm does not converge i.m.s."});
    }
    v.pass = pass;
    return v;
}

// ---------------------------------------------------------------- driver

Verdict run_experiment(std::string_view id, const ExperimentConfig& config, TableSource& tables) {
    if (id == "loss-gap") return exp_loss_gap(config);
    if (id == "range-obstruction") return exp_range_obstruction(config, tables);
    if (id == "krels") return exp_krels(config, tables);
    if (id == "bounds") return exp_bounds(config, tables);
    if (id == "block-machine") return exp_block_machine(config, tables);
    if (id == "m-convergence") return exp_M_convergence(config, tables);
    throw std::invalid_argument("unknown experiment id: " + std::string(id));
}

std::vector<Verdict> run_suite(const ExperimentConfig& config) {
    validate(config);
    fs::create_directories(config.out);
    write_manifest(config, config.out / "manifest.txt");
    TableSource tables(config.cache, config.threads);
    std::vector<Verdict> verdicts;
    if (config.id == "all") {
        for (const auto& id : experiment_ids()) verdicts.push_back(run_experiment(id, config, tables));
    } else {
        verdicts.push_back(run_experiment(config.id, config, tables));
    }
    write_verdicts(verdicts, config.out / "verdicts.csv");
    return verdicts;
}

}  // namespace mdl
