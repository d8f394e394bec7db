#include "mdl/environments/sampling.hpp"

#include <stdexcept>

namespace mdl {

std::uint64_t CounterStream::at(std::uint64_t index) const noexcept {
    std::uint64_t z = seed_ + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

BinString sample(const Environment& env, std::size_t n, std::uint64_t seed) {
    const CounterStream stream(seed);
    BinString out;
    for (std::size_t t = 0; t < n; ++t) {
        const auto u = ExactRational::scaled(stream.at(t), 64);
        out.push_back(u < env.conditional(out, 0) ? 0 : 1);
    }
    return out;
}

namespace {

ExactRational squared_gap(const PredictiveFunction& b, const Environment& env, const BinString& context) {
    ExactRational total;
    for (int a = 0; a < 2; ++a) {
        const auto diff = conditional(b, context, a) - env.conditional(context, a);
        total += diff * diff;
    }
    return total;
}

}  // namespace

std::vector<ExactRational> ims_trace(const PredictiveFunction& b, const Environment& env, std::size_t n) {
    if (n > kMaxExactImsHorizon) {
        throw std::invalid_argument("ims_sum: exact mode is limited to n <= " + std::to_string(kMaxExactImsHorizon));
    }
    std::vector<ExactRational> per_step(n);
    // Contexts of positive probability, expanded level by level.
    std::vector<std::pair<BinString, ExactRational>> level{{BinString(), ExactRational(1)}};
    for (std::size_t t = 0; t < n; ++t) {
        std::vector<std::pair<BinString, ExactRational>> next;
        for (const auto& [context, weight] : level) {
            per_step[t] += weight * squared_gap(b, env, context);
            if (t + 1 == n) continue;
            for (int a = 0; a < 2; ++a) {
                const auto p = env.conditional(context, a);
                if (!p.is_zero()) next.emplace_back(context.with(a), weight * p);
            }
        }
        level = std::move(next);
    }
    for (std::size_t t = 1; t < n; ++t) per_step[t] += per_step[t - 1];
    return per_step;
}

ExactRational ims_sum(const PredictiveFunction& b, const Environment& env, std::size_t n) {
    const auto trace = ims_trace(b, env, n);
    return trace.empty() ? ExactRational(0) : trace.back();
}

ImsEstimate ims_sum_sampled(const PredictiveFunction& b, const Environment& env, std::size_t n,
                            std::uint64_t first_seed, std::size_t seeds) {
    if (seeds == 0) throw std::invalid_argument("ims_sum_sampled: need at least one seed");
    ImsEstimate est;
    est.seeds = seeds;
    est.first_seed = first_seed;
    est.trace.assign(n, ExactRational(0));
    for (std::size_t k = 0; k < seeds; ++k) {
        const auto path = sample(env, n, first_seed + k);
        for (std::size_t t = 0; t < n; ++t) est.trace[t] += squared_gap(b, env, path.prefix(t));
    }
    const ExactRational count(static_cast<long>(seeds));
    for (std::size_t t = 0; t < n; ++t) {
        est.trace[t] /= count;
        if (t > 0) est.trace[t] += est.trace[t - 1];
    }
    est.mean = est.trace.empty() ? ExactRational(0) : est.trace.back();
    return est;
}

}  // namespace mdl
