#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mdl/environments/environment.hpp"
#include "mdl/predict/predictive_function.hpp"

namespace mdl {

/// SplitMix64 in counter mode: value k of the stream with seed s is
/// mix64(s + (k+1) * 0x9E3779B97F4A7C15), where mix64 is the SplitMix64
/// finalizer (Steele, Lea and Flood, 2014). Random access by index makes
/// sample paths independent of evaluation order.
class CounterStream {
public:
    explicit CounterStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t at(std::uint64_t index) const noexcept;
    /// Independent stream derived from this one.
    CounterStream split(std::uint64_t stream_id) const noexcept { return CounterStream(at(~stream_id)); }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

/// n bits, bit t drawn by exact inverse CDF: x_t = 0 iff u_t / 2^64 < mu(0 | x_<t),
/// with u_t = CounterStream(seed).at(t).
BinString sample(const Environment& env, std::size_t n, std::uint64_t seed);

/// Largest horizon accepted by the exact i.m.s. sum.
inline constexpr std::size_t kMaxExactImsHorizon = 20;

/// Cumulative exact i.m.s. sums: entry t-1 is
///   sum_{u<=t} sum_{x_<u} mu(x_<u) sum_{x'} (b(x'|x_<u) - mu(x'|x_<u))^2,
/// summed over contexts with mu(x_<u) > 0. Throws std::invalid_argument for
/// n > kMaxExactImsHorizon and UndefinedConditional (naming the context)
/// when b has no posterior at a context of positive mu-probability.
std::vector<ExactRational> ims_trace(const PredictiveFunction& b, const Environment& env, std::size_t n);
ExactRational ims_sum(const PredictiveFunction& b, const Environment& env, std::size_t n);

struct ImsEstimate {
    ExactRational mean;                // average over seeds of the per-path sum
    std::vector<ExactRational> trace;  // cumulative means, entry t-1 for horizon t
    std::size_t seeds = 0;
    std::uint64_t first_seed = 0;
};

/// Monte Carlo version of ims_sum along paths sampled with seeds
/// first_seed .. first_seed + seeds - 1.
ImsEstimate ims_sum_sampled(const PredictiveFunction& b, const Environment& env, std::size_t n,
                            std::uint64_t first_seed, std::size_t seeds);

}  // namespace mdl
