#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace kgroups {

/// One step of the SplitMix64 generator; advances `state` and returns the
/// next output. Used for seed derivation only.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for a derived stream: trial_seed = hash(master_seed, index).
/// Defined as two SplitMix64 steps over master_seed xor golden-ratio-scrambled
/// index, so distinct (master, index) pairs give independent-looking seeds and
/// the mapping is identical on every platform.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Seedable random source with portable variates.
///
/// Engine: std::mt19937_64 (fully specified by the standard, so the raw
/// 64-bit stream is platform-independent). Variates are built on top of it
/// with fixed algorithms rather than std::*_distribution, whose output is
/// implementation-defined:
///   - uniform(): top 53 bits of one engine output, scaled to [0, 1)
///   - normal(): Box-Muller, cosine branch only:
///       u1 in (0, 1], u2 in [0, 1) from two consecutive engine outputs,
///       z = sqrt(-2 ln u1) * cos(2 pi u2)
///     (the sine mate is discarded; no state is kept between calls)
///   - index(n): rejection sampling on the high bits (unbiased)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform();

  /// Uniform double in (0, 1] (safe as a log argument).
  double uniform_open();

  /// Standard normal via Box-Muller (cosine branch).
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Uniform index in [0, n). Requires n >= 1.
  std::size_t index(std::size_t n);

  /// Index drawn with probability weights[i] / sum(weights).
  /// Requires nonnegative weights with a positive sum.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace kgroups
