#pragma once

#include <cstdint>
#include <random>

namespace arp {

/// Portable pseudo-random stream.
///
/// The engine is std::mt19937_64 seeded directly with the 64-bit seed; its
/// output sequence is fixed by the C++ standard. The standard distributions
/// are implementation-defined, so bounded integers and unit reals are derived
/// here from raw engine output:
///
///  - below(n): rejection sampling on the largest multiple of n below 2^64,
///    then x % n (unbiased, identical on every platform);
///  - uniform(): top 53 bits of one draw scaled by 2^-53, in [0, 1).
///
/// A stream is owned by a single caller at a time.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Uniform integer in [lo, hi] (inclusive).
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  double uniform();

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

// Independent child seed for stream `stream` of `seed` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace arp
