#pragma once

#include <cstddef>
#include <cstdint>

namespace moaodv {

/// Counter-based random stream (SplitMix64 over a Weyl sequence).
///
/// Draws depend only on (seed, draw index), so results are identical on
/// every platform and compiler. `split` derives independent child streams
/// without consuming draws from the parent.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return counter_; }

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in {0, ..., n-1}; n must be positive.
  std::size_t uniform_index(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }

  RandomSource split(std::uint64_t key) const;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

}  // namespace moaodv
