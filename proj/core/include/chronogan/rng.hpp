// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace chronogan {

/// Counter-based generator: the n-th draw is a SplitMix64 finaliser applied to
/// key + n * golden-gamma. Child streams are derived from the key and a stream
/// tag, so every component seed in a run is a function of the one root seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent generator for sub-stream `stream`. Does not advance *this.
  Rng split(std::uint64_t stream) const;

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }
  /// Random permutation of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n);

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 output finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace chronogan
