// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/rng.hpp"

#include <numeric>

#include "chronogan/errors.hpp"

namespace chronogan {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
__extension__ using Wide = unsigned __int128;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : key_(mix64(seed + kGamma)) {}

Rng Rng::split(std::uint64_t stream) const {
  Rng child(0);
  child.key_ = mix64(key_ ^ mix64(stream * kGamma + 0x632BE59BD9B4E019ULL));
  return child;
}

std::uint64_t Rng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw ContractError("Rng::below(0)");
  const Wide wide = static_cast<Wide>(next_u64()) * n;
  return static_cast<std::size_t>(wide >> 64);
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  shuffle(p);
  return p;
}

}  // namespace chronogan
