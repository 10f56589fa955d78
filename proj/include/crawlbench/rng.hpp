// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic, splittable random number generation. Every random draw in
// the generator goes through RngStream so that a fixed master seed produces
// bit-identical output on every platform and build. The algorithm identity
// ("xoshiro256**/splitmix64, v1") is recorded in generated manifests; changing
// anything here is a format break.

#pragma once

#include <array>
#include <cstdint>

namespace crawlbench {

inline constexpr char kRngAlgorithmId[] = "xoshiro256ss-splitmix64-v1";

namespace detail {

// splitmix64 finalizer (Sebastiano Vigna, public domain).
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t splitmix64_next(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  return mix64(x);
}

}  // namespace detail

/// One deterministic stream of pseudo-random values (xoshiro256**).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = detail::splitmix64_next(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    ++draws_;
    return result;
  }

  /// Uniform double in [0, 1).
  double next_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform index in [0, n). n must be > 0. Uses the fixed-point multiply
  /// reduction so results do not depend on any library distribution.
  std::uint64_t uniform_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    uniform_index(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool bernoulli(double p) { return next_real() < p; }

  std::uint64_t draw_count() const { return draws_; }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  std::uint64_t draws_ = 0;
};

/// Stream purposes, in the documented generation order. Each purpose (plus an
/// index for per-node streams) owns an independent stream derived from the
/// master seed, so per-node RDF generation can run in any interleaving and
/// still reproduce exactly.
enum class StreamPurpose : std::uint64_t {
  NodeTypes = 1,
  DumpFormats = 2,
  NodeGraph = 3,
  RdfData = 4,
  Disallowed = 5,
};

/// Splittable source of RngStreams, seeded from CloudConfig.seed.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t master_seed) : master_(master_seed) {}

  RngStream stream(StreamPurpose purpose, std::uint64_t index = 0) const {
    const std::uint64_t p = static_cast<std::uint64_t>(purpose);
    std::uint64_t s = detail::mix64(master_ + 0x9e3779b97f4a7c15ULL * p);
    s = detail::mix64(s + 0x9e3779b97f4a7c15ULL * index);
    return RngStream(s);
  }

  std::uint64_t master_seed() const { return master_; }

 private:
  std::uint64_t master_;
};

}  // namespace crawlbench
