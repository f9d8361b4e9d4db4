// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace kamred {

// Deterministic generator used everywhere randomness is needed.  Seeding goes
// through splitmix64 so that nearby user seeds give unrelated streams.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(scramble(seed)) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  std::complex<double> complex_normal() { return {normal(), normal()}; }
  std::uint64_t bits() { return engine_(); }

  // Independent child stream, for reproducible parallel-style splitting.
  Rng split() { return Rng(engine_()); }

private:
  static std::uint64_t scramble(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }
  std::mt19937_64 engine_;
};

} // namespace kamred
