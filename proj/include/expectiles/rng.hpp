/*
 * include/expectiles/rng.hpp
 *
 * Copyright 2026 The expectile-toolkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
 * implied. See the License for the specific language governing
 * permissions and limitations under the License.
 */

#ifndef EXPECTILES_RNG_HPP_
#define EXPECTILES_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "expectiles/distributions.hpp"

namespace expectiles {

// SplitMix64 finalizer; scrambles a 64-bit word into a well-mixed seed.
inline std::uint64_t splitmix64(std::uint64_t value) {
  value += 0x9E3779B97F4A7C15ULL;
  value = (value ^ (value >> 30)) * 0xBF58476D1CE4E5B9ULL;
  value = (value ^ (value >> 27)) * 0x94D049BB133111EBULL;
  return value ^ (value >> 31);
}

// A counter-derived random substream. Identical (master_seed, stream_id)
// pairs yield bit-identical draws on every platform and in any execution
// order: the engine is the standard-mandated mt19937_64 and all samplers
// below are written out explicitly rather than delegating to library
// distributions, whose algorithms are implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : engine_(splitmix64(master_seed + 0x9E3779B97F4A7C15ULL * (stream_id + 1))) {}

  // Uniform on the open interval (0, 1), from the top 53 bits.
  double uniform() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller, caching the paired draw.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::acos(-1.0) * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Gamma(shape, scale) by the Marsaglia-Tsang squeeze; shapes below 1 use
  // the standard boost Gamma(shape+1) * U^(1/shape).
  double gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
      throw std::invalid_argument("RngStream::gamma: shape and scale must be positive");
    if (shape < 1.0) {
      const double boosted = gamma(shape + 1.0, scale);
      return boosted * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double z;
      double v;
      do {
        z = normal();
        v = 1.0 + c * z;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * z * z * z * z) return scale * d * v;
      if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
  }

  // Student t with real positive degrees of freedom: normal over the root
  // of an independent scaled chi-square (a Gamma(dof/2, 2) draw).
  double student_t(double dof) {
    if (!(dof > 0.0))
      throw std::invalid_argument("RngStream::student_t: dof must be positive");
    const double z = normal();
    const double chi_square = gamma(0.5 * dof, 2.0);
    return z / std::sqrt(chi_square / dof);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Seed container plus the substream derivation rule.
struct RngSpec {
  std::uint64_t master_seed = 0;

  RngStream stream(std::uint64_t stream_id) const {
    return RngStream(master_seed, stream_id);
  }
};

inline std::vector<double> sample_student_t(double tail_index, std::size_t n,
                                            RngStream& stream) {
  std::vector<double> draws;
  draws.reserve(n);
  for (std::size_t k = 0; k < n; ++k) draws.push_back(stream.student_t(tail_index));
  return draws;
}

// Inverse-CDF sampling on the atoms of a discrete law.
inline std::vector<double> sample_discrete(const DiscreteDistribution& law,
                                           std::size_t n, RngStream& stream) {
  const std::size_t m = law.atom_count();
  std::vector<double> draws;
  draws.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = stream.uniform();
    std::size_t lo = 0;
    std::size_t hi = m - 1;  // first index with cumulative mass above u
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (law.mass_upto(mid) > u)
        hi = mid;
      else
        lo = mid + 1;
    }
    draws.push_back(law.atoms()[lo]);
  }
  return draws;
}

}  // namespace expectiles

#endif  // EXPECTILES_RNG_HPP_
