// Copyright 2026 The ldpbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ldpbench/error.hpp"

namespace ldpbench {

// 64-bit finalizer with full avalanche (splitmix64 constants).
inline uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline constexpr uint64_t kSeedStreamIncrement = 0x9E3779B97F4A7C15ULL;

// Derives an independent stream seed from a master seed and three indices.
// Chained mixing: the master seed and each index are absorbed through one
// avalanche round apiece. Hashing the master seed before the first index
// keeps nearby master seeds from aliasing (raw master + a would make
// (m, a+1) and (m+1, a) collide). Distinct tuples map to distinct streams;
// collisions are checked by test, not assumed.
inline uint64_t derive_seed(uint64_t master_seed, uint64_t a, uint64_t b,
                            uint64_t c) {
  uint64_t h = mix64(master_seed + kSeedStreamIncrement);
  h = mix64(h + kSeedStreamIncrement + a);
  h = mix64(h + kSeedStreamIncrement + b);
  h = mix64(h + kSeedStreamIncrement + c);
  return h;
}

// Deterministic random stream. The raw generator is std::mt19937_64; every
// derived draw (doubles, bounded integers, Bernoulli, Gaussian) is computed
// here rather than with std::*_distribution, whose output sequences differ
// between standard-library implementations. Reproducibility of results files
// across toolchains depends on this.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). Rejection sampling, exactly unbiased.
  uint64_t uniform_below(uint64_t bound) {
    if (bound == 0) throw ParameterError("uniform_below: bound must be > 0");
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return r % bound;
  }

  bool bernoulli(double p) { return uniform_double() < p; }

  // Standard normal via Box-Muller; the second variate of each pair is
  // cached, so draws come in deterministic pairs.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = 1.0 - uniform_double();
    const double u2 = uniform_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ldpbench
