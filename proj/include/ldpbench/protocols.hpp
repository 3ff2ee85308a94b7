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
//
// Six locally differentially private frequency-oracle protocols: GRR, BLH,
// OLH, RAPPOR (one-time symmetric unary encoding), OUE, and SS. Each
// protocol is a (perturb, aggregate, estimate) triple sharing the unbiased
// estimator f^(v) = (count_v/n - q) / (p - q).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "ldpbench/error.hpp"
#include "ldpbench/random.hpp"
#include "ldpbench/types.hpp"

namespace ldpbench {

// Smallest prime strictly greater than x. Trial division; intended for
// one-off hash modulus selection, not bulk use.
inline uint64_t smallest_prime_above(uint64_t x) {
  auto is_prime = [](uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t f = 3; f * f <= n; f += 2) {
      if (n % f == 0) return false;
    }
    return true;
  };
  uint64_t candidate = x + 1;
  while (!is_prime(candidate)) ++candidate;
  return candidate;
}

// Hash modulus for a domain of size d: smallest prime > max(d, 2^16).
// For every d <= 65536 this is the Fermat prime 65537.
inline uint64_t hash_prime_for_domain(uint32_t d) {
  if (d <= 65536) return 65537;
  return smallest_prime_above(d);
}

// Pairwise-independent bucket hash: ((a*v + b) mod P) mod g.
inline uint32_t hash_universal(uint64_t a, uint64_t b, uint64_t P, uint32_t g,
                               uint64_t v) {
  if (P < 2 || a < 1 || a >= P || b >= P || g < 2) {
    throw ParameterError("hash_universal: parameter bounds violated");
  }
  uint64_t m;
  if (P <= UINT32_MAX && v <= UINT32_MAX) {
    // a, v < 2^32 so a*v + b fits in 64 bits.
    m = (a * v + b) % P;
  } else {
    unsigned __int128 wide = static_cast<unsigned __int128>(a) * v + b;
    m = static_cast<uint64_t>(wide % P);
  }
  return static_cast<uint32_t>(m % g);
}

// Builds the parameter set for one protocol at a given domain size and
// privacy budget.
inline ProtocolSpec build_protocol(ProtocolKind kind, uint32_t d,
                                   double epsilon) {
  if (d < 2) throw ParameterError("build_protocol: domain size must be >= 2");
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    throw ParameterError("build_protocol: epsilon must be positive and finite");
  }
  // exp(epsilon) overflows double just above 709.
  if (epsilon > 700) {
    throw ParameterError("build_protocol: epsilon too large (max 700)");
  }
  const double e = std::exp(epsilon);
  ProtocolSpec spec;
  spec.kind = kind;
  spec.d = d;
  spec.epsilon = epsilon;
  switch (kind) {
    case ProtocolKind::kGrr:
      spec.p = e / (e + d - 1.0);
      spec.q = 1.0 / (e + d - 1.0);
      break;
    case ProtocolKind::kBlh:
      spec.g = 2;
      spec.p = e / (e + 1.0);
      spec.q = 0.5;
      break;
    case ProtocolKind::kOlh: {
      // Integer hash range nearest the optimum e^eps + 1.
      if (epsilon > 21.0) {
        throw ParameterError("build_protocol: epsilon too large for OLH");
      }
      const int64_t g = std::max<int64_t>(2, std::llround(e) + 1);
      spec.g = static_cast<uint32_t>(g);
      spec.p = e / (e + g - 1.0);
      spec.q = 1.0 / static_cast<double>(g);
      break;
    }
    case ProtocolKind::kRappor: {
      const double t = std::exp(epsilon / 2.0);
      spec.p = t / (t + 1.0);
      spec.q = 1.0 / (t + 1.0);
      break;
    }
    case ProtocolKind::kOue:
      spec.p = 0.5;
      spec.q = 1.0 / (e + 1.0);
      break;
    case ProtocolKind::kSs: {
      const int64_t k =
          std::max<int64_t>(1, std::llround(d / (e + 1.0)));
      spec.k = static_cast<uint32_t>(k);
      spec.p = k * e / (k * e + d - static_cast<double>(k));
      spec.q = spec.p * (k - 1.0) / (d - 1.0) +
               (1.0 - spec.p) * k / (d - 1.0);
      break;
    }
  }
  return spec;
}

namespace internal {

// Uniform random size-k subset of {0, ..., m-1} via Floyd's algorithm.
inline std::vector<uint32_t> sample_distinct(Rng& rng, uint32_t m,
                                             uint32_t k) {
  std::unordered_set<uint32_t> chosen;
  chosen.reserve(k * 2);
  for (uint64_t j = m - k; j < m; ++j) {
    const uint64_t t = rng.uniform_below(j + 1);
    if (!chosen.insert(static_cast<uint32_t>(t)).second) {
      chosen.insert(static_cast<uint32_t>(j));
    }
  }
  std::vector<uint32_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace internal

// Applies the protocol's randomized mechanism to one value.
inline Report perturb(const ProtocolSpec& spec, uint32_t v, Rng& rng) {
  if (v >= spec.d) throw ParameterError("perturb: value out of domain");
  Report report;
  report.kind = spec.kind;
  switch (spec.kind) {
    case ProtocolKind::kGrr: {
      if (rng.bernoulli(spec.p)) {
        report.value = v;
      } else {
        const uint64_t t = rng.uniform_below(spec.d - 1);
        report.value = static_cast<uint32_t>(t + (t >= v ? 1 : 0));
      }
      break;
    }
    case ProtocolKind::kBlh:
    case ProtocolKind::kOlh: {
      const uint64_t P = hash_prime_for_domain(spec.d);
      report.hash_a = 1 + rng.uniform_below(P - 1);
      report.hash_b = rng.uniform_below(P);
      const uint32_t own =
          hash_universal(report.hash_a, report.hash_b, P, spec.g, v);
      // Randomized response over the g buckets: keep with probability p,
      // otherwise flip to one of the g-1 other buckets uniformly, i.e. each
      // with probability 1/(e^eps + g - 1).
      if (rng.bernoulli(spec.p)) {
        report.bucket = own;
      } else {
        const uint64_t t = rng.uniform_below(spec.g - 1);
        report.bucket = static_cast<uint32_t>(t + (t >= own ? 1 : 0));
      }
      break;
    }
    case ProtocolKind::kRappor:
    case ProtocolKind::kOue: {
      report.bits.resize(spec.d);
      for (uint32_t j = 0; j < spec.d; ++j) {
        const double pr = (j == v) ? spec.p : spec.q;
        report.bits[j] = rng.bernoulli(pr) ? 1 : 0;
      }
      break;
    }
    case ProtocolKind::kSs: {
      const uint32_t m = spec.d - 1;  // size of domain minus {v}
      std::vector<uint32_t> others;
      bool include_own = rng.bernoulli(spec.p);
      const uint32_t draw = include_own ? spec.k - 1 : spec.k;
      if (draw > 0) others = internal::sample_distinct(rng, m, draw);
      report.subset.reserve(spec.k);
      for (uint32_t t : others) {
        report.subset.push_back(t + (t >= v ? 1 : 0));
      }
      if (include_own) report.subset.push_back(v);
      std::sort(report.subset.begin(), report.subset.end());
      break;
    }
  }
  return report;
}

// Adds one report's supported values into a sketch. The sketch must have
// been sized for the protocol's domain.
inline void accumulate_report(const ProtocolSpec& spec, const Report& report,
                              Sketch& sketch) {
  if (report.kind != spec.kind) {
    throw InputError("aggregate: mixed-protocol reports");
  }
  switch (spec.kind) {
    case ProtocolKind::kGrr:
      if (report.value >= spec.d) throw InputError("aggregate: bad report");
      sketch.support_counts[report.value] += 1;
      break;
    case ProtocolKind::kBlh:
    case ProtocolKind::kOlh: {
      const uint64_t P = hash_prime_for_domain(spec.d);
      for (uint32_t v = 0; v < spec.d; ++v) {
        if (hash_universal(report.hash_a, report.hash_b, P, spec.g, v) ==
            report.bucket) {
          sketch.support_counts[v] += 1;
        }
      }
      break;
    }
    case ProtocolKind::kRappor:
    case ProtocolKind::kOue: {
      if (report.bits.size() != spec.d) {
        throw InputError("aggregate: bit vector length mismatch");
      }
      for (uint32_t v = 0; v < spec.d; ++v) {
        if (report.bits[v]) sketch.support_counts[v] += 1;
      }
      break;
    }
    case ProtocolKind::kSs: {
      if (report.subset.size() != spec.k) {
        throw InputError("aggregate: subset size mismatch");
      }
      for (uint32_t v : report.subset) {
        if (v >= spec.d) throw InputError("aggregate: bad report");
        sketch.support_counts[v] += 1;
      }
      break;
    }
  }
  sketch.n += 1;
}

inline Sketch make_sketch(uint32_t d) {
  Sketch sketch;
  sketch.support_counts.assign(d, 0);
  sketch.n = 0;
  return sketch;
}

// Counts, for every domain value, how many reports support it.
inline Sketch aggregate(const ProtocolSpec& spec,
                        const std::vector<Report>& reports) {
  Sketch sketch = make_sketch(spec.d);
  for (const Report& report : reports) {
    accumulate_report(spec, report, sketch);
  }
  return sketch;
}

// Elementwise sum of two sketches over the same domain.
inline Sketch merge_sketches(const Sketch& a, const Sketch& b) {
  if (a.support_counts.size() != b.support_counts.size()) {
    throw InputError("merge_sketches: domain size mismatch");
  }
  Sketch out = a;
  for (size_t i = 0; i < out.support_counts.size(); ++i) {
    out.support_counts[i] += b.support_counts[i];
  }
  out.n += b.n;
  return out;
}

// Unbiased frequency estimates from a sketch.
inline FrequencyVector estimate(const ProtocolSpec& spec,
                                const Sketch& sketch) {
  if (sketch.n < 1) throw InputError("estimate: empty sketch");
  if (sketch.support_counts.size() != spec.d) {
    throw InputError("estimate: sketch domain mismatch");
  }
  FrequencyVector out;
  out.tag = VectorTag::kEstimated;
  out.values.resize(spec.d);
  const double n = static_cast<double>(sketch.n);
  const double denom = spec.p - spec.q;
  for (uint32_t v = 0; v < spec.d; ++v) {
    out.values[v] = (sketch.support_counts[v] / n - spec.q) / denom;
  }
  return out;
}

// Value-independent approximation of Var[f^(v)]; exact when f(v) = 0.
// For OUE (and OLH with the ideal real-valued g) this reduces to
// 4 e^eps / (n (e^eps - 1)^2).
inline double estimator_variance(const ProtocolSpec& spec, int64_t n) {
  if (n < 1) throw ParameterError("estimator_variance: n must be >= 1");
  const double denom = spec.p - spec.q;
  return spec.q * (1.0 - spec.q) / (n * denom * denom);
}

}  // namespace ldpbench
