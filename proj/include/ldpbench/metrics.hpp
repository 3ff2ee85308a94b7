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
// Utility metrics between a true frequency vector f and a post-processed
// vector f~: L1, L2, KL divergence, and 1-D earth mover's distance.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ldpbench/error.hpp"
#include "ldpbench/types.hpp"

namespace ldpbench {

namespace internal {

inline void check_same_length(const std::vector<double>& f,
                              const std::vector<double>& g) {
  if (f.size() != g.size()) throw InputError("metric: length mismatch");
  if (f.empty()) throw InputError("metric: empty vectors");
}

inline void check_distribution(const std::vector<double>& f) {
  double total = 0;
  for (double x : f) {
    if (!(x >= -1e-12)) throw InputError("metric: negative entry in f");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InputError("metric: f does not sum to 1");
  }
}

}  // namespace internal

inline double l1(const std::vector<double>& f, const std::vector<double>& g) {
  internal::check_same_length(f, g);
  double total = 0;
  for (size_t i = 0; i < f.size(); ++i) total += std::abs(g[i] - f[i]);
  return total;
}

inline double l2(const std::vector<double>& f, const std::vector<double>& g) {
  internal::check_same_length(f, g);
  double total = 0;
  for (size_t i = 0; i < f.size(); ++i) {
    const double diff = g[i] - f[i];
    total += diff * diff;
  }
  return std::sqrt(total);
}

inline constexpr double kKlFloor = 1e-12;

// KL(f || g') where g' is g clamped below at 1e-12 and renormalized, so the
// divergence stays finite on post-processed vectors containing zeros or
// negatives. f must be a valid distribution; terms with f(v) = 0 contribute
// nothing.
inline double kl(const std::vector<double>& f, const std::vector<double>& g) {
  internal::check_same_length(f, g);
  internal::check_distribution(f);
  double clamped_total = 0;
  for (double x : g) clamped_total += std::max(x, kKlFloor);
  double total = 0;
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] <= 0) continue;
    const double gi = std::max(g[i], kKlFloor) / clamped_total;
    total += f[i] * std::log(f[i] / gi);
  }
  return total;
}

// Earth mover's distance on the ordered domain 0..d-1 with ground distance
// |v1 - v2|. Both inputs are clamped at 0 and normalized to unit mass; the
// 1-D closed form is the L1 distance between the two CDFs, which equals the
// optimal-transport LP value.
inline double emd(const std::vector<double>& f, const std::vector<double>& g) {
  internal::check_same_length(f, g);
  double f_total = 0;
  double g_total = 0;
  for (double x : f) f_total += std::max(x, 0.0);
  for (double x : g) g_total += std::max(x, 0.0);
  if (f_total <= 0 || g_total <= 0) {
    throw InputError("emd: non-positive total mass");
  }
  double cdf_diff = 0;
  double total = 0;
  for (size_t i = 0; i + 1 < f.size(); ++i) {
    cdf_diff += std::max(f[i], 0.0) / f_total - std::max(g[i], 0.0) / g_total;
    total += std::abs(cdf_diff);
  }
  return total;
}

inline double evaluate(MetricKind kind, const std::vector<double>& f,
                       const std::vector<double>& g) {
  switch (kind) {
    case MetricKind::kL1: return l1(f, g);
    case MetricKind::kL2: return l2(f, g);
    case MetricKind::kKl: return kl(f, g);
    case MetricKind::kEmd: return emd(f, g);
  }
  throw ParameterError("evaluate: unknown metric");
}

}  // namespace ldpbench
