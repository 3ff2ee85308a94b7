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
// Post-processing methods that transform an estimated frequency vector into
// a cleaned-up one: BasePos, Norm, NormCut, NormSub, NormMul, Power and
// PowerNS, plus the NoPP identity. All methods are deterministic.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ldpbench/error.hpp"
#include "ldpbench/protocols.hpp"
#include "ldpbench/types.hpp"

namespace ldpbench {

struct PPResult {
  std::vector<double> values;
  NormalizationConstants constants;
};

// Zeroes negative entries.
inline PPResult base_pos(const std::vector<double>& fhat) {
  PPResult out;
  out.values.reserve(fhat.size());
  for (double x : fhat) out.values.push_back(std::max(x, 0.0));
  return out;
}

// Adds the constant that makes the vector sum to 1. Entries may stay or
// become negative.
inline PPResult norm(const std::vector<double>& fhat) {
  if (fhat.empty()) throw ParameterError("norm: empty input");
  const double total = std::accumulate(fhat.begin(), fhat.end(), 0.0);
  const double sigma = (1.0 - total) / static_cast<double>(fhat.size());
  PPResult out;
  out.constants.sigma = sigma;
  out.values.reserve(fhat.size());
  for (double x : fhat) out.values.push_back(x + sigma);
  return out;
}

// Zeroes all entries at or below a threshold theta. The threshold is picked
// from {0} union {positive entries} so the surviving sum is as close to 1
// as a hard cut allows; if the positives already sum to at most 1 the
// threshold is 0. Ties go to the smaller theta (keep more values).
inline PPResult norm_cut(const std::vector<double>& fhat) {
  if (fhat.empty()) throw ParameterError("norm_cut: empty input");
  std::vector<double> positives;
  for (double x : fhat) {
    if (x > 0) positives.push_back(x);
  }
  std::sort(positives.begin(), positives.end());
  double theta = 0.0;
  const double positive_sum =
      std::accumulate(positives.begin(), positives.end(), 0.0);
  if (positive_sum > 1.0) {
    // Suffix sums over the ascending positives: suffix[i] is the mass of
    // entries with index >= i.
    std::vector<double> suffix(positives.size() + 1, 0.0);
    for (size_t i = positives.size(); i-- > 0;) {
      suffix[i] = suffix[i + 1] + positives[i];
    }
    double best_diff = std::abs(positive_sum - 1.0);  // candidate theta = 0
    for (size_t i = 0; i < positives.size(); ++i) {
      // Sum of entries strictly greater than positives[i].
      const size_t j =
          std::upper_bound(positives.begin(), positives.end(), positives[i]) -
          positives.begin();
      const double diff = std::abs(suffix[j] - 1.0);
      if (diff < best_diff) {
        best_diff = diff;
        theta = positives[i];
      }
    }
  }
  PPResult out;
  out.constants.theta = theta;
  out.values.reserve(fhat.size());
  for (double x : fhat) out.values.push_back(x > theta ? x : 0.0);
  return out;
}

// Euclidean projection onto the probability simplex: f~(v) =
// max(f^(v) - tau, 0) for the unique tau giving unit sum. Computed by the
// Michelot active-set iteration; tau can be negative when the input is
// mass-deficient. All-non-positive inputs fall back to the uniform vector.
inline PPResult norm_sub(const std::vector<double>& fhat) {
  const size_t d = fhat.size();
  if (d == 0) throw ParameterError("norm_sub: empty input");
  PPResult out;
  const bool any_positive =
      std::any_of(fhat.begin(), fhat.end(), [](double x) { return x > 0; });
  if (!any_positive) {
    out.values.assign(d, 1.0 / static_cast<double>(d));
    return out;
  }
  std::vector<uint8_t> active(d, 1);
  double active_sum = std::accumulate(fhat.begin(), fhat.end(), 0.0);
  size_t active_count = d;
  double tau = 0.0;
  for (size_t iteration = 0; iteration <= d; ++iteration) {
    tau = (active_sum - 1.0) / static_cast<double>(active_count);
    size_t removed = 0;
    for (size_t i = 0; i < d; ++i) {
      if (active[i] && fhat[i] - tau <= 0) {
        active[i] = 0;
        active_sum -= fhat[i];
        ++removed;
      }
    }
    if (removed == 0) break;
    active_count -= removed;
  }
  out.constants.delta = -tau;
  out.values.reserve(d);
  for (double x : fhat) out.values.push_back(std::max(x - tau, 0.0));
  return out;
}

// Zeroes negatives and rescales the rest to unit sum. All-non-positive
// inputs fall back to the uniform vector.
inline PPResult norm_mul(const std::vector<double>& fhat) {
  const size_t d = fhat.size();
  if (d == 0) throw ParameterError("norm_mul: empty input");
  double positive_sum = 0;
  for (double x : fhat) positive_sum += std::max(x, 0.0);
  PPResult out;
  if (positive_sum <= 0) {
    out.values.assign(d, 1.0 / static_cast<double>(d));
    return out;
  }
  const double alpha = 1.0 / positive_sum;
  out.constants.alpha = alpha;
  out.values.reserve(d);
  for (double x : fhat) out.values.push_back(alpha * std::max(x, 0.0));
  return out;
}

namespace internal {

// Rank-i frequencies of the power-law pmf with exponent s, i = 1..d.
inline std::vector<double> power_law_atoms(size_t d, double s) {
  std::vector<double> atoms(d);
  double total = 0;
  for (size_t i = 0; i < d; ++i) {
    atoms[i] = std::pow(static_cast<double>(i + 1), -s);
    total += atoms[i];
  }
  for (double& a : atoms) a /= total;
  return atoms;
}

inline double power_fit_sse(const std::vector<double>& sorted_desc, double s) {
  const std::vector<double> atoms = power_law_atoms(sorted_desc.size(), s);
  double sse = 0;
  for (size_t i = 0; i < atoms.size(); ++i) {
    const double diff = sorted_desc[i] - atoms[i];
    sse += diff * diff;
  }
  return sse;
}

// Least-squares fit of the power-law exponent to the descending-sorted
// estimates: coarse grid over [0.05, 5.0] in steps of 0.05, then
// golden-section refinement of the bracketing interval to width 1e-4.
inline double fit_power_exponent(const std::vector<double>& sorted_desc) {
  constexpr double kStep = 0.05;
  constexpr int kGridPoints = 100;  // 0.05, 0.10, ..., 5.00
  int best_index = 1;
  double best_sse = power_fit_sse(sorted_desc, kStep);
  for (int j = 2; j <= kGridPoints; ++j) {
    const double sse = power_fit_sse(sorted_desc, kStep * j);
    if (sse < best_sse) {
      best_sse = sse;
      best_index = j;
    }
  }
  double lo = kStep * std::max(1, best_index - 1);
  double hi = kStep * std::min(kGridPoints, best_index + 1);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - ratio * (hi - lo);
  double e = lo + ratio * (hi - lo);
  double sse_c = power_fit_sse(sorted_desc, c);
  double sse_e = power_fit_sse(sorted_desc, e);
  while (hi - lo > 1e-4) {
    if (sse_c < sse_e) {
      hi = e;
      e = c;
      sse_e = sse_c;
      c = hi - ratio * (hi - lo);
      sse_c = power_fit_sse(sorted_desc, c);
    } else {
      lo = c;
      c = e;
      sse_c = sse_e;
      e = lo + ratio * (hi - lo);
      sse_e = power_fit_sse(sorted_desc, e);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace internal

// Fits a power-law pmf to the estimates by rank, then replaces each entry
// with its posterior mean under that prior and Gaussian noise of scale
// noise_sd. Output entries lie strictly inside (0, 1); the sum is not
// constrained.
inline PPResult power(const std::vector<double>& fhat, double noise_sd) {
  const size_t d = fhat.size();
  if (d < 2) throw ParameterError("power: need at least 2 entries");
  if (!(noise_sd > 0)) throw ParameterError("power: noise_sd must be > 0");
  std::vector<double> sorted_desc = fhat;
  std::sort(sorted_desc.begin(), sorted_desc.end(), std::greater<double>());
  const double s = internal::fit_power_exponent(sorted_desc);
  const std::vector<double> atoms = internal::power_law_atoms(d, s);

  PPResult out;
  out.constants.power_exponent = s;
  out.constants.noise_sd = noise_sd;
  out.values.resize(d);
  const double inv_two_var = 1.0 / (2.0 * noise_sd * noise_sd);
  std::vector<double> log_weights(d);
  for (size_t v = 0; v < d; ++v) {
    double max_log = -1e300;
    for (size_t i = 0; i < d; ++i) {
      const double diff = fhat[v] - atoms[i];
      log_weights[i] = -diff * diff * inv_two_var;
      max_log = std::max(max_log, log_weights[i]);
    }
    // Shift by the max exponent so at least one weight is exactly 1.
    double weight_sum = 0;
    double weighted_atoms = 0;
    for (size_t i = 0; i < d; ++i) {
      const double w = std::exp(log_weights[i] - max_log);
      weight_sum += w;
      weighted_atoms += w * atoms[i];
    }
    out.values[v] = weighted_atoms / weight_sum;
  }
  return out;
}

// Power followed by NormSub; output lies on the probability simplex.
inline PPResult power_ns(const std::vector<double>& fhat, double noise_sd) {
  PPResult powered = power(fhat, noise_sd);
  PPResult projected = norm_sub(powered.values);
  projected.constants.power_exponent = powered.constants.power_exponent;
  projected.constants.noise_sd = powered.constants.noise_sd;
  return projected;
}

// Dispatches to one method. Power and PowerNS receive
// noise_sd = sqrt(estimator_variance) from the protocol context.
inline PPResult apply(PPKind method, const std::vector<double>& fhat,
                      const ProtocolSpec& spec, int64_t n) {
  if (fhat.size() != spec.d) throw ParameterError("apply: length mismatch");
  switch (method) {
    case PPKind::kNoPP: {
      PPResult out;
      out.values = fhat;
      return out;
    }
    case PPKind::kBasePos: return base_pos(fhat);
    case PPKind::kNorm: return norm(fhat);
    case PPKind::kNormCut: return norm_cut(fhat);
    case PPKind::kNormSub: return norm_sub(fhat);
    case PPKind::kNormMul: return norm_mul(fhat);
    case PPKind::kPower:
      return power(fhat, std::sqrt(estimator_variance(spec, n)));
    case PPKind::kPowerNS:
      return power_ns(fhat, std::sqrt(estimator_variance(spec, n)));
  }
  throw ParameterError("apply: unknown method");
}

}  // namespace ldpbench
