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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldpbench/error.hpp"

namespace ldpbench {

// ---------------------------------------------------------------------------
// Protocols
// ---------------------------------------------------------------------------

enum class ProtocolKind { kGrr, kBlh, kOlh, kRappor, kOue, kSs };

inline const char* protocol_name(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kGrr: return "GRR";
    case ProtocolKind::kBlh: return "BLH";
    case ProtocolKind::kOlh: return "OLH";
    case ProtocolKind::kRappor: return "RAPPOR";
    case ProtocolKind::kOue: return "OUE";
    case ProtocolKind::kSs: return "SS";
  }
  throw ParameterError("protocol_name: unknown kind");
}

inline ProtocolKind parse_protocol(const std::string& name) {
  if (name == "GRR") return ProtocolKind::kGrr;
  if (name == "BLH") return ProtocolKind::kBlh;
  if (name == "OLH") return ProtocolKind::kOlh;
  if (name == "RAPPOR") return ProtocolKind::kRappor;
  if (name == "OUE") return ProtocolKind::kOue;
  if (name == "SS") return ProtocolKind::kSs;
  throw ParameterError("unknown protocol: " + name);
}

// Parameters of one frequency-oracle protocol instance.
//
// p and q are the *support* probabilities consumed by the estimator: a
// report from a user with true value v supports v with probability p and
// supports any other fixed value with probability q. For GRR, RAPPOR, OUE
// and SS these coincide with the mechanism's keep/flip probabilities; for
// BLH/OLH, p is the bucket keep probability and q = 1/g (the chance an
// unrelated value hashes into the reported bucket).
struct ProtocolSpec {
  ProtocolKind kind = ProtocolKind::kGrr;
  uint32_t d = 0;       // domain size
  double epsilon = 0;   // privacy budget
  double p = 0;         // true-value support probability
  double q = 0;         // other-value support probability
  uint32_t g = 0;       // hash range (BLH/OLH only)
  uint32_t k = 0;       // subset size (SS only)
};

// One user's perturbed report. The payload in use depends on `kind`:
// GRR uses `value`; BLH/OLH use (hash_a, hash_b, bucket); RAPPOR/OUE use
// `bits` (length d); SS uses `subset` (k distinct values, ascending).
struct Report {
  ProtocolKind kind = ProtocolKind::kGrr;
  uint32_t value = 0;
  uint64_t hash_a = 0;
  uint64_t hash_b = 0;
  uint32_t bucket = 0;
  std::vector<uint8_t> bits;
  std::vector<uint32_t> subset;
};

// Server-side aggregation state: per-value support counts. Mergeable by
// elementwise addition.
struct Sketch {
  std::vector<int64_t> support_counts;
  int64_t n = 0;
};

// ---------------------------------------------------------------------------
// Frequency vectors
// ---------------------------------------------------------------------------

enum class VectorTag { kTrue, kEstimated, kPostProcessed };

struct FrequencyVector {
  std::vector<double> values;
  VectorTag tag = VectorTag::kEstimated;
};

// ---------------------------------------------------------------------------
// Post-processing
// ---------------------------------------------------------------------------

enum class PPKind {
  kNoPP,
  kBasePos,
  kNorm,
  kNormCut,
  kNormSub,
  kNormMul,
  kPower,
  kPowerNS,
};

inline const char* pp_name(PPKind kind) {
  switch (kind) {
    case PPKind::kNoPP: return "NoPP";
    case PPKind::kBasePos: return "BasePos";
    case PPKind::kNorm: return "Norm";
    case PPKind::kNormCut: return "NormCut";
    case PPKind::kNormSub: return "NormSub";
    case PPKind::kNormMul: return "NormMul";
    case PPKind::kPower: return "Power";
    case PPKind::kPowerNS: return "PowerNS";
  }
  throw ParameterError("pp_name: unknown kind");
}

inline PPKind parse_pp(const std::string& name) {
  if (name == "NoPP") return PPKind::kNoPP;
  if (name == "BasePos") return PPKind::kBasePos;
  if (name == "Norm") return PPKind::kNorm;
  if (name == "NormCut") return PPKind::kNormCut;
  if (name == "NormSub") return PPKind::kNormSub;
  if (name == "NormMul") return PPKind::kNormMul;
  if (name == "Power") return PPKind::kPower;
  if (name == "PowerNS") return PPKind::kPowerNS;
  throw ParameterError("unknown post-processing method: " + name);
}

// Constants fitted by a post-processing run. Only the fields belonging to
// the method that produced the output are set.
struct NormalizationConstants {
  std::optional<double> sigma;           // Norm: additive constant
  std::optional<double> theta;           // NormCut: cut threshold
  std::optional<double> delta;           // NormSub: additive constant
  std::optional<double> alpha;           // NormMul: multiplicative factor
  std::optional<double> power_exponent;  // Power: fitted exponent s
  std::optional<double> noise_sd;        // Power: noise scale used
};

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

enum class MetricKind { kL1, kL2, kKl, kEmd };

inline const char* metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::kL1: return "l1";
    case MetricKind::kL2: return "l2";
    case MetricKind::kKl: return "kl";
    case MetricKind::kEmd: return "emd";
  }
  throw ParameterError("metric_name: unknown kind");
}

inline MetricKind parse_metric(const std::string& name) {
  if (name == "l1") return MetricKind::kL1;
  if (name == "l2") return MetricKind::kL2;
  if (name == "kl") return MetricKind::kKl;
  if (name == "emd") return MetricKind::kEmd;
  throw ParameterError("unknown metric: " + name);
}

}  // namespace ldpbench
