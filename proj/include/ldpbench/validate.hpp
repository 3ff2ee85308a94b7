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
// Self-contained invariant checks behind the `validate` CLI subcommand.
// Each check recomputes a property through an independent route (bisection,
// brute-force rescan, closed forms) rather than calling the code under
// check twice.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ldpbench/datasets.hpp"
#include "ldpbench/engine.hpp"
#include "ldpbench/error.hpp"
#include "ldpbench/metrics.hpp"
#include "ldpbench/postprocess.hpp"
#include "ldpbench/protocols.hpp"
#include "ldpbench/random.hpp"
#include "ldpbench/report.hpp"

namespace ldpbench {

struct ValidationResult {
  std::string name;
  bool passed = false;
  std::string detail;  // failure reason, empty on success
};

namespace internal {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(message);
}

// Worst-case report likelihood ratio between two inputs, from the protocol
// parameters in closed form. For BLH and OLH this is the ratio conditional
// on the hash seed, which is the binding one.
inline double worst_case_ratio(const ProtocolSpec& spec) {
  switch (spec.kind) {
    case ProtocolKind::kGrr:
      return spec.p / spec.q;
    case ProtocolKind::kBlh:
    case ProtocolKind::kOlh: {
      const double flip = (1.0 - spec.p) / (spec.g - 1);
      return spec.p / flip;
    }
    case ProtocolKind::kRappor:
    case ProtocolKind::kOue: {
      // Bits are independent; only the two bits at the differing values
      // matter, and each contributes its own worst factor.
      const double p_in = spec.p;   // Pr[bit = 1 | true value here]
      const double q_in = spec.q;   // Pr[bit = 1 | true value elsewhere]
      return (p_in * (1.0 - q_in)) / (q_in * (1.0 - p_in));
    }
    case ProtocolKind::kSs: {
      // Subsets containing v1 but not v2: Pr scale p / C(d-1, k-1) against
      // (1-p) / C(d-1, k); the binomial ratio is (d-k)/k.
      const double d = spec.d;
      const double k = spec.k;
      return (spec.p / (1.0 - spec.p)) * ((d - k) / k);
    }
  }
  throw Error("worst_case_ratio: unknown protocol");
}

inline void check_privacy_ratios() {
  const std::vector<ProtocolKind> kinds = {
      ProtocolKind::kGrr, ProtocolKind::kBlh,    ProtocolKind::kOlh,
      ProtocolKind::kSs,  ProtocolKind::kRappor, ProtocolKind::kOue};
  for (ProtocolKind kind : kinds) {
    for (double eps : {0.5, 1.0, 2.0, 4.0}) {
      for (uint32_t d : {4u, 100u}) {
        const ProtocolSpec spec = build_protocol(kind, d, eps);
        const double ratio = worst_case_ratio(spec);
        std::ostringstream msg;
        msg << protocol_name(kind) << " d=" << d << " eps=" << eps
            << " ratio=" << ratio;
        require(ratio <= std::exp(eps) + 1e-9, "ratio above budget: " + msg.str());
        require(ratio > 0, "non-positive ratio: " + msg.str());
      }
    }
  }
}

inline void check_estimator_unbiased() {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kGrr, 8, 1.0);
  GeneratorConfig gc;
  gc.kind = GeneratorConfig::Kind::kZipfian;
  gc.d = 8;
  gc.n = 20000;
  gc.s = 1.5;
  gc.seed = 11;
  const Population pop = gen_zipf(gc);
  const FrequencyVector truth = true_frequencies(pop);
  const int runs = 5;
  std::vector<double> mean(spec.d, 0.0);
  for (int run = 0; run < runs; ++run) {
    Rng rng(derive_seed(99, 0, run, 0));
    Sketch sketch = make_sketch(spec.d);
    for (uint32_t v : pop.values) {
      accumulate_report(spec, perturb(spec, v, rng), sketch);
    }
    const FrequencyVector estimated = estimate(spec, sketch);
    for (uint32_t v = 0; v < spec.d; ++v) mean[v] += estimated.values[v];
  }
  const double se = std::sqrt(estimator_variance(spec, gc.n) / runs);
  for (uint32_t v = 0; v < spec.d; ++v) {
    mean[v] /= runs;
    require(std::abs(mean[v] - truth.values[v]) <= 8 * se,
            "estimate far from truth at value " + std::to_string(v));
  }
}

// Recovers the projection threshold by bisection on
// g(tau) = sum(max(x - tau, 0)) - 1 and compares against norm_sub.
inline void check_projection_bisection() {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const uint32_t d = 2 + static_cast<uint32_t>(rng.uniform_below(31));
    std::vector<double> x(d);
    bool any_positive = false;
    for (double& v : x) {
      v = 2.0 * rng.uniform_double() - 1.0;
      any_positive = any_positive || v > 0;
    }
    const PPResult projected = norm_sub(x);
    double total = 0;
    for (double v : projected.values) {
      require(v >= 0, "projection produced a negative entry");
      total += v;
    }
    require(std::abs(total - 1.0) <= 1e-9, "projection sum off unit");
    if (!any_positive) {
      for (double v : projected.values) {
        require(std::abs(v - 1.0 / d) <= 1e-12,
                "all-non-positive input must map to uniform");
      }
      continue;
    }
    double lo = *std::min_element(x.begin(), x.end()) - 1.0;
    double hi = *std::max_element(x.begin(), x.end());
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      double mass = 0;
      for (double v : x) mass += std::max(v - mid, 0.0);
      (mass > 1.0 ? lo : hi) = mid;
    }
    const double tau = 0.5 * (lo + hi);
    for (uint32_t i = 0; i < d; ++i) {
      require(std::abs(projected.values[i] - std::max(x[i] - tau, 0.0)) <=
                  1e-9,
              "projection disagrees with bisection threshold");
    }
  }
}

// Rescans every threshold candidate to confirm norm_cut picked the one
// with the smallest |kept mass - 1|, preferring smaller thresholds.
inline void check_norm_cut_choice() {
  Rng rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const uint32_t d = 2 + static_cast<uint32_t>(rng.uniform_below(31));
    std::vector<double> x(d);
    for (double& v : x) v = 2.5 * rng.uniform_double() - 1.0;
    const PPResult cut = norm_cut(x);
    require(cut.constants.theta.has_value(), "norm_cut must record theta");
    const double theta = *cut.constants.theta;
    const auto kept_mass = [&x](double candidate) {
      double total = 0;
      for (double v : x) {
        if (v > candidate) total += v;
      }
      return total;
    };
    for (uint32_t i = 0; i < d; ++i) {
      const double expect = x[i] > theta ? x[i] : 0.0;
      require(cut.values[i] == expect, "norm_cut output mismatch");
    }
    double positive_sum = 0;
    for (double v : x) positive_sum += std::max(v, 0.0);
    if (positive_sum <= 1.0) {
      require(theta == 0.0, "norm_cut must keep everything when mass <= 1");
      continue;
    }
    const double chosen = std::abs(kept_mass(theta) - 1.0);
    std::vector<double> candidates = {0.0};
    for (double v : x) {
      if (v > 0) candidates.push_back(v);
    }
    for (double candidate : candidates) {
      const double diff = std::abs(kept_mass(candidate) - 1.0);
      require(diff > chosen - 1e-12, "norm_cut missed a better threshold");
    }
  }
}

inline void check_metric_identities() {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const uint32_t d = 2 + static_cast<uint32_t>(rng.uniform_below(15));
    std::vector<double> f(d);
    double total = 0;
    for (double& v : f) {
      v = rng.uniform_double() + 1e-6;
      total += v;
    }
    for (double& v : f) v /= total;
    std::vector<double> g(d);
    for (double& v : g) v = 2.0 * rng.uniform_double() - 0.5;
    require(l1(f, f) == 0, "l1(f, f) must be 0");
    require(l2(f, f) == 0, "l2(f, f) must be 0");
    require(kl(f, f) <= 1e-12, "kl(f, f) must vanish");
    require(emd(f, f) <= 1e-12, "emd(f, f) must vanish");
    require(l2(f, g) <= l1(f, g) + 1e-15, "l2 must not exceed l1");
    require(kl(f, g) >= -1e-12, "kl must be non-negative");
    require(emd(f, g) >= 0, "emd must be non-negative");
  }
}

inline void check_seed_uniqueness() {
  std::set<uint64_t> seen;
  int64_t expected = 0;
  for (uint64_t group = 0; group < 8; ++group) {
    for (uint64_t run = 0; run < 20; ++run) {
      for (uint64_t chunk = 0; chunk < 8; ++chunk) {
        seen.insert(derive_seed(1, group, run, chunk));
        ++expected;
      }
      seen.insert(derive_seed(1, group, run, kPopulationSeedTag));
      ++expected;
    }
  }
  require(static_cast<int64_t>(seen.size()) == expected,
          "derived seed collision");
}

inline ExperimentConfig tiny_config() {
  ExperimentConfig config;
  DatasetConfig dc;
  dc.kind = DatasetConfig::Kind::kUniform;
  dc.name = "tiny";
  dc.n = 2000;
  dc.d = 4;
  dc.seed = 5;
  config.datasets = {dc};
  config.protocols = {ProtocolKind::kGrr, ProtocolKind::kOue};
  config.epsilons = {1.0};
  config.pp_methods = {PPKind::kNoPP, PPKind::kNormSub};
  config.metrics = {MetricKind::kL1};
  config.runs = 3;
  config.chunk_count = 4;
  config.master_seed = 17;
  return config;
}

inline void check_determinism() {
  const ExperimentConfig config = tiny_config();
  const auto render = [](const MatrixResult& result) {
    std::ostringstream out;
    emit_results_csv(result.cells, out);
    return out.str();
  };
  const std::string serial = render(run_matrix(config, 1));
  require(serial == render(run_matrix(config, 1)),
          "repeated serial runs differ");
  require(serial == render(run_matrix(config, 4)),
          "threaded run differs from serial run");
}

inline void check_win_recount() {
  Rng rng(31);
  Cells cells;
  const std::vector<PPKind> methods = {PPKind::kNoPP, PPKind::kBasePos,
                                       PPKind::kNorm, PPKind::kNormSub};
  const int runs = 10;
  for (PPKind pp : methods) {
    CellKey key;
    key.dataset = "synthetic";
    key.protocol = ProtocolKind::kOlh;
    key.epsilon = 1.0;
    key.pp = pp;
    key.metric = MetricKind::kL1;
    CellResult cell;
    for (int run = 0; run < runs; ++run) {
      cell.per_run_values.push_back(rng.uniform_below(4) * 0.25);
    }
    internal::cell_statistics(cell);
    cells.emplace_back(key, cell);
  }
  const std::vector<WinTableEntry> table = win_table(cells);
  require(table.size() == 1, "expected a single group");
  for (const auto& [pp, wins, mean] : table[0].methods) {
    int64_t recount = 0;
    for (int run = 0; run < runs; ++run) {
      double best = cells[0].second.per_run_values[run];
      double mine = 0;
      for (const auto& [key, cell] : cells) {
        best = std::min(best, cell.per_run_values[run]);
        if (key.pp == pp) mine = cell.per_run_values[run];
      }
      if (mine == best) ++recount;
    }
    require(wins == recount, "win count disagrees with brute-force recount");
    (void)mean;
  }
}

}  // namespace internal

// Runs every product invariant check; returns one entry per check.
inline std::vector<ValidationResult> run_validation() {
  const std::vector<std::pair<std::string, std::function<void()>>> checks = {
      {"privacy-ratio-bounds", internal::check_privacy_ratios},
      {"estimator-unbiasedness", internal::check_estimator_unbiased},
      {"projection-bisection", internal::check_projection_bisection},
      {"norm-cut-threshold", internal::check_norm_cut_choice},
      {"metric-identities", internal::check_metric_identities},
      {"seed-uniqueness", internal::check_seed_uniqueness},
      {"engine-determinism", internal::check_determinism},
      {"win-table-recount", internal::check_win_recount},
  };
  std::vector<ValidationResult> results;
  for (const auto& [name, body] : checks) {
    ValidationResult result;
    result.name = name;
    try {
      body();
      result.passed = true;
    } catch (const std::exception& e) {
      result.passed = false;
      result.detail = e.what();
    }
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace ldpbench
