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

#include "ldpbench/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "ldpbench/error.hpp"
#include "ldpbench/random.hpp"
#include "ldpbench/types.hpp"
#include "support/oracles.hpp"

namespace ldpbench {
namespace {

constexpr double kLn3 = 1.0986122886681098;

TEST(BuildProtocol, GrrAnchor) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kGrr, 4, kLn3);
  EXPECT_EQ(spec.d, 4u);
  EXPECT_NEAR(spec.p, 0.5, 1e-12);
  EXPECT_NEAR(spec.q, 1.0 / 6.0, 1e-12);
  const ProtocolSpec wide = build_protocol(ProtocolKind::kGrr, 16, 1.0);
  EXPECT_NEAR(wide.p, 0.15341678469596018, 1e-15);
  EXPECT_NEAR(wide.q, 0.056438881020269324, 1e-15);
}

TEST(BuildProtocol, BlhAnchor) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kBlh, 100, 1.0);
  EXPECT_EQ(spec.g, 2u);
  EXPECT_NEAR(spec.p, 0.7310585786300049, 1e-15);
  EXPECT_EQ(spec.q, 0.5);
  // The hash range never depends on epsilon for the binary variant.
  EXPECT_EQ(build_protocol(ProtocolKind::kBlh, 100, 4.0).g, 2u);
}

TEST(BuildProtocol, OlhHashRangeTracksEpsilon) {
  const ProtocolSpec a = build_protocol(ProtocolKind::kOlh, 128, kLn3);
  EXPECT_EQ(a.g, 4u);
  EXPECT_NEAR(a.p, 0.5, 1e-12);
  EXPECT_NEAR(a.q, 0.25, 1e-12);

  const ProtocolSpec b = build_protocol(ProtocolKind::kOlh, 128, 1.0);
  EXPECT_EQ(b.g, 4u);
  EXPECT_NEAR(b.p, 0.4753668864186717, 1e-15);
  EXPECT_EQ(b.q, 0.25);

  const ProtocolSpec c = build_protocol(ProtocolKind::kOlh, 128, 0.5);
  EXPECT_EQ(c.g, 3u);
  EXPECT_NEAR(c.p, 0.45186276187760605, 1e-15);
}

TEST(BuildProtocol, RapporSplitsBudgetPerBit) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kRappor, 64, 2.0);
  EXPECT_NEAR(spec.p, 0.7310585786300049, 1e-15);
  EXPECT_NEAR(spec.q, 0.2689414213699951, 1e-15);
  EXPECT_NEAR(spec.p + spec.q, 1.0, 1e-15);
  // The per-report ratio p(1-q) / (q(1-p)) must spend the whole budget.
  const double ratio =
      spec.p * (1.0 - spec.q) / (spec.q * (1.0 - spec.p));
  EXPECT_NEAR(ratio, std::exp(2.0), 1e-9);
}

TEST(BuildProtocol, OueAnchor) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kOue, 64, kLn3);
  EXPECT_EQ(spec.p, 0.5);
  EXPECT_NEAR(spec.q, 0.25, 1e-12);
  const ProtocolSpec b = build_protocol(ProtocolKind::kOue, 64, 1.3);
  EXPECT_NEAR(b.q, 0.2141650169574414, 1e-15);
}

TEST(BuildProtocol, SsSubsetSizeAndRates) {
  const ProtocolSpec a = build_protocol(ProtocolKind::kSs, 100, kLn3);
  EXPECT_EQ(a.k, 25u);
  EXPECT_NEAR(a.p, 0.5, 1e-12);
  EXPECT_NEAR(a.q, 24.5 / 99.0, 1e-12);

  const ProtocolSpec b = build_protocol(ProtocolKind::kSs, 4, 0.5);
  EXPECT_EQ(b.k, 2u);
  EXPECT_NEAR(b.p, 0.6224593312018546, 1e-15);
  EXPECT_NEAR(b.q, 0.45918022293271515, 1e-15);

  EXPECT_EQ(build_protocol(ProtocolKind::kSs, 4, 1.0).k, 1u);
  EXPECT_NEAR(build_protocol(ProtocolKind::kSs, 4, 1.0).p,
              0.4753668864186717, 1e-15);
  EXPECT_EQ(build_protocol(ProtocolKind::kSs, 4, 2.0).k, 1u);
  EXPECT_NEAR(build_protocol(ProtocolKind::kSs, 4, 2.0).p,
              0.7112345942275938, 1e-15);
  EXPECT_EQ(build_protocol(ProtocolKind::kSs, 32, 1.0).k, 9u);
}

TEST(BuildProtocol, RejectsBadParameters) {
  for (ProtocolKind kind :
       {ProtocolKind::kGrr, ProtocolKind::kBlh, ProtocolKind::kOlh,
        ProtocolKind::kRappor, ProtocolKind::kOue, ProtocolKind::kSs}) {
    EXPECT_THROW(build_protocol(kind, 1, 1.0), ParameterError);
    EXPECT_THROW(build_protocol(kind, 4, 0.0), ParameterError);
    EXPECT_THROW(build_protocol(kind, 4, -1.0), ParameterError);
    EXPECT_THROW(build_protocol(kind, 4,
                                std::numeric_limits<double>::quiet_NaN()),
                 ParameterError);
    EXPECT_THROW(build_protocol(kind, 4,
                                std::numeric_limits<double>::infinity()),
                 ParameterError);
    EXPECT_THROW(build_protocol(kind, 4, 701.0), ParameterError);
  }
  // OLH would need a hash range near e^eps; cap it well before overflow.
  EXPECT_THROW(build_protocol(ProtocolKind::kOlh, 4, 22.0), ParameterError);
  EXPECT_NO_THROW(build_protocol(ProtocolKind::kOlh, 4, 21.0));
  EXPECT_NO_THROW(build_protocol(ProtocolKind::kGrr, 4, 700.0));
}

TEST(HashPrime, CoversSmallDomainsWithFermatPrime) {
  EXPECT_EQ(hash_prime_for_domain(2), 65537u);
  EXPECT_EQ(hash_prime_for_domain(65536), 65537u);
  EXPECT_EQ(hash_prime_for_domain(65537), 65539u);
  EXPECT_EQ(smallest_prime_above(1), 2u);
  EXPECT_EQ(smallest_prime_above(2), 3u);
  EXPECT_EQ(smallest_prime_above(10), 11u);
  EXPECT_EQ(smallest_prime_above(89), 97u);
}

TEST(HashUniversal, RejectsOutOfRangeParameters) {
  EXPECT_THROW(hash_universal(0, 0, 65537, 4, 1), ParameterError);
  EXPECT_THROW(hash_universal(65537, 0, 65537, 4, 1), ParameterError);
  EXPECT_THROW(hash_universal(1, 65537, 65537, 4, 1), ParameterError);
  EXPECT_THROW(hash_universal(1, 0, 1, 4, 1), ParameterError);
  EXPECT_THROW(hash_universal(1, 0, 65537, 1, 1), ParameterError);
}

TEST(HashUniversal, MatchesWideReferenceImplementation) {
  const uint64_t P = 65537;
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const uint64_t a = 1 + rng.uniform_below(P - 1);
    const uint64_t b = rng.uniform_below(P);
    const uint32_t g = 2 + static_cast<uint32_t>(rng.uniform_below(14));
    const uint64_t v = rng.uniform_below(1u << 20);
    EXPECT_EQ(hash_universal(a, b, P, g, v), oracles::hash_oracle(a, b, P, g, v));
  }
}

TEST(HashUniversal, WidePathAgreesWithReducedInput) {
  // a*v + b == a*(v mod P) + b (mod P), so huge inputs must hash like
  // their residues. Exercises the 128-bit multiply branch.
  const uint64_t P = 65537;
  const uint64_t v = (uint64_t{1} << 40) + 7;
  for (uint64_t a : {uint64_t{1}, uint64_t{12345}, uint64_t{65536}}) {
    for (uint64_t b : {uint64_t{0}, uint64_t{678}}) {
      EXPECT_EQ(hash_universal(a, b, P, 8, v),
                hash_universal(a, b, P, 8, v % P));
      EXPECT_EQ(hash_universal(a, b, P, 8, v),
                oracles::hash_oracle(a, b, P, 8, v));
    }
  }
}

TEST(SampleDistinct, ProducesSortedDistinctSubsets) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const uint32_t m = 2 + static_cast<uint32_t>(rng.uniform_below(30));
    const uint32_t k = 1 + static_cast<uint32_t>(rng.uniform_below(m));
    const std::vector<uint32_t> subset = internal::sample_distinct(rng, m, k);
    ASSERT_EQ(subset.size(), k);
    for (size_t i = 0; i < subset.size(); ++i) {
      EXPECT_LT(subset[i], m);
      if (i > 0) EXPECT_LT(subset[i - 1], subset[i]);
    }
  }
}

TEST(SampleDistinct, FullDrawReturnsWholeDomain) {
  Rng rng(3);
  const std::vector<uint32_t> subset = internal::sample_distinct(rng, 6, 6);
  EXPECT_EQ(subset, (std::vector<uint32_t>{0, 1, 2, 3, 4, 5}));
}

TEST(SampleDistinct, InclusionIsUniform) {
  // Every element of {0..7} should appear in a random 3-subset with
  // probability 3/8.
  Rng rng(19);
  const int n = 40000;
  std::vector<int> hits(8, 0);
  for (int i = 0; i < n; ++i) {
    for (uint32_t v : internal::sample_distinct(rng, 8, 3)) hits[v] += 1;
  }
  const double expect = 3.0 / 8.0;
  const double se = std::sqrt(expect * (1.0 - expect) / n);
  for (int v = 0; v < 8; ++v) {
    EXPECT_NEAR(hits[v] / static_cast<double>(n), expect, 5.0 * se);
  }
}

TEST(Perturb, RejectsValueOutsideDomain) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kGrr, 4, 1.0);
  Rng rng(1);
  EXPECT_THROW(perturb(spec, 4, rng), ParameterError);
}

TEST(Perturb, GrrReportShape) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kGrr, 5, 0.7);
  Rng rng(23);
  for (int i = 0; i < 2000; ++i) {
    const Report report = perturb(spec, 2, rng);
    EXPECT_EQ(report.kind, ProtocolKind::kGrr);
    EXPECT_LT(report.value, spec.d);
  }
}

TEST(Perturb, LocalHashReportShape) {
  for (ProtocolKind kind : {ProtocolKind::kBlh, ProtocolKind::kOlh}) {
    const ProtocolSpec spec = build_protocol(kind, 12, 1.0);
    const uint64_t P = hash_prime_for_domain(spec.d);
    Rng rng(29);
    for (int i = 0; i < 2000; ++i) {
      const Report report = perturb(spec, 7, rng);
      EXPECT_EQ(report.kind, kind);
      EXPECT_GE(report.hash_a, 1u);
      EXPECT_LT(report.hash_a, P);
      EXPECT_LT(report.hash_b, P);
      EXPECT_LT(report.bucket, spec.g);
    }
  }
}

TEST(Perturb, BitVectorReportShape) {
  for (ProtocolKind kind : {ProtocolKind::kRappor, ProtocolKind::kOue}) {
    const ProtocolSpec spec = build_protocol(kind, 9, 1.0);
    Rng rng(31);
    for (int i = 0; i < 500; ++i) {
      const Report report = perturb(spec, 4, rng);
      EXPECT_EQ(report.kind, kind);
      ASSERT_EQ(report.bits.size(), spec.d);
      for (uint8_t bit : report.bits) EXPECT_LE(bit, 1);
    }
  }
}

TEST(Perturb, SubsetReportShape) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kSs, 20, 1.0);
  Rng rng(37);
  for (int i = 0; i < 2000; ++i) {
    const Report report = perturb(spec, 13, rng);
    EXPECT_EQ(report.kind, ProtocolKind::kSs);
    ASSERT_EQ(report.subset.size(), spec.k);
    for (size_t j = 0; j < report.subset.size(); ++j) {
      EXPECT_LT(report.subset[j], spec.d);
      if (j > 0) EXPECT_LT(report.subset[j - 1], report.subset[j]);
    }
  }
}

TEST(Perturb, GrrOutputDistributionMatchesEnumeration) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kGrr, 16, 1.0);
  const uint32_t v = 3;
  const std::vector<double> probs = oracles::grr_outcome_probs(spec, v);
  Rng rng(41);
  const int n = 160000;
  std::vector<int64_t> counts(spec.d, 0);
  for (int i = 0; i < n; ++i) counts[perturb(spec, v, rng).value] += 1;
  const double stat = oracles::chi2_statistic(counts, probs);
  EXPECT_LT(stat, oracles::chi2_crit_999(15));
}

TEST(Perturb, BitPatternDistributionMatchesEnumeration) {
  for (ProtocolKind kind : {ProtocolKind::kRappor, ProtocolKind::kOue}) {
    const ProtocolSpec spec = build_protocol(kind, 4, 1.2);
    const uint32_t v = 1;
    const std::vector<double> probs = oracles::bit_pattern_probs(spec, v);
    Rng rng(kind == ProtocolKind::kRappor ? 43 : 47);
    const int n = 120000;
    std::vector<int64_t> counts(16, 0);
    for (int i = 0; i < n; ++i) {
      const Report report = perturb(spec, v, rng);
      uint32_t mask = 0;
      for (uint32_t j = 0; j < 4; ++j) {
        if (report.bits[j]) mask |= 1u << j;
      }
      counts[mask] += 1;
    }
    const double stat = oracles::chi2_statistic(counts, probs);
    EXPECT_LT(stat, oracles::chi2_crit_999(15));
  }
}

TEST(Perturb, SingletonSubsetDistributionMatchesEnumeration) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kSs, 4, 1.0);
  ASSERT_EQ(spec.k, 1u);
  const uint32_t v = 2;
  const std::vector<uint32_t> masks = oracles::subset_masks(4, 1);
  const std::vector<double> probs = oracles::ss_subset_probs(spec, v, masks);
  Rng rng(53);
  const int n = 80000;
  std::vector<int64_t> counts(masks.size(), 0);
  for (int i = 0; i < n; ++i) {
    const Report report = perturb(spec, v, rng);
    uint32_t mask = 0;
    for (uint32_t item : report.subset) mask |= 1u << item;
    const auto it = std::find(masks.begin(), masks.end(), mask);
    ASSERT_NE(it, masks.end());
    counts[it - masks.begin()] += 1;
  }
  const double stat = oracles::chi2_statistic(counts, probs);
  EXPECT_LT(stat, oracles::chi2_crit_999(3));
}

TEST(Perturb, PairSubsetDistributionMatchesEnumeration) {
  // k = 2 exercises the subset sampler jointly with the inclusion coin.
  // Six outcomes; compare each cell against its enumerated probability.
  const ProtocolSpec spec = build_protocol(ProtocolKind::kSs, 4, 0.5);
  ASSERT_EQ(spec.k, 2u);
  const uint32_t v = 1;
  const std::vector<uint32_t> masks = oracles::subset_masks(4, 2);
  const std::vector<double> probs = oracles::ss_subset_probs(spec, v, masks);
  Rng rng(59);
  const int n = 120000;
  std::vector<int64_t> counts(masks.size(), 0);
  for (int i = 0; i < n; ++i) {
    const Report report = perturb(spec, v, rng);
    uint32_t mask = 0;
    for (uint32_t item : report.subset) mask |= 1u << item;
    const auto it = std::find(masks.begin(), masks.end(), mask);
    ASSERT_NE(it, masks.end());
    counts[it - masks.begin()] += 1;
  }
  for (size_t i = 0; i < masks.size(); ++i) {
    const double se = std::sqrt(probs[i] * (1.0 - probs[i]) / n);
    EXPECT_NEAR(counts[i] / static_cast<double>(n), probs[i], 5.0 * se);
  }
}

TEST(Perturb, LocalHashKeepRateMatchesP) {
  for (ProtocolKind kind : {ProtocolKind::kBlh, ProtocolKind::kOlh}) {
    const ProtocolSpec spec = build_protocol(kind, 32, 1.0);
    const uint64_t P = hash_prime_for_domain(spec.d);
    const uint32_t v = 5;
    Rng rng(61);
    const int n = 200000;
    int64_t kept = 0;
    std::vector<int64_t> other_buckets(spec.g, 0);
    for (int i = 0; i < n; ++i) {
      const Report report = perturb(spec, v, rng);
      const uint32_t own =
          oracles::hash_oracle(report.hash_a, report.hash_b, P, spec.g, v);
      if (report.bucket == own) {
        kept += 1;
      } else {
        other_buckets[(report.bucket + spec.g - own) % spec.g] += 1;
      }
    }
    const double se = std::sqrt(spec.p * (1.0 - spec.p) / n);
    EXPECT_NEAR(kept / static_cast<double>(n), spec.p, 5.0 * se);
    // Conditioned on a flip, the g-1 offsets from the true bucket are
    // uniform.
    const double flip = (1.0 - spec.p) / (spec.g - 1);
    const double flip_se = std::sqrt(flip * (1.0 - flip) / n);
    for (uint32_t offset = 1; offset < spec.g; ++offset) {
      EXPECT_NEAR(other_buckets[offset] / static_cast<double>(n), flip,
                  5.0 * flip_se);
    }
  }
}

TEST(Aggregate, CountsDirectReports) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kGrr, 4, 1.0);
  std::vector<Report> reports(4);
  reports[0].kind = ProtocolKind::kGrr;
  reports[0].value = 0;
  reports[1].kind = ProtocolKind::kGrr;
  reports[1].value = 1;
  reports[2].kind = ProtocolKind::kGrr;
  reports[2].value = 1;
  reports[3].kind = ProtocolKind::kGrr;
  reports[3].value = 3;
  const Sketch sketch = aggregate(spec, reports);
  EXPECT_EQ(sketch.n, 4);
  EXPECT_EQ(sketch.support_counts, (std::vector<int64_t>{1, 2, 0, 1}));
}

TEST(Aggregate, CountsBitVectors) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kOue, 3, 1.0);
  std::vector<Report> reports(2);
  reports[0].kind = ProtocolKind::kOue;
  reports[0].bits = {1, 0, 1};
  reports[1].kind = ProtocolKind::kOue;
  reports[1].bits = {0, 0, 1};
  const Sketch sketch = aggregate(spec, reports);
  EXPECT_EQ(sketch.n, 2);
  EXPECT_EQ(sketch.support_counts, (std::vector<int64_t>{1, 0, 2}));
}

TEST(Aggregate, CountsSubsets) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kSs, 4, 0.5);
  ASSERT_EQ(spec.k, 2u);
  std::vector<Report> reports(2);
  reports[0].kind = ProtocolKind::kSs;
  reports[0].subset = {0, 2};
  reports[1].kind = ProtocolKind::kSs;
  reports[1].subset = {1, 2};
  const Sketch sketch = aggregate(spec, reports);
  EXPECT_EQ(sketch.n, 2);
  EXPECT_EQ(sketch.support_counts, (std::vector<int64_t>{1, 1, 2, 0}));
}

TEST(Aggregate, LocalHashSupportsPreimageOfBucket) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kOlh, 10, 1.0);
  const uint64_t P = hash_prime_for_domain(spec.d);
  Report report;
  report.kind = ProtocolKind::kOlh;
  report.hash_a = 12345;
  report.hash_b = 678;
  report.bucket = 2;
  const Sketch sketch = aggregate(spec, {report});
  EXPECT_EQ(sketch.n, 1);
  for (uint32_t v = 0; v < spec.d; ++v) {
    const bool supported =
        oracles::hash_oracle(report.hash_a, report.hash_b, P, spec.g, v) ==
        report.bucket;
    EXPECT_EQ(sketch.support_counts[v], supported ? 1 : 0);
  }
}

TEST(Aggregate, RejectsMalformedReports) {
  const ProtocolSpec grr = build_protocol(ProtocolKind::kGrr, 4, 1.0);
  Report bad_value;
  bad_value.kind = ProtocolKind::kGrr;
  bad_value.value = 4;
  EXPECT_THROW(aggregate(grr, {bad_value}), InputError);

  Report mixed;
  mixed.kind = ProtocolKind::kOue;
  mixed.bits = {1, 0, 0, 0};
  EXPECT_THROW(aggregate(grr, {mixed}), InputError);

  const ProtocolSpec oue = build_protocol(ProtocolKind::kOue, 4, 1.0);
  Report short_bits;
  short_bits.kind = ProtocolKind::kOue;
  short_bits.bits = {1, 0};
  EXPECT_THROW(aggregate(oue, {short_bits}), InputError);

  const ProtocolSpec ss = build_protocol(ProtocolKind::kSs, 4, 0.5);
  Report wrong_size;
  wrong_size.kind = ProtocolKind::kSs;
  wrong_size.subset = {0};
  EXPECT_THROW(aggregate(ss, {wrong_size}), InputError);
  Report out_of_domain;
  out_of_domain.kind = ProtocolKind::kSs;
  out_of_domain.subset = {0, 4};
  EXPECT_THROW(aggregate(ss, {out_of_domain}), InputError);
}

TEST(MergeSketches, AddsCountsElementwise) {
  Sketch a = make_sketch(2);
  a.support_counts = {1, 0};
  a.n = 1;
  Sketch b = make_sketch(2);
  b.support_counts = {2, 3};
  b.n = 5;
  const Sketch merged = merge_sketches(a, b);
  EXPECT_EQ(merged.support_counts, (std::vector<int64_t>{3, 3}));
  EXPECT_EQ(merged.n, 6);
  EXPECT_THROW(merge_sketches(a, make_sketch(3)), InputError);
}

TEST(Estimate, InvertsPerturbationExactlyWhenNoiseless) {
  // A hand-built spec with p = 1, q = 0 turns the estimator into plain
  // empirical frequencies.
  ProtocolSpec spec;
  spec.kind = ProtocolKind::kGrr;
  spec.d = 4;
  spec.epsilon = 1.0;
  spec.p = 1.0;
  spec.q = 0.0;
  Sketch sketch = make_sketch(4);
  sketch.support_counts = {30, 10, 5, 5};
  sketch.n = 50;
  const FrequencyVector out = estimate(spec, sketch);
  EXPECT_EQ(out.tag, VectorTag::kEstimated);
  EXPECT_DOUBLE_EQ(out.values[0], 0.6);
  EXPECT_DOUBLE_EQ(out.values[1], 0.2);
  EXPECT_DOUBLE_EQ(out.values[2], 0.1);
  EXPECT_DOUBLE_EQ(out.values[3], 0.1);
}

TEST(Estimate, GrrEstimatesSumToOne) {
  // GRR support counts always sum to n, so the debiased estimates sum to
  // exactly one regardless of the counts.
  const ProtocolSpec spec = build_protocol(ProtocolKind::kGrr, 6, 0.8);
  Sketch sketch = make_sketch(6);
  sketch.support_counts = {17, 0, 3, 41, 2, 37};
  sketch.n = 100;
  const FrequencyVector out = estimate(spec, sketch);
  double sum = 0;
  for (double value : out.values) sum += value;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Estimate, RejectsEmptyOrMismatchedSketch) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kGrr, 4, 1.0);
  EXPECT_THROW(estimate(spec, make_sketch(4)), InputError);
  Sketch wrong = make_sketch(5);
  wrong.n = 10;
  EXPECT_THROW(estimate(spec, wrong), InputError);
}

TEST(EstimatorVariance, OueClosedForm) {
  const ProtocolSpec spec = build_protocol(ProtocolKind::kOue, 64, kLn3);
  EXPECT_NEAR(estimator_variance(spec, 10000), 0.0003, 1e-12);
  // For OUE the general expression collapses to 4 e^eps / (n (e^eps-1)^2).
  const ProtocolSpec b = build_protocol(ProtocolKind::kOue, 64, 1.3);
  const double e = std::exp(1.3);
  EXPECT_NEAR(estimator_variance(b, 500), 4.0 * e / (500 * (e - 1) * (e - 1)),
              1e-15);
  EXPECT_THROW(estimator_variance(spec, 0), ParameterError);
}

TEST(EstimatorVariance, MatchesExactOracleAtZeroFrequency) {
  for (ProtocolKind kind :
       {ProtocolKind::kGrr, ProtocolKind::kBlh, ProtocolKind::kOlh,
        ProtocolKind::kRappor, ProtocolKind::kOue, ProtocolKind::kSs}) {
    const ProtocolSpec spec = build_protocol(kind, 32, 1.0);
    EXPECT_NEAR(estimator_variance(spec, 1000),
                oracles::exact_estimator_variance(spec, 0.0, 1000), 1e-18);
  }
}

}  // namespace
}  // namespace ldpbench
