// Copyright 2026 The cslab Authors
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

#include <gtest/gtest.h>

#include <cmath>

#include "cslab/bounds.hpp"
#include "cslab/combinations.hpp"
#include "cslab/error.hpp"
#include "cslab/rng.hpp"
#include "cslab/signal_model.hpp"
#include "cslab/typicality.hpp"
#include "oracle.hpp"

namespace cslab {
namespace {

TypicalityParams params(double delta, double nu, std::size_t l,
                        DecodePolicy policy = DecodePolicy::kMinDeviation) {
  return {delta, nu, l, policy};
}

TEST(IsJointlyTypical, ZeroResidualSitsAtTargetDistance) {
  const CMatrix a = sample_measurement_matrix(8, 5, 1);
  const CVector zero(8);
  const double target = typicality_target(8, 2, 1.0);
  EXPECT_DOUBLE_EQ(target, 0.75);
  EXPECT_TRUE(is_jointly_typical(zero, a, {0, 3}, params(target + 0.01, 1.0, 2)));
  EXPECT_FALSE(is_jointly_typical(zero, a, {0, 3}, params(target - 0.01, 1.0, 2)));

  // y exactly in the span of A_J.
  CVector y(8);
  for (std::size_t r = 0; r < 8; ++r) y[r] = 2.0 * a(r, 1) - Complex(0, 1) * a(r, 4);
  EXPECT_NEAR(subset_statistic(y, a, {1, 4}, 1.0).residual, 0.0, 1e-12);
  EXPECT_TRUE(is_jointly_typical(y, a, {1, 4}, params(target + 0.01, 1.0, 2)));
  EXPECT_FALSE(is_jointly_typical(y, a, {1, 4}, params(target - 0.01, 1.0, 2)));
}

TEST(IsJointlyTypical, ExactCentreTypicalForAnyDelta) {
  const CMatrix a = CMatrix::identity(8, 2);
  const CVector y({5, 7, 1, 1, 1, 1, 1, 1});
  const auto s = subset_statistic(y, a, {0, 1}, 1.0);
  EXPECT_DOUBLE_EQ(s.residual / 8.0, 0.75);
  EXPECT_DOUBLE_EQ(s.deviation, 0.0);
  for (double d : {1e-9, 1e-3, 0.5}) EXPECT_TRUE(is_jointly_typical(y, a, {0, 1}, params(d, 1.0, 2)));
}

TEST(IsJointlyTypical, RankDeficientSetIsNeverTypical) {
  CMatrix a = sample_measurement_matrix(6, 3, 2);
  for (std::size_t r = 0; r < 6; ++r) a(r, 2) = a(r, 0) * Complex(0, 3);
  const CVector y(6);
  const auto s = subset_statistic(y, a, {0, 2}, 1.0);
  EXPECT_FALSE(s.full_rank);
  EXPECT_FALSE(is_jointly_typical(y, a, {0, 2}, params(100.0, 1.0, 2)));
}

TEST(IsJointlyTypical, InvalidSetsRejected) {
  const CMatrix a = sample_measurement_matrix(6, 4, 2);
  const CVector y(6);
  EXPECT_THROW(is_jointly_typical(y, a, {0}, params(0.1, 1.0, 2)), DimensionError);
  EXPECT_THROW(is_jointly_typical(y, a, {0, 4}, params(0.1, 1.0, 2)), DimensionError);
  EXPECT_THROW(is_jointly_typical(y, a, {1, 1}, params(0.1, 1.0, 2)), DomainError);
  EXPECT_THROW(is_jointly_typical(CVector(5), a, {0, 1}, params(0.1, 1.0, 2)), DimensionError);
}

TEST(TypicalityDecode, IdentityHandCase) {
  // Residual of J is the energy off J: squares 4, 2.25, 1, 0.25; target 0.5.
  const CMatrix a = CMatrix::identity(4, 4);
  const CVector y({2.0, 1.5, 1.0, 0.5});
  const auto unique = typicality_decode(y, a, params(0.2, 1.0, 2, DecodePolicy::kUnique));
  ASSERT_EQ(unique.typical_count, 2u);
  EXPECT_EQ(unique.typical_sets, (std::vector<IndexSet>{{0, 1}, {0, 2}}));
  EXPECT_FALSE(unique.chosen.has_value());
  EXPECT_EQ(unique.scanned, 6u);

  const auto best = typicality_decode(y, a, params(0.2, 1.0, 2));
  ASSERT_TRUE(best.chosen.has_value());
  EXPECT_EQ(*best.chosen, (IndexSet{0, 2}));
  EXPECT_DOUBLE_EQ(best.residual_of_chosen, 2.5);

  const auto narrow = typicality_decode(y, a, params(0.15, 1.0, 2, DecodePolicy::kUnique));
  ASSERT_TRUE(narrow.chosen.has_value());
  EXPECT_EQ(*narrow.chosen, (IndexSet{0, 2}));
}

TEST(TypicalityDecode, ScanMatchesPerSubsetEvaluation) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const std::size_t m = 9, l = 3, n = 4 + seed % 6;
    CMatrix a = sample_measurement_matrix(n, m, seed);
    if (seed % 3 == 0) {
      for (std::size_t r = 0; r < n; ++r) a(r, 5) = a(r, 2);  // duplicated column
    }
    const CVector y = sample_noise(n, 1.0, seed + 100);
    const double delta = 0.3;
    const auto report = typicality_decode(y, a, params(delta, 1.0, l, DecodePolicy::kUnique));
    std::vector<IndexSet> expected;
    IndexSet c = first_combination(l);
    do {
      if (is_jointly_typical(y, a, c, params(delta, 1.0, l))) expected.push_back(c);
      const auto s = subset_statistic(y, a, c, 1.0);
      CMatrix sub = a.select_columns(c);
      if (s.full_rank && n > l) {
        EXPECT_NEAR(s.residual, oracle::residual(y, sub), 1e-8 * y.squared_norm());
      }
    } while (next_combination(c, m));
    EXPECT_EQ(report.typical_sets, expected) << "seed " << seed;
    EXPECT_EQ(report.typical_count, expected.size());
  }
}

TEST(TypicalityDecode, ThreadCountDoesNotChangeReport) {
  const CMatrix a = sample_measurement_matrix(10, 14, 5);
  const CVector y = sample_noise(10, 1.0, 6);
  DecodeOptions one, many;
  many.threads = 3;
  for (auto policy : {DecodePolicy::kUnique, DecodePolicy::kMinDeviation}) {
    const auto p = params(0.2, 1.0, 4, policy);
    const auto r1 = typicality_decode(y, a, p, one);
    const auto r3 = typicality_decode(y, a, p, many);
    EXPECT_EQ(r1.typical_sets, r3.typical_sets);
    EXPECT_EQ(r1.typical_count, r3.typical_count);
    EXPECT_EQ(r1.chosen, r3.chosen);
    EXPECT_EQ(r1.scanned, r3.scanned);
  }
  EXPECT_EQ(ml_decode(y, a, 4, one), ml_decode(y, a, 4, many));
}

TEST(TypicalityDecode, CapAndBudget) {
  const CMatrix a = sample_measurement_matrix(6, 10, 5);
  const CVector y = sample_noise(6, 1.0, 6);
  DecodeOptions capped;
  capped.typical_cap = 3;
  const auto r = typicality_decode(y, a, params(100.0, 1.0, 2), capped);
  EXPECT_EQ(r.typical_count, 45u);
  EXPECT_EQ(r.typical_sets.size(), 3u);
  EXPECT_TRUE(r.overflow);

  DecodeOptions small;
  small.scan_budget = 44;
  EXPECT_THROW(typicality_decode(y, a, params(0.1, 1.0, 2), small), ScanBudgetError);
  EXPECT_THROW(typicality_decode(y, a, params(0.0, 1.0, 2)), DomainError);
  EXPECT_THROW(typicality_decode(y, a, params(0.1, 1.0, 11)), DimensionError);
}

TEST(TypicalityDecode, TruthFlagReported) {
  const CMatrix a = sample_measurement_matrix(12, 8, 9);
  const SparseSignal x(8, {1, 6}, {Complex(1, 0), Complex(0, 1)});
  const CVector y = measure(a, x, sample_noise(12, 0.1, 10));
  const auto p = params(delta_from_prime(12, 2, 0.75), 0.1, 2);
  const auto r = typicality_decode(y, a, p, {}, &x.support());
  EXPECT_TRUE(r.true_set_typical);
  EXPECT_EQ(r.chosen, x.support());
}

TEST(MlDecode, OrthogonalColumnsOneSparse) {
  const CMatrix a = CMatrix::identity(3, 3);
  CVector y = a.column(2);
  y[0] += 1e-6;
  EXPECT_EQ(ml_decode(y, a, 1), (IndexSet{2}));
}

TEST(MlDecode, NoiselessRecoversTruth) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t m = 8 + seed % 3, l = 1 + seed % 3, n = l + 1 + seed % 4;
    const CMatrix a = sample_measurement_matrix(n, m, seed);
    const auto x = make_signal(m, l, SignalRegime{}, 1.0, seed + 50);
    const CVector y = measure(a, x, CVector(n));
    EXPECT_EQ(ml_decode(y, a, l), x.support()) << "seed " << seed;
  }
}

TEST(Metrics, OverlapExamples) {
  const IndexSet truth{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  IndexSet nine = truth;
  nine[9] = 12;
  EXPECT_TRUE(metric1_success(truth, truth));
  EXPECT_FALSE(metric1_success(nine, truth));
  EXPECT_THROW(metric1_success({0, 1}, truth), DimensionError);
  EXPECT_TRUE(metric2_success(truth, truth, 0.1));
  EXPECT_FALSE(metric2_success(nine, truth, 0.1));
  EXPECT_TRUE(metric2_success(nine, truth, 0.2));
}

TEST(Metrics, EnergyExamples) {
  // Flat L = 4, P = 1: each support entry carries 0.25.
  const SparseSignal x(12, {1, 4, 7, 9}, std::vector<Complex>(4, Complex(0.5, 0)));
  EXPECT_TRUE(metric3_success({1, 4, 7, 9}, x, 0.5));
  EXPECT_NEAR(captured_energy({1, 4, 7, 10}, x), 0.75, 1e-15);
  EXPECT_TRUE(metric3_success({1, 4, 7, 10}, x, 0.5));
  EXPECT_NEAR(captured_energy({1, 4, 8, 10}, x), 0.5, 1e-15);
  EXPECT_FALSE(metric3_success({1, 4, 8, 10}, x, 0.5));
}

TEST(Metrics, OrderingOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t m = 10, l = 3, n = 3 + seed % 8;
    const auto x = make_signal(m, l, SignalRegime{}, 1.0, seed);
    const CMatrix a = sample_measurement_matrix(n, m, seed + 1000);
    const CVector y = measure(a, x, sample_noise(n, 0.5, seed + 2000));
    const auto r = typicality_decode(y, a, params(0.2, 0.5, l));
    const auto s = score(r.chosen, x, 0.4, 0.5);
    if (s.metric1) {
      EXPECT_TRUE(s.metric2);
      EXPECT_TRUE(s.metric3);
    }
    for (double alpha : {0.05, 0.5, 0.95}) {
      if (s.metric1) {
        EXPECT_TRUE(score(r.chosen, x, alpha, 0.5).metric2);
      }
    }
  }
  EXPECT_FALSE(score(std::nullopt, make_signal(5, 2, SignalRegime{}, 1.0, 1), 0.5, 0.5).metric3);
}

TEST(Typicality, ZeroNoiseTrueSetIsAtypicalBelowTarget) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto x = make_signal(10, 3, SignalRegime{}, 1.0, seed);
    const CMatrix a = sample_measurement_matrix(12, 10, seed + 7);
    const CVector y = measure(a, x, CVector(12));
    const double target = typicality_target(12, 3, 1.0);
    EXPECT_FALSE(is_jointly_typical(y, a, x.support(), params(0.99 * target, 1.0, 3)));
  }
}

TEST(Typicality, UnionBoundOverDisjointSets) {
  // Empirical P(some J disjoint from I is typical) against C(M-L, L) times
  // the false-typicality bound with missed energy P.
  const std::size_t m = 16, l = 3, n = 60, trials = 1500;
  const double nu = 1.0, p = 4.0, dprime = 0.5;
  const double delta = delta_from_prime(n, l, dprime);
  RegimePoint pt;
  pt.m = m;
  pt.l = l;
  pt.n = n;
  pt.nu = nu;
  pt.delta = delta;
  const double bound =
      std::min(1.0, static_cast<double>(binomial(m - l, l).value()) * false_typicality_bound(pt, p));
  std::size_t hits = 0;
  const IndexSet truth{0, 1, 2};
  for (std::size_t t = 0; t < trials; ++t) {
    const CMatrix a = sample_measurement_matrix(n, m, derive_seed(3, SeedRole::kMatrix, 0, t));
    const auto sig = make_signal(l, l, SignalRegime{}, p, derive_seed(3, SeedRole::kSignal, 0, t));
    const SparseSignal x(m, truth, sig.values());
    const CVector y = measure(a, x, sample_noise(n, nu, derive_seed(3, SeedRole::kNoise, 0, t)));
    IndexSet c = first_combination(l);
    bool any = false;
    do {
      IndexSet j{c[0] + l, c[1] + l, c[2] + l};
      any = is_jointly_typical(y, a, j, params(delta, nu, l));
    } while (!any && next_combination(c, m - l));
    hits += any;
  }
  const double emp = static_cast<double>(hits) / trials;
  const double sigma = std::sqrt(std::max(bound * (1 - bound), 1e-4) / trials);
  EXPECT_LE(emp, bound + 3 * sigma) << "bound " << bound;
}

}  // namespace
}  // namespace cslab
