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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cslab/combinations.hpp"
#include "cslab/linalg.hpp"
#include "cslab/signal_model.hpp"

namespace cslab {

enum class DecodePolicy {
  kUnique,        // choose only when exactly one set is typical
  kMinDeviation,  // choose the typical set closest to the noise-only target
};

struct TypicalityParams {
  double delta = 0.0;  // residual tolerance, units of nu^2
  double nu = 1.0;     // noise standard deviation
  std::size_t l = 1;
  DecodePolicy policy = DecodePolicy::kMinDeviation;
};

struct DecodeOptions {
  std::uint64_t scan_budget = 10'000'000;
  std::size_t typical_cap = 1024;
  unsigned threads = 1;
  double rank_tol = kDefaultRankTol;
};

/// Residual statistics of one candidate set J.
struct SubsetStatistic {
  bool full_rank = false;
  double residual = 0.0;   // ||P_perp(A_J) y||^2
  double deviation = 0.0;  // |residual / N - (N - L) nu^2 / N|
};

struct DecodeReport {
  /// Typical sets in lexicographic order, truncated at the cap. When
  /// `overflow` is set the chosen set may lie beyond the stored prefix.
  std::vector<IndexSet> typical_sets;
  bool overflow = false;
  std::uint64_t typical_count = 0;
  std::optional<IndexSet> chosen;
  /// Only meaningful when the decoder was handed the true support.
  bool true_set_typical = false;
  std::uint64_t scanned = 0;
  double residual_of_chosen = 0.0;
};

/// Noise-only centre of the normalized residual: (N - L) nu^2 / N.
double typicality_target(std::size_t n, std::size_t l, double nu);

SubsetStatistic subset_statistic(const CVector& y, const CMatrix& a, const IndexSet& j,
                                 double nu, double rank_tol = kDefaultRankTol);

bool is_jointly_typical(const CVector& y, const CMatrix& a, const IndexSet& j,
                        const TypicalityParams& p, double rank_tol = kDefaultRankTol);

/// Exhaustive scan of all L-subsets in lexicographic order.
DecodeReport typicality_decode(const CVector& y, const CMatrix& a, const TypicalityParams& p,
                               const DecodeOptions& options = {},
                               const IndexSet* truth = nullptr);

/// Closest-subspace baseline: argmin over L-subsets of the residual energy.
IndexSet ml_decode(const CVector& y, const CMatrix& a, std::size_t l,
                   const DecodeOptions& options = {});

bool metric1_success(const IndexSet& est, const IndexSet& truth);
bool metric2_success(const IndexSet& est, const IndexSet& truth, double alpha);
bool metric3_success(const IndexSet& est, const SparseSignal& signal, double gamma);

struct MetricOutcome {
  bool metric1 = false;
  bool metric2 = false;
  bool metric3 = false;
  std::size_t overlap_count = 0;
  double captured_energy = 0.0;
};

/// Scores an estimate on all three metrics; an absent estimate fails all.
MetricOutcome score(const std::optional<IndexSet>& est, const SparseSignal& signal,
                    double alpha, double gamma);

std::size_t overlap(const IndexSet& a, const IndexSet& b);
double captured_energy(const IndexSet& est, const SparseSignal& signal);

}  // namespace cslab
