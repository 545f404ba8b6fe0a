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

#include "cslab/bounds.hpp"
#include "cslab/signal_model.hpp"
#include "cslab/typicality.hpp"

namespace cslab {

struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  std::size_t trials = 200;
  Metric metric = Metric::kOverlap;
  double alpha = 0.4;
  double gamma = 0.5;
  std::optional<double> zeta;  // defaults per metric when absent
  Regime regime = Regime::kLinear;
  std::vector<std::size_t> m_list{16, 20, 24};
  /// Paired with m_list elementwise, or a single value for every m. When
  /// empty in the linear regime, l = floor(m / beta).
  std::vector<std::size_t> l_list;
  /// Absolute N values. When empty, n_per_l multiplies each point's L.
  std::vector<std::size_t> n_list;
  std::vector<std::size_t> n_per_l{2, 4, 8, 16, 32};
  double nu = 0.1;
  /// Signal power; in the metric1-growth regime this is the growth constant c.
  double power = 1.0;
  SignalRegime profile{RegimeKind::kConstantPower, 4.0, {}};
  DecodePolicy decoder_policy = DecodePolicy::kMinDeviation;
  std::uint64_t scan_budget = 10'000'000;
  std::size_t typical_cap = 1024;
  /// Reuse one measurement matrix per point instead of drawing one per trial.
  bool fixed_matrix = false;
  /// Record wall time in results; off keeps output byte-reproducible.
  bool timing = false;

  double effective_zeta() const { return zeta ? *zeta : default_zeta(metric); }
};

struct ConfigPoint {
  std::size_t id = 0;
  std::size_t m = 0;
  std::size_t l = 0;
  std::size_t n = 0;
};

/// Expands the config into points in deterministic order (m/l pairs outer,
/// N inner) and validates every point. Throws ConfigError naming the key.
std::vector<ConfigPoint> expand_points(const ExperimentConfig& cfg);

struct TrialResult {
  std::size_t point_id = 0;
  std::size_t trial_index = 0;
  bool success_metric1 = false;
  bool success_metric2 = false;
  bool success_metric3 = false;
  bool true_set_typical = false;
  std::uint64_t num_typical_sets = 0;
  double residual_at_truth = 0.0;
  double wall_ms = 0.0;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

struct AggregateRow {
  ConfigPoint point;
  double beta = 0.0;
  double nu = 0.0;
  double power = 0.0;
  Metric metric = Metric::kOverlap;
  double alpha = 0.0;
  double gamma = 0.0;
  double zeta = 0.0;
  DecodePolicy policy = DecodePolicy::kMinDeviation;
  std::size_t trials = 0;
  double rate_m1 = 0.0;
  double rate_m2 = 0.0;
  double rate_m3 = 0.0;
  double wilson_low = 0.0;   // for the configured metric's rate
  double wilson_high = 0.0;
  double emp_atypicality = 0.0;
  double bound_atypicality = 0.0;
  double mean_typical_sets = 0.0;
  double wall_ms = 0.0;

  double rate(Metric m) const;
};

/// Total signal power used at sparsity l.
double effective_power(const ExperimentConfig& cfg, std::size_t l);

/// Typicality tolerance delta the decoder uses at a point with the given mu^2.
double decoder_delta(const ExperimentConfig& cfg, const ConfigPoint& pt, double mu2);

TrialResult run_trial(const ExperimentConfig& cfg, const ConfigPoint& point,
                      std::size_t trial_index);

/// Runs every (point, trial) on `threads` workers; results are reduced in
/// (point, trial) order so output does not depend on scheduling.
std::vector<AggregateRow> run_sweep(const ExperimentConfig& cfg, unsigned threads = 1);

/// Worker count from CS_LAB_THREADS, else hardware concurrency.
unsigned default_threads();

struct WilsonInterval {
  double low;
  double high;
};

/// 95% Wilson score interval.
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials);

struct TailRow {
  std::size_t k = 0;
  double lambda = 0.0;
  double lower_threshold = 0.0;
  double upper_threshold = 0.0;
  double bound = 0.0;       // e^{-lambda}
  double emp_lower = 0.0;   // P(Omega - k <= -lower_threshold)
  double emp_upper = 0.0;   // P(Omega - k >= upper_threshold)
  std::size_t trials = 0;
};

/// Samples Omega as a sum of k unit-mean exponentials (the complex-noise
/// residual law) and compares both deviation frequencies with e^{-lambda}.
std::vector<TailRow> tail_check(std::size_t k, std::size_t trials,
                                const std::vector<double>& lambda_grid, std::uint64_t seed);

struct TypicalityCheck {
  std::size_t trials = 0;
  double delta = 0.0;
  double residual_mean = 0.0;  // mean of ||P_perp(A_I) y||^2 / N
  double residual_std_error = 0.0;
  double residual_target = 0.0;  // (N - L) nu^2 / N
  double emp_atypical = 0.0;     // P(E_I^c)
  double bound_atypical = 0.0;
  double emp_false_typical = 0.0;  // P(E_J), J disjoint from I
  double bound_false_typical = 0.0;
};

/// Monte Carlo check of the true-support residual and of a disjoint
/// candidate set at one (N, L, delta), with a flat signal of the given power.
TypicalityCheck typicality_check(std::size_t n, std::size_t l, double delta, double nu,
                                 double power, std::size_t trials, std::uint64_t seed);

}  // namespace cslab
