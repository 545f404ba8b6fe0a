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

#include "cslab/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "cslab/error.hpp"
#include "cslab/rng.hpp"

namespace cslab {

double AggregateRow::rate(Metric m) const {
  switch (m) {
    case Metric::kExact: return rate_m1;
    case Metric::kOverlap: return rate_m2;
    case Metric::kEnergy: return rate_m3;
  }
  return 0.0;
}

std::vector<ConfigPoint> expand_points(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw ConfigError("trials", "trials must be at least 1");
  if (cfg.m_list.empty()) throw ConfigError("m-list", "m-list is empty");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha", "alpha must lie in (0,1)");
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) throw ConfigError("gamma", "gamma must lie in (0,1)");
  if (!(cfg.nu > 0.0)) throw ConfigError("nu", "nu must be positive");
  if (!(cfg.power > 0.0)) throw ConfigError("power", "power must be positive");
  const double zeta = cfg.effective_zeta();
  if (!(zeta > 0.0 && zeta < 1.0)) throw ConfigError("zeta", "zeta must lie in (0,1)");
  if (cfg.n_list.empty() && cfg.n_per_l.empty()) {
    throw ConfigError("n-list", "either n-list or n-per-l must be given");
  }
  if (cfg.regime == Regime::kLinear && !cfg.profile.beta) {
    throw ConfigError("beta", "linear regime needs beta");
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < cfg.m_list.size(); ++i) {
    const std::size_t m = cfg.m_list[i];
    std::size_t l = 0;
    if (cfg.l_list.size() == cfg.m_list.size()) {
      l = cfg.l_list[i];
    } else if (cfg.l_list.size() == 1) {
      l = cfg.l_list[0];
    } else if (cfg.l_list.empty() && cfg.regime == Regime::kLinear) {
      l = static_cast<std::size_t>(std::floor(static_cast<double>(m) / *cfg.profile.beta + 1e-9));
    } else {
      throw ConfigError("l-list", "l-list must have one entry or one per m");
    }
    if (l == 0 || l > m) throw ConfigError("l-list", "need 1 <= l <= m for m = " + std::to_string(m));
    if (cfg.regime == Regime::kLinear) {
      const auto expect = static_cast<std::size_t>(
          std::floor(*cfg.profile.beta * static_cast<double>(l) + 1e-9));
      if (expect != m) {
        throw ConfigError("beta", "m = " + std::to_string(m) + " is not floor(beta * l) for l = " +
                                      std::to_string(l));
      }
    }
    const auto count = binomial(m, l);
    if (!count || *count > cfg.scan_budget) {
      throw ConfigError("scan-budget", "C(" + std::to_string(m) + ", " + std::to_string(l) +
                                           ") exceeds the scan budget");
    }
    pairs.emplace_back(m, l);
  }

  std::vector<ConfigPoint> points;
  for (const auto& [m, l] : pairs) {
    std::vector<std::size_t> ns = cfg.n_list;
    if (ns.empty()) {
      for (auto r : cfg.n_per_l) ns.push_back(r * l);
    }
    for (auto n : ns) {
      if (n == 0) throw ConfigError(cfg.n_list.empty() ? "n-per-l" : "n-list", "N must be >= 1");
      points.push_back({points.size(), m, l, n});
    }
  }
  return points;
}

double effective_power(const ExperimentConfig& cfg, std::size_t l) {
  if (cfg.profile.kind == RegimeKind::kMetric1Growth) return metric1_growth_power(l, cfg.power);
  return cfg.power;
}

namespace {

RegimePoint regime_point(const ExperimentConfig& cfg, const ConfigPoint& pt, double mu2) {
  RegimePoint r;
  r.m = pt.m;
  r.l = pt.l;
  r.n = pt.n;
  r.beta = static_cast<double>(pt.m) / static_cast<double>(pt.l);
  r.nu = cfg.nu;
  r.p = effective_power(cfg, pt.l);
  r.mu2 = mu2;
  r.alpha = cfg.alpha;
  r.gamma = cfg.gamma;
  r.zeta = cfg.effective_zeta();
  return r;
}

}  // namespace

double decoder_delta(const ExperimentConfig& cfg, const ConfigPoint& pt, double mu2) {
  const RegimePoint r = regime_point(cfg, pt, mu2);
  const double dprime = default_delta_prime(cfg.metric, r);
  // N <= L leaves no room for a noise-only residual; delta' is used as is.
  return pt.n > pt.l ? delta_from_prime(pt.n, pt.l, dprime) : dprime;
}

TrialResult run_trial(const ExperimentConfig& cfg, const ConfigPoint& point,
                      std::size_t trial_index) {
  const auto start = std::chrono::steady_clock::now();
  SeedRecord seeds;
  seeds.matrix_seed = derive_seed(cfg.master_seed, SeedRole::kMatrix, point.id,
                                  cfg.fixed_matrix ? 0 : trial_index);
  seeds.noise_seed = derive_seed(cfg.master_seed, SeedRole::kNoise, point.id, trial_index);
  seeds.signal_seed = derive_seed(cfg.master_seed, SeedRole::kSignal, point.id, trial_index);

  SignalRegime regime = cfg.profile;
  if (cfg.regime == Regime::kSublinear) regime.beta.reset();
  const MeasurementInstance inst = make_instance(point.n, point.m, point.l, regime,
                                                 effective_power(cfg, point.l), cfg.nu, seeds);
  const double mu_x = mu(inst.signal);

  TypicalityParams params;
  params.delta = decoder_delta(cfg, point, mu_x * mu_x);
  params.nu = cfg.nu;
  params.l = point.l;
  params.policy = cfg.decoder_policy;
  DecodeOptions options;
  options.scan_budget = cfg.scan_budget;
  options.typical_cap = cfg.typical_cap;

  const IndexSet& truth = inst.signal.support();
  const DecodeReport report = typicality_decode(inst.y, inst.a, params, options, &truth);
  const MetricOutcome outcome = score(report.chosen, inst.signal, cfg.alpha, cfg.gamma);

  TrialResult r;
  r.point_id = point.id;
  r.trial_index = trial_index;
  r.success_metric1 = outcome.metric1;
  r.success_metric2 = outcome.metric2;
  r.success_metric3 = outcome.metric3;
  r.true_set_typical = report.true_set_typical;
  r.num_typical_sets = report.typical_count;
  r.residual_at_truth = subset_statistic(inst.y, inst.a, truth, cfg.nu).residual;
  if (cfg.timing) {
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
  }
  return r;
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  return {std::max(0.0, std::min(p, centre - half)), std::min(1.0, std::max(p, centre + half))};
}

unsigned default_threads() {
  if (const char* env = std::getenv("CS_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<AggregateRow> run_sweep(const ExperimentConfig& cfg, unsigned threads) {
  const std::vector<ConfigPoint> points = expand_points(cfg);
  const std::size_t total = points.size() * cfg.trials;
  std::vector<TrialResult> results(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total || failed.load()) return;
      try {
        results[task] = run_trial(cfg, points[task / cfg.trials], task % cfg.trials);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<AggregateRow> rows;
  rows.reserve(points.size());
  for (const auto& pt : points) {
    AggregateRow row;
    row.point = pt;
    row.beta = static_cast<double>(pt.m) / static_cast<double>(pt.l);
    row.nu = cfg.nu;
    row.power = effective_power(cfg, pt.l);
    row.metric = cfg.metric;
    row.alpha = cfg.alpha;
    row.gamma = cfg.gamma;
    row.zeta = cfg.effective_zeta();
    row.policy = cfg.decoder_policy;
    row.trials = cfg.trials;
    std::size_t s1 = 0, s2 = 0, s3 = 0, atypical = 0;
    double typical_sets = 0.0, wall = 0.0;
    for (std::size_t k = 0; k < cfg.trials; ++k) {
      const TrialResult& r = results[pt.id * cfg.trials + k];
      s1 += r.success_metric1;
      s2 += r.success_metric2;
      s3 += r.success_metric3;
      atypical += !r.true_set_typical;
      typical_sets += static_cast<double>(r.num_typical_sets);
      wall += r.wall_ms;
    }
    const double n = static_cast<double>(cfg.trials);
    row.rate_m1 = static_cast<double>(s1) / n;
    row.rate_m2 = static_cast<double>(s2) / n;
    row.rate_m3 = static_cast<double>(s3) / n;
    const std::size_t chosen = cfg.metric == Metric::kExact ? s1 : cfg.metric == Metric::kOverlap ? s2 : s3;
    const auto ci = wilson_interval(chosen, cfg.trials);
    row.wilson_low = ci.low;
    row.wilson_high = ci.high;
    row.emp_atypicality = static_cast<double>(atypical) / n;
    row.mean_typical_sets = typical_sets / n;
    row.wall_ms = wall;

    // Moduli are deterministic for every profile, so any seed gives mu.
    SignalRegime regime = cfg.profile;
    regime.beta.reset();
    const double mu_x = mu(make_signal(pt.m, pt.l, regime, row.power, 0));
    if (pt.n > pt.l) {
      RegimePoint rp = regime_point(cfg, pt, mu_x * mu_x);
      rp.delta = decoder_delta(cfg, pt, rp.mu2);
      row.bound_atypicality = atypicality_bound(rp);
    } else {
      row.bound_atypicality = 1.0;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<TailRow> tail_check(std::size_t k, std::size_t trials,
                                const std::vector<double>& lambda_grid, std::uint64_t seed) {
  if (k == 0) throw DomainError("tail_check: k must be at least 1");
  if (trials == 0) throw DomainError("tail_check: trials must be at least 1");
  std::vector<TailRow> rows;
  for (double lambda : lambda_grid) {
    const auto b = chi_square_dev_bounds(k, lambda);
    TailRow row;
    row.k = k;
    row.lambda = lambda;
    row.lower_threshold = b.lower_threshold;
    row.upper_threshold = b.upper_threshold;
    row.bound = b.lower_tail_bound;
    row.trials = trials;
    rows.push_back(row);
  }
  std::vector<std::size_t> lower(rows.size(), 0), upper(rows.size(), 0);
  Rng rng(derive_seed(seed, SeedRole::kTail, k, 0));
  std::exponential_distribution<double> expo(1.0);
  const double kk = static_cast<double>(k);
  for (std::size_t t = 0; t < trials; ++t) {
    double omega = 0.0;
    for (std::size_t i = 0; i < k; ++i) omega += expo(rng);
    const double dev = omega - kk;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      lower[r] += dev <= -rows[r].lower_threshold;
      upper[r] += dev >= rows[r].upper_threshold;
    }
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rows[r].emp_lower = static_cast<double>(lower[r]) / static_cast<double>(trials);
    rows[r].emp_upper = static_cast<double>(upper[r]) / static_cast<double>(trials);
  }
  return rows;
}

TypicalityCheck typicality_check(std::size_t n, std::size_t l, double delta, double nu,
                                 double power, std::size_t trials, std::uint64_t seed) {
  if (n <= l) throw DomainError("typicality_check: need n > l");
  if (trials == 0) throw DomainError("typicality_check: trials must be at least 1");
  TypicalityCheck out;
  out.trials = trials;
  out.delta = delta;
  out.residual_target = typicality_target(n, l, nu);

  // Columns 0..L-1 carry the signal; L..2L-1 form a disjoint candidate J.
  const std::size_t m = 2 * l;
  IndexSet truth = first_combination(l);
  IndexSet other(l);
  for (std::size_t k = 0; k < l; ++k) other[k] = l + k;
  SignalRegime flat;

  double sum = 0.0, sum_sq = 0.0;
  std::size_t atypical = 0, false_typical = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    SeedRecord seeds;
    seeds.matrix_seed = derive_seed(seed, SeedRole::kMatrix, n * 1000 + l, t);
    seeds.noise_seed = derive_seed(seed, SeedRole::kNoise, n * 1000 + l, t);
    seeds.signal_seed = derive_seed(seed, SeedRole::kSignal, n * 1000 + l, t);
    const CMatrix a = sample_measurement_matrix(n, m, seeds.matrix_seed);
    SparseSignal signal = make_signal(l, l, flat, power, seeds.signal_seed);
    // Signal lives on the first L columns of the 2L-column draw.
    const SparseSignal x(m, truth, signal.values());
    const CVector y = measure(a, x, sample_noise(n, nu, seeds.noise_seed));

    const SubsetStatistic si = subset_statistic(y, a, truth, nu);
    const double normalized = si.residual / static_cast<double>(n);
    sum += normalized;
    sum_sq += normalized * normalized;
    atypical += si.deviation > delta;
    const SubsetStatistic sj = subset_statistic(y, a, other, nu);
    false_typical += sj.full_rank && sj.deviation < delta;
  }
  const double tn = static_cast<double>(trials);
  out.residual_mean = sum / tn;
  const double var = trials > 1 ? (sum_sq - tn * out.residual_mean * out.residual_mean) / (tn - 1.0) : 0.0;
  out.residual_std_error = std::sqrt(std::max(var, 0.0) / tn);
  out.emp_atypical = static_cast<double>(atypical) / tn;
  out.emp_false_typical = static_cast<double>(false_typical) / tn;

  RegimePoint rp;
  rp.m = m;
  rp.l = l;
  rp.n = n;
  rp.nu = nu;
  rp.p = power;
  rp.delta = delta;
  out.bound_atypical = atypicality_bound(rp);
  const double dprime = delta_prime(rp);
  out.bound_false_typical = power > dprime ? false_typicality_bound(rp, power) : 1.0;
  return out;
}

}  // namespace cslab
