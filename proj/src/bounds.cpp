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

#include "cslab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cslab/combinations.hpp"
#include "cslab/error.hpp"

namespace cslab {

Metric metric_from_int(int m) {
  switch (m) {
    case 1: return Metric::kExact;
    case 2: return Metric::kOverlap;
    case 3: return Metric::kEnergy;
    default: throw DomainError("metric must be 1, 2 or 3, got " + std::to_string(m));
  }
}

int metric_to_int(Metric m) { return static_cast<int>(m); }

namespace {

double clamp01(double p) {
  if (std::isnan(p)) return 1.0;
  return std::clamp(p, 0.0, 1.0);
}

double log_sum_exp(const std::vector<double>& terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double hi = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(hi)) return hi;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - hi);
  return hi + std::log(s);
}

void require_measurements(const RegimePoint& pt) {
  if (pt.l == 0) throw DomainError("bounds: l must be at least 1");
  if (pt.n <= pt.l) {
    throw DomainError("bounds: need n > l, got n = " + std::to_string(pt.n) + ", l = " +
                      std::to_string(pt.l));
  }
  if (!(pt.nu > 0.0)) throw DomainError("bounds: nu must be positive");
}

double ratio_squared(double missed, double dprime, double nu2) {
  const double r = (missed - dprime) / (missed + nu2);
  return r * r;
}

// ceil(alpha L) with a guard for products that land a hair above an integer.
std::size_t first_missed_count(double alpha, std::size_t l) {
  const double x = alpha * static_cast<double>(l);
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

}  // namespace

double delta_prime(const RegimePoint& pt) {
  require_measurements(pt);
  const double n = static_cast<double>(pt.n);
  return pt.delta * n / (n - static_cast<double>(pt.l));
}

double delta_from_prime(std::size_t n, std::size_t l, double dprime) {
  if (n <= l) throw DomainError("delta_from_prime: need n > l");
  const double nn = static_cast<double>(n);
  return dprime * (nn - static_cast<double>(l)) / nn;
}

double default_zeta(Metric metric) { return metric == Metric::kExact ? 0.75 : 0.5; }

double default_delta_prime(Metric metric, const RegimePoint& pt) {
  switch (metric) {
    case Metric::kExact: return pt.zeta * pt.mu2;
    case Metric::kOverlap: return pt.zeta * pt.alpha * static_cast<double>(pt.l) * pt.mu2;
    case Metric::kEnergy: return pt.zeta * pt.gamma * pt.p;
  }
  return 0.0;
}

double default_c0(double beta) { return 2.0 + std::log(beta - 1.0) + 1.0; }

double entropy(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("entropy: argument must lie in [0,1]");
  if (a == 0.0 || a == 1.0) return 0.0;
  return -a * std::log(a) - (1.0 - a) * std::log1p(-a);
}

ChiSquareDeviation chi_square_dev_bounds(std::size_t k, double lambda) {
  if (k == 0) throw DomainError("chi_square_dev_bounds: k must be at least 1");
  if (!(lambda >= 0.0)) throw DomainError("chi_square_dev_bounds: lambda must be >= 0");
  const double root = 2.0 * std::sqrt(static_cast<double>(k) * lambda);
  const double b = std::exp(-lambda);
  return {b, b, root, root + 2.0 * lambda};
}

double atypicality_bound(const RegimePoint& pt) {
  require_measurements(pt);
  if (!(pt.delta >= 0.0)) throw DomainError("atypicality_bound: delta must be >= 0");
  const double n = static_cast<double>(pt.n);
  const double l = static_cast<double>(pt.l);
  const double nu2 = pt.nu * pt.nu;
  const double expo = pt.delta * pt.delta / (4.0 * nu2 * nu2) * n * n /
                      (n - l + 2.0 * pt.delta / nu2 * n);
  return clamp01(2.0 * std::exp(-expo));
}

double false_typicality_bound(const RegimePoint& pt, double missed_energy) {
  require_measurements(pt);
  const double dprime = delta_prime(pt);
  if (!(missed_energy > 0.0)) throw DomainError("false_typicality_bound: missed energy must be > 0");
  if (missed_energy < dprime * (1.0 - 1e-12)) {
    throw DomainError("false_typicality_bound: missed energy must exceed delta'");
  }
  const double dof = static_cast<double>(pt.n - pt.l);
  return clamp01(std::exp(-dof / 4.0 * ratio_squared(missed_energy, dprime, pt.nu * pt.nu)));
}

namespace {

void require_z(double z, std::size_t l) {
  const double lo = 1.0 / static_cast<double>(l);
  if (!(z >= lo * (1.0 - 1e-12) && z <= 1.0 + 1e-12)) {
    throw DomainError("z must lie in [1/L, 1], got " + std::to_string(z));
  }
}

double typicality_ratio_sq(double z, const RegimePoint& pt) {
  const double lz = static_cast<double>(pt.l) * z;
  return ratio_squared(lz * pt.mu2, pt.zeta * pt.mu2, pt.nu * pt.nu);
}

}  // namespace

double f_eval(double z, const RegimePoint& pt, double c0) {
  if (pt.l == 0) throw DomainError("f_eval: l must be at least 1");
  require_z(z, pt.l);
  if (!(pt.beta > 1.0)) throw DomainError("f_eval: beta must exceed 1");
  const double l = static_cast<double>(pt.l);
  return -2.0 * l * z * std::log(z) + l * z * (2.0 + std::log(pt.beta - 1.0)) -
         c0 * l * typicality_ratio_sq(z, pt);
}

double f_at_inverse_l(const RegimePoint& pt, double c0) {
  const double l = static_cast<double>(pt.l);
  const double r = pt.mu2 * (1.0 - pt.zeta) / (pt.mu2 + pt.nu * pt.nu);
  return 2.0 * std::log(l) + 2.0 + std::log(pt.beta - 1.0) - c0 * l * r * r;
}

double k_eval(double z, const RegimePoint& pt) {
  require_measurements(pt);
  require_z(z, pt.l);
  if (pt.m <= pt.l) throw DomainError("k_eval: need m > l");
  const double l = static_cast<double>(pt.l);
  const double ratio = static_cast<double>(pt.m - pt.l) / l;
  const double dof = static_cast<double>(pt.n - pt.l);
  return -2.0 * l * z * std::log(z) + 2.0 * l * z + l * z * std::log(ratio) -
         dof / 4.0 * typicality_ratio_sq(z, pt);
}

double union_bound_metric1(const RegimePoint& pt, double c0, bool exact) {
  require_measurements(pt);
  if (pt.m < pt.l) throw DomainError("union_bound_metric1: need m >= l");
  const double l = static_cast<double>(pt.l);
  const double nu2 = pt.nu * pt.nu;
  if (!exact) {
    if (!(c0 > 0.0)) throw DomainError("union_bound_metric1: c0 must be positive");
    if (std::abs(static_cast<double>(pt.n) - (4.0 * c0 + 1.0) * l) > 1.0) {
      throw DomainError("union_bound_metric1: asymptotic form needs n = (4 c0 + 1) l");
    }
    const double mu4 = pt.mu2 * pt.mu2;
    const double first = 2.0 * std::exp(-pt.zeta * pt.zeta * c0 / nu2 * l * mu4 /
                                         (nu2 + 2.0 * pt.zeta * pt.mu2));
    const double fmax = std::max(f_eval(1.0 / l, pt, c0), f_eval(1.0, pt, c0));
    return clamp01(first + std::exp(std::log(l) + fmax));
  }
  const double dprime = delta_prime(pt);
  const double dof = static_cast<double>(pt.n - pt.l);
  std::vector<double> logs;
  for (std::size_t k = 1; k <= pt.l && k <= pt.m - pt.l; ++k) {
    const double missed = static_cast<double>(k) * pt.mu2;
    const double expo = missed > dprime ? -dof / 4.0 * ratio_squared(missed, dprime, nu2) : 0.0;
    logs.push_back(log_binomial(l, static_cast<double>(k)) +
                   log_binomial(static_cast<double>(pt.m - pt.l), static_cast<double>(k)) + expo);
  }
  return clamp01(atypicality_bound(pt) + std::exp(log_sum_exp(logs)));
}

double c3hat_threshold(const RegimePoint& pt) {
  require_measurements(pt);
  const double dprime = delta_prime(pt);
  const double a = pt.alpha * static_cast<double>(pt.l) * pt.mu2;
  if (!(a > dprime)) throw DomainError("c3hat_threshold: need alpha L mu^2 > delta'");
  const double r = (a + pt.nu * pt.nu) / (a - dprime);
  return pt.beta * r * r;
}

double union_bound_metric2(const RegimePoint& pt, double c3hat) {
  require_measurements(pt);
  if (!(pt.alpha > 0.0 && pt.alpha < 1.0)) throw DomainError("union_bound_metric2: alpha in (0,1)");
  const double limit = c3hat_threshold(pt);
  if (!(c3hat > limit)) {
    throw DomainError("union_bound_metric2: C3-hat = " + std::to_string(c3hat) +
                      " must exceed " + std::to_string(limit));
  }
  const double l = static_cast<double>(pt.l);
  const double ml = static_cast<double>(pt.m - pt.l);
  const double nu2 = pt.nu * pt.nu;
  const double n = static_cast<double>(pt.n);
  const double dprime = delta_prime(pt);
  const double c = 4.0 * c3hat + 1.0;
  const double first = 2.0 * std::exp(-pt.delta * pt.delta / (4.0 * nu2 * nu2) * c /
                                      (4.0 * c3hat + 2.0 * pt.delta / nu2 * c) * n);
  std::vector<double> logs;
  for (std::size_t k = first_missed_count(pt.alpha, pt.l); k <= pt.l; ++k) {
    const double kk = static_cast<double>(k);
    if (kk > ml) throw DomainError("union_bound_metric2: need m - l >= l");
    const double missed = kk * pt.mu2;
    logs.push_back(l * entropy(kk / l) + ml * entropy(kk / ml) -
                   c3hat * l * ratio_squared(missed, dprime, nu2));
  }
  return clamp01(first + std::exp(log_sum_exp(logs)));
}

double union_bound_metric2_exact(const RegimePoint& pt) {
  require_measurements(pt);
  if (!(pt.alpha > 0.0 && pt.alpha < 1.0)) throw DomainError("union_bound_metric2: alpha in (0,1)");
  const double l = static_cast<double>(pt.l);
  const double ml = static_cast<double>(pt.m - pt.l);
  const double dprime = delta_prime(pt);
  const double dof = static_cast<double>(pt.n - pt.l);
  std::vector<double> logs;
  for (std::size_t k = first_missed_count(pt.alpha, pt.l); k <= pt.l; ++k) {
    const double kk = static_cast<double>(k);
    if (kk > ml) continue;
    const double missed = kk * pt.mu2;
    const double expo =
        missed > dprime ? -dof / 4.0 * ratio_squared(missed, dprime, pt.nu * pt.nu) : 0.0;
    logs.push_back(log_binomial(l, kk) + log_binomial(ml, kk) + expo);
  }
  return clamp01(atypicality_bound(pt) + std::exp(log_sum_exp(logs)));
}

double union_bound_metric3(const RegimePoint& pt) {
  require_measurements(pt);
  const double dprime = delta_prime(pt);
  const double gp = pt.gamma * pt.p;
  if (dprime > gp * (1.0 + 1e-12)) throw DomainError("union_bound_metric3: need delta' <= gamma P");
  const double dof = static_cast<double>(pt.n - pt.l);
  const double log_second =
      log_binomial(static_cast<double>(pt.m), static_cast<double>(pt.l)) -
      dof / 4.0 * ratio_squared(gp, std::min(dprime, gp), pt.nu * pt.nu);
  return clamp01(atypicality_bound(pt) + std::exp(log_second));
}

double miso_capacity(std::size_t n, double p, double nu) {
  if (!(p >= 0.0) || !(nu > 0.0)) throw DomainError("miso_capacity: need p >= 0 and nu > 0");
  return static_cast<double>(n) * std::log1p(p / (nu * nu));
}

double c_alpha_beta(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("c_alpha_beta: alpha must lie in (0,1]");
  if (!(beta > 2.0)) throw DomainError("c_alpha_beta: beta must exceed 2");
  if (alpha > (beta - 1.0) / beta) return 0.0;
  return beta * entropy(1.0 / beta) - entropy(alpha) - (beta - 1.0) * entropy(alpha / (beta - 1.0));
}

double c_z_eval(double z, double alpha, double beta) {
  if (!(beta > 2.0)) throw DomainError("c_z_eval: beta must exceed 2");
  if (!(z >= 0.0 && z <= alpha + 1e-12 && alpha <= 1.0)) {
    throw DomainError("c_z_eval: z must lie in [0, alpha] with alpha <= 1");
  }
  return entropy(std::min(z, 1.0)) + (beta - 1.0) * entropy(z / (beta - 1.0));
}

double d_z_eval(double z, std::size_t m, std::size_t l) {
  if (l == 0 || m <= l) throw DomainError("d_z_eval: need m > l >= 1");
  if (!(z >= 0.0)) throw DomainError("d_z_eval: z must be >= 0");
  const double zlogz = z == 0.0 ? 0.0 : z * std::log(z);
  return 2.0 * z - 2.0 * zlogz + z * std::log(static_cast<double>(m - l) / static_cast<double>(l));
}

double alpha_of_gamma(const RegimePoint& pt) {
  if (!(pt.mu2 > 0.0) || pt.l == 0) throw DomainError("alpha_of_gamma: need mu^2 > 0 and l >= 1");
  return std::min(pt.gamma * pt.p / (static_cast<double>(pt.l) * pt.mu2), 1.0);
}

std::uint64_t converse_threshold(Metric metric, Regime regime, const RegimePoint& pt) {
  if (pt.l == 0) throw DomainError("converse_threshold: l must be at least 1");
  const double snr_log = std::log1p(pt.p / (pt.nu * pt.nu));
  if (!(snr_log > 0.0)) throw DomainError("converse_threshold: need P / nu^2 > 0");
  const double l = static_cast<double>(pt.l);
  double value = 0.0;
  if (regime == Regime::kLinear) {
    switch (metric) {
      case Metric::kExact:
        if (!(pt.beta > 2.0)) throw DomainError("converse_threshold: beta must exceed 2");
        value = static_cast<double>(pt.m) * entropy(1.0 / pt.beta) / snr_log;
        break;
      case Metric::kOverlap:
        value = c_alpha_beta(pt.alpha, pt.beta) * l / snr_log;
        break;
      case Metric::kEnergy:
        value = c_alpha_beta(alpha_of_gamma(pt), pt.beta) * l / snr_log;
        break;
    }
  } else {
    if (pt.m <= pt.l + 1) throw DomainError("converse_threshold: sublinear form needs m > l + 1");
    const double base = l * std::log(static_cast<double>(pt.m - pt.l)) / snr_log;
    switch (metric) {
      case Metric::kExact: value = base; break;
      case Metric::kOverlap: value = (1.0 - pt.alpha) * base; break;
      case Metric::kEnergy: value = (1.0 - alpha_of_gamma(pt)) * base; break;
    }
  }
  return value > 0.0 ? static_cast<std::uint64_t>(std::floor(value)) : 0;
}

namespace {

RegimePoint at_n(const RegimePoint& pt, Metric metric, std::size_t n) {
  RegimePoint q = pt;
  q.n = n;
  q.delta = delta_from_prime(n, pt.l, default_delta_prime(metric, pt));
  return q;
}

// Smallest N of the proof's form for each metric and regime.
std::size_t smallest_admissible_n(Metric metric, Regime regime, const RegimePoint& pt) {
  const double l = static_cast<double>(pt.l);
  if (regime == Regime::kLinear && metric == Metric::kExact) {
    // C0 = (N - L) / (4L) > 2 + log(beta - 1)
    const double c0 = 2.0 + std::log(pt.beta - 1.0);
    return static_cast<std::size_t>(std::floor((4.0 * c0 + 1.0) * l)) + 1;
  }
  if (regime == Regime::kLinear && metric == Metric::kOverlap) {
    RegimePoint probe = at_n(pt, metric, pt.l + 1);
    const double c3 = c3hat_threshold(probe);  // depends on delta' only
    return static_cast<std::size_t>(std::floor((4.0 * c3 + 1.0) * l)) + 1;
  }
  return pt.l + 1;
}

}  // namespace

std::optional<double> achievability_union_bound(Metric metric, Regime regime,
                                                const RegimePoint& pt) {
  if (pt.n <= pt.l) return std::nullopt;
  if (pt.n < smallest_admissible_n(metric, regime, pt)) return std::nullopt;
  const double l = static_cast<double>(pt.l);
  const double c = (static_cast<double>(pt.n) - l) / (4.0 * l);
  switch (metric) {
    case Metric::kExact:
      return union_bound_metric1(pt, c, true);
    case Metric::kOverlap:
      if (regime == Regime::kLinear) return union_bound_metric2(pt, c);
      return union_bound_metric2_exact(pt);
    case Metric::kEnergy:
      return union_bound_metric3(pt);
  }
  return std::nullopt;
}

std::uint64_t achievability_threshold(Metric metric, Regime regime, const RegimePoint& pt,
                                      double target) {
  if (pt.l == 0 || pt.m < pt.l) throw DomainError("achievability_threshold: need 1 <= l <= m");
  if (!(target > 0.0 && target < 1.0)) throw DomainError("achievability_threshold: target in (0,1)");
  const std::size_t n_max = pt.l * 1'000'000;
  auto bound_at = [&](std::size_t n) {
    return *achievability_union_bound(metric, regime, at_n(pt, metric, n));
  };
  std::size_t lo = smallest_admissible_n(metric, regime, pt);
  if (bound_at(lo) <= target) return lo;
  std::size_t hi = lo;
  do {
    lo = hi;
    hi = std::min(n_max, 2 * hi);
    if (bound_at(hi) <= target) break;
    if (hi == n_max) {
      throw DomainError("achievability_threshold: target unreachable for N <= 1e6 L");
    }
  } while (true);
  // invariant: bound(lo) > target >= bound(hi)
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (bound_at(mid) <= target ? hi : lo) = mid;
  }
  return hi;
}

BoundReport make_bound_report(Metric metric, Regime regime, RegimePoint pt, double target) {
  BoundReport r;
  r.converse_n = converse_threshold(metric, regime, pt);
  r.notes.push_back("converse N keeps the leading-order term only; o(.) corrections dropped");
  try {
    r.achievability_n = achievability_threshold(metric, regime, pt, target);
    r.notes.push_back("achievability N: smallest admissible N with union bound <= " +
                      std::to_string(target));
  } catch (const DomainError& e) {
    r.notes.push_back(std::string("achievability N unavailable: ") + e.what());
  }
  if (pt.n <= pt.l) {
    r.notes.push_back("n <= l: typicality bounds not evaluated");
    return r;
  }
  if (pt.delta == 0.0) pt.delta = delta_from_prime(pt.n, pt.l, default_delta_prime(metric, pt));
  r.atypicality_bound = atypicality_bound(pt);
  const double dprime = delta_prime(pt);
  for (std::size_t k = 0; k < pt.l; ++k) {
    const double missed = static_cast<double>(pt.l - k) * pt.mu2;
    r.false_typicality_bound.push_back(missed > dprime ? false_typicality_bound(pt, missed) : 1.0);
  }
  try {
    r.union_bound = achievability_union_bound(metric, regime, pt);
    if (!r.union_bound) r.notes.push_back("union bound: n below the admissible proof form");
  } catch (const DomainError& e) {
    r.notes.push_back(std::string("union bound unavailable: ") + e.what());
  }
  return r;
}

}  // namespace cslab
