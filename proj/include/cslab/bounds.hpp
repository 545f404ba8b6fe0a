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
#include <string>
#include <vector>

namespace cslab {

enum class Metric { kExact = 1, kOverlap = 2, kEnergy = 3 };
enum class Regime { kLinear, kSublinear };

Metric metric_from_int(int m);
int metric_to_int(Metric m);

/// Parameter point shared by every bound evaluator. Natural logs throughout.
struct RegimePoint {
  std::size_t m = 0;
  std::size_t l = 0;
  std::size_t n = 0;
  double beta = 0.0;  // m / l in the linear regime
  double nu = 1.0;    // noise standard deviation
  double p = 1.0;     // signal power
  double mu2 = 0.0;   // squared smallest nonzero modulus
  double alpha = 0.5;
  double gamma = 0.5;
  double zeta = 0.75;
  double delta = 0.0;  // typicality tolerance; delta' = delta N / (N - L)
};

/// delta' = delta N / (N - L).
double delta_prime(const RegimePoint& pt);
/// delta = delta' (N - L) / N.
double delta_from_prime(std::size_t n, std::size_t l, double dprime);

/// zeta-scaled delta' used by each metric's decoder:
/// metric 1: zeta mu^2, metric 2: zeta alpha L mu^2, metric 3: zeta gamma P.
double default_delta_prime(Metric metric, const RegimePoint& pt);
/// Default zeta: 3/4 for metric 1, 1/2 for metrics 2 and 3.
double default_zeta(Metric metric);
/// Proof constant C0 = 2 + log(beta - 1) + 1.
double default_c0(double beta);

/// H(a) = -a log a - (1 - a) log(1 - a), H(0) = H(1) = 0.
double entropy(double a);

struct ChiSquareDeviation {
  double lower_tail_bound;  // P(Omega - k <= -lower_threshold) <= e^{-lambda}
  double upper_tail_bound;  // P(Omega - k >= upper_threshold) <= e^{-lambda}
  double lower_threshold;   // 2 sqrt(k lambda)
  double upper_threshold;   // 2 sqrt(k lambda) + 2 lambda
};

ChiSquareDeviation chi_square_dev_bounds(std::size_t k, double lambda);

/// Bound on P(true support is not delta-typical).
double atypicality_bound(const RegimePoint& pt);

/// Bound on P(a set missing `missed_energy` of the signal is delta-typical).
/// Requires missed_energy > delta'.
double false_typicality_bound(const RegimePoint& pt, double missed_energy);

/// Exponent f(z) of the Error-Metric-1 union bound, z in [1/L, 1].
double f_eval(double z, const RegimePoint& pt, double c0);
/// Closed form of f(1/L): 2 log L + 2 + log(beta-1) - C0 L (mu^2 (1-zeta) / (mu^2 + nu^2))^2.
double f_at_inverse_l(const RegimePoint& pt, double c0);

/// Sublinear analogue k(z), z in [1/L, 1].
double k_eval(double z, const RegimePoint& pt);

/// Error-Metric-1 union bound. exact: atypicality + exact binomial sum over
/// the number of missed indices. Otherwise the two-term form
/// 2 exp(...) + L exp(max{f(1/L), f(1)}) with N = (4 c0 + 1) L.
double union_bound_metric1(const RegimePoint& pt, double c0, bool exact);

/// Lower limit on C3-hat for the metric-2 union bound.
double c3hat_threshold(const RegimePoint& pt);

/// Error-Metric-2 union bound with entropy-bounded binomials and C3-hat.
/// Throws DomainError when c3hat does not exceed c3hat_threshold(pt).
double union_bound_metric2(const RegimePoint& pt, double c3hat);

/// Error-Metric-2 union bound with exact binomials and (N - L)/4, no
/// restriction on C3-hat. Used for the sublinear regime.
double union_bound_metric2_exact(const RegimePoint& pt);

/// Error-Metric-3 union bound. Requires delta' <= gamma P.
double union_bound_metric3(const RegimePoint& pt);

/// N log(1 + P / nu^2).
double miso_capacity(std::size_t n, double p, double nu);

/// C_{alpha,beta}; zero for alpha > (beta - 1) / beta.
double c_alpha_beta(double alpha, double beta);

/// c(z) = H(z) + (beta - 1) H(z / (beta - 1)) on [0, alpha].
double c_z_eval(double z, double alpha, double beta);
/// d(z) = 2z - 2z log z + z log((M - L) / L).
double d_z_eval(double z, std::size_t m, std::size_t l);

/// alpha(gamma, x) = min(gamma P / (L mu^2), 1).
double alpha_of_gamma(const RegimePoint& pt);

/// Leading-order converse: the N below which recovery is asserted to fail.
std::uint64_t converse_threshold(Metric metric, Regime regime, const RegimePoint& pt);

/// Union bound used by achievability_threshold at the point's N, or nullopt
/// when N is outside the admissible proof form.
std::optional<double> achievability_union_bound(Metric metric, Regime regime,
                                                const RegimePoint& pt);

/// Smallest admissible N whose union bound is at most `target`, found by
/// bisection over integer N. Throws DomainError when unreachable below 1e6 L.
std::uint64_t achievability_threshold(Metric metric, Regime regime, const RegimePoint& pt,
                                      double target = 1e-2);

struct BoundReport {
  double atypicality_bound = 0.0;
  /// Indexed by overlap K = 0..L-1.
  std::vector<double> false_typicality_bound;
  std::optional<double> union_bound;
  std::optional<std::uint64_t> achievability_n;
  std::uint64_t converse_n = 0;
  std::vector<std::string> notes;
};

/// Evaluates every bound at `pt` for one metric and regime. `pt.delta` is
/// overwritten from the metric's default delta' when it is zero.
BoundReport make_bound_report(Metric metric, Regime regime, RegimePoint pt, double target = 1e-2);

}  // namespace cslab
