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

#include "cslab/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "cslab/error.hpp"
#include "cslab/rng.hpp"

namespace cslab {

SparseSignal::SparseSignal(std::size_t m, std::vector<std::size_t> support,
                           std::vector<Complex> values)
    : m_(m), support_(std::move(support)), values_(std::move(values)) {
  if (support_.empty()) throw DomainError("SparseSignal: empty support");
  if (support_.size() != values_.size()) {
    throw DimensionError("SparseSignal: support and values differ in length");
  }
  if (support_.size() > m_) throw DimensionError("SparseSignal: support larger than m");
  for (std::size_t k = 0; k < support_.size(); ++k) {
    if (support_[k] >= m_) throw DimensionError("SparseSignal: support index out of range");
    if (k > 0 && support_[k] <= support_[k - 1]) {
      throw DomainError("SparseSignal: support must be strictly increasing");
    }
    if (values_[k] == Complex{}) throw DomainError("SparseSignal: zero value on support");
  }
}

CVector SparseSignal::dense() const {
  CVector x(m_);
  for (std::size_t k = 0; k < support_.size(); ++k) x[support_[k]] = values_[k];
  return x;
}

double metric1_growth_power(std::size_t l, double c) {
  if (l < 2) throw DomainError("metric1_growth_power: need l >= 2 so that log l > 0");
  if (!(c > 0.0)) throw DomainError("metric1_growth_power: c must be positive");
  const double ll = static_cast<double>(l);
  const double mu2 = c * std::pow(std::log(ll), 0.75) / std::sqrt(ll);
  return ll * mu2;
}

namespace {

std::vector<double> squared_moduli(std::size_t l, const MagnitudeProfile& profile,
                                   double total) {
  std::vector<double> sq(l);
  switch (profile.kind) {
    case ProfileKind::kFlat:
      std::fill(sq.begin(), sq.end(), total / static_cast<double>(l));
      break;
    case ProfileKind::kTwoLevel: {
      const std::size_t h = profile.high_count;
      const double f = profile.high_fraction;
      if (h == 0 || h >= l) {
        throw DomainError("two-level profile: high_count must lie in [1, l)");
      }
      if (!(f > 0.0 && f < 1.0)) throw DomainError("two-level profile: fraction must lie in (0,1)");
      for (std::size_t k = 0; k < l; ++k) {
        sq[k] = k < h ? f * total / static_cast<double>(h)
                      : (1.0 - f) * total / static_cast<double>(l - h);
      }
      break;
    }
    case ProfileKind::kCustom: {
      if (profile.custom_moduli.size() != l) {
        throw DimensionError("custom profile: need exactly l moduli");
      }
      double s = 0.0;
      for (double v : profile.custom_moduli) {
        if (!(v > 0.0)) throw DomainError("custom profile: moduli must be positive");
        s += v * v;
      }
      for (std::size_t k = 0; k < l; ++k) {
        sq[k] = total * profile.custom_moduli[k] * profile.custom_moduli[k] / s;
      }
      break;
    }
  }
  return sq;
}

}  // namespace

SparseSignal make_signal(std::size_t m, std::size_t l, const SignalRegime& regime,
                         double power, std::uint64_t seed) {
  if (l == 0) throw DomainError("make_signal: l must be at least 1");
  if (l > m) {
    throw DimensionError("make_signal: l = " + std::to_string(l) + " exceeds m = " +
                         std::to_string(m));
  }
  if (!(power > 0.0) || !std::isfinite(power)) throw DomainError("make_signal: power must be positive");
  if (regime.beta) {
    const double beta = *regime.beta;
    if (!(beta > 2.0)) throw DomainError("make_signal: linear regime needs beta > 2");
    const auto expect_m = static_cast<std::size_t>(std::floor(beta * static_cast<double>(l) + 1e-9));
    if (expect_m != m) {
      throw DomainError("make_signal: linear regime needs m = floor(beta * l) = " +
                        std::to_string(expect_m));
    }
  }

  const std::vector<double> sq = squared_moduli(l, regime.profile, power);

  Rng rng(seed);
  // Partial Fisher-Yates: the first l slots are a uniform draw without replacement.
  std::vector<std::size_t> pool(m);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t k = 0; k < l; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, m - 1);
    std::swap(pool[k], pool[pick(rng)]);
  }
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<std::pair<std::size_t, Complex>> entries(l);
  for (std::size_t k = 0; k < l; ++k) {
    entries[k] = {pool[k], std::polar(std::sqrt(sq[k]), phase(rng))};
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::size_t> support(l);
  std::vector<Complex> values(l);
  for (std::size_t k = 0; k < l; ++k) {
    support[k] = entries[k].first;
    values[k] = entries[k].second;
  }
  return SparseSignal(m, std::move(support), std::move(values));
}

double mu(const SparseSignal& signal) {
  double best = std::abs(signal.values().front());
  for (const auto& v : signal.values()) best = std::min(best, std::abs(v));
  return best;
}

double rho(const SparseSignal& signal) {
  double best = 0.0;
  for (const auto& v : signal.values()) best = std::max(best, std::abs(v));
  return best;
}

double power(const SparseSignal& signal) {
  double s = 0.0;
  for (const auto& v : signal.values()) s += std::norm(v);
  return s;
}

namespace {

Complex circular_gaussian(Rng& rng, std::normal_distribution<double>& part) {
  const double re = part(rng);
  const double im = part(rng);
  return {re, im};
}

}  // namespace

CMatrix sample_measurement_matrix(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0 || m == 0) throw DimensionError("sample_measurement_matrix: n and m must be >= 1");
  Rng rng(seed);
  std::normal_distribution<double> part(0.0, std::sqrt(0.5));
  std::vector<Complex> entries(n * m);
  for (auto& e : entries) e = circular_gaussian(rng, part);
  return CMatrix(n, m, std::move(entries));
}

CVector sample_noise(std::size_t n, double nu, std::uint64_t seed) {
  if (n == 0) throw DimensionError("sample_noise: n must be >= 1");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("sample_noise: nu must be positive");
  Rng rng(seed);
  std::normal_distribution<double> part(0.0, nu * std::sqrt(0.5));
  std::vector<Complex> entries(n);
  for (auto& e : entries) e = circular_gaussian(rng, part);
  return CVector(std::move(entries));
}

CVector measure(const CMatrix& a, const SparseSignal& signal, const CVector& noise) {
  if (a.cols() != signal.m()) throw DimensionError("measure: A has " + std::to_string(a.cols()) +
                                                   " columns, signal has m = " +
                                                   std::to_string(signal.m()));
  if (noise.size() != a.rows()) throw DimensionError("measure: noise length differs from rows of A");
  CVector y(a.rows());
  const auto& support = signal.support();
  const auto& values = signal.values();
  for (std::size_t k = 0; k < a.rows(); ++k) {
    Complex s{};
    for (std::size_t j = 0; j < support.size(); ++j) s += values[j] * a(k, support[j]);
    y[k] = s + noise[k];
  }
  return y;
}

MeasurementInstance make_instance(std::size_t n, std::size_t m, std::size_t l,
                                  const SignalRegime& regime, double power, double nu,
                                  const SeedRecord& seeds) {
  SparseSignal signal = make_signal(m, l, regime, power, seeds.signal_seed);
  CMatrix a = sample_measurement_matrix(n, m, seeds.matrix_seed);
  CVector noise = sample_noise(n, nu, seeds.noise_seed);
  CVector y = measure(a, signal, noise);
  return {std::move(a), std::move(signal), std::move(noise), std::move(y), seeds};
}

}  // namespace cslab
