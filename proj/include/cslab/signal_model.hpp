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

#include <cstdint>
#include <optional>
#include <vector>

#include "cslab/linalg.hpp"

namespace cslab {

/// Sparse vector in C^m: sorted support with aligned nonzero values.
class SparseSignal {
 public:
  SparseSignal(std::size_t m, std::vector<std::size_t> support, std::vector<Complex> values);

  std::size_t m() const { return m_; }
  std::size_t l() const { return support_.size(); }
  const std::vector<std::size_t>& support() const { return support_; }
  const std::vector<Complex>& values() const { return values_; }

  /// Dense length-m representation.
  CVector dense() const;

 private:
  std::size_t m_;
  std::vector<std::size_t> support_;
  std::vector<Complex> values_;
};

enum class RegimeKind { kMetric1Growth, kConstantPower, kCustom };

enum class ProfileKind { kFlat, kTwoLevel, kCustom };

/// Magnitude profile of the nonzero entries. Moduli are always rescaled so
/// the total power matches the requested value.
struct MagnitudeProfile {
  ProfileKind kind = ProfileKind::kFlat;
  // two-level: `high_count` entries share `high_fraction` of the power,
  // the remaining entries share the rest.
  std::size_t high_count = 1;
  double high_fraction = 0.8;
  // custom: relative moduli, one per support entry.
  std::vector<double> custom_moduli;
};

struct SignalRegime {
  RegimeKind kind = RegimeKind::kConstantPower;
  /// Linear regime ratio m / l (must exceed 2). Absent means sublinear.
  std::optional<double> beta;
  MagnitudeProfile profile;
};

/// Total power for the Error-Metric-1 growth regime with a flat profile:
/// mu^2 = c (log l)^{3/4} / sqrt(l), so l mu^4 / log l = c^2 sqrt(log l).
double metric1_growth_power(std::size_t l, double c);

SparseSignal make_signal(std::size_t m, std::size_t l, const SignalRegime& regime,
                         double power, std::uint64_t seed);

/// Smallest nonzero modulus.
double mu(const SparseSignal& signal);
/// Largest nonzero modulus.
double rho(const SparseSignal& signal);
double power(const SparseSignal& signal);

/// N x M matrix with i.i.d. circular complex Gaussian entries of unit variance.
CMatrix sample_measurement_matrix(std::size_t n, std::size_t m, std::uint64_t seed);

/// Length-n circular complex Gaussian noise with total variance nu^2.
CVector sample_noise(std::size_t n, double nu, std::uint64_t seed);

/// y = A x + n.
CVector measure(const CMatrix& a, const SparseSignal& signal, const CVector& noise);

struct SeedRecord {
  std::uint64_t matrix_seed = 0;
  std::uint64_t noise_seed = 0;
  std::uint64_t signal_seed = 0;
};

struct MeasurementInstance {
  CMatrix a;
  SparseSignal signal;
  CVector noise;
  CVector y;
  SeedRecord seeds;
};

/// Draws a full instance from its seed record; calling twice with the same
/// arguments reproduces every field bitwise.
MeasurementInstance make_instance(std::size_t n, std::size_t m, std::size_t l,
                                  const SignalRegime& regime, double power, double nu,
                                  const SeedRecord& seeds);

}  // namespace cslab
