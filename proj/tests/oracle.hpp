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

// Independent reference computations for the tests. Projections go through
// the normal equations (A^H A) c = A^H y solved by Gaussian elimination, a
// different route from the Gram-Schmidt code under test.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cslab/linalg.hpp"

namespace cslab::oracle {

// Solves g c = b in place; g is k x k row-major.
inline std::vector<Complex> solve(std::vector<Complex> g, std::vector<Complex> b, std::size_t k) {
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(g[r * k + col]) > std::abs(g[piv * k + col])) piv = r;
    }
    if (std::abs(g[piv * k + col]) == 0.0) throw std::runtime_error("singular Gram matrix");
    for (std::size_t c = 0; c < k; ++c) std::swap(g[col * k + c], g[piv * k + c]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < k; ++r) {
      const Complex f = g[r * k + col] / g[col * k + col];
      for (std::size_t c = col; c < k; ++c) g[r * k + c] -= f * g[col * k + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Complex> x(k);
  for (std::size_t i = k; i-- > 0;) {
    Complex s = b[i];
    for (std::size_t c = i + 1; c < k; ++c) s -= g[i * k + c] * x[c];
    x[i] = s / g[i * k + i];
  }
  return x;
}

inline std::vector<Complex> gram(const CMatrix& a) {
  const std::size_t k = a.cols();
  std::vector<Complex> g(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex s = 0.0;
      for (std::size_t r = 0; r < a.rows(); ++r) s += std::conj(a(r, i)) * a(r, j);
      g[i * k + j] = s;
    }
  }
  return g;
}

// ||y - A (A^H A)^{-1} A^H y||^2 for full-column-rank A.
inline double residual(const CVector& y, const CMatrix& a) {
  const std::size_t k = a.cols();
  std::vector<Complex> b(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < a.rows(); ++r) b[i] += std::conj(a(r, i)) * y[r];
  }
  const auto c = solve(gram(a), b, k);
  double out = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Complex fit = 0.0;
    for (std::size_t i = 0; i < k; ++i) fit += a(r, i) * c[i];
    out += std::norm(y[r] - fit);
  }
  return out;
}

// Determinant of the Gram matrix by elimination.
inline double gram_determinant(const CMatrix& a) {
  const std::size_t k = a.cols();
  auto g = gram(a);
  Complex det = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(g[r * k + col]) > std::abs(g[piv * k + col])) piv = r;
    }
    if (std::abs(g[piv * k + col]) == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(g[col * k + c], g[piv * k + c]);
      det = -det;
    }
    det *= g[col * k + col];
    for (std::size_t r = col + 1; r < k; ++r) {
      const Complex f = g[r * k + col] / g[col * k + col];
      for (std::size_t c = col; c < k; ++c) g[r * k + c] -= f * g[col * k + c];
    }
  }
  return det.real();
}

// Exact C(n, k) by the multiplicative formula in unsigned 128-bit arithmetic.
inline unsigned __int128 choose(unsigned n, unsigned k) {
  if (k > n) return 0;
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double entropy(double a) {
  if (a <= 0.0 || a >= 1.0) return 0.0;
  return -a * std::log(a) - (1.0 - a) * std::log(1.0 - a);
}

}  // namespace cslab::oracle
