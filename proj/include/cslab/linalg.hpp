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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cslab {

using Complex = std::complex<double>;

inline constexpr double kDefaultRankTol = 1e-10;

/// Dense complex vector.
class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t n, Complex fill = {});
  explicit CVector(std::vector<Complex> entries);

  std::size_t size() const { return entries_.size(); }
  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

  std::span<Complex> span() { return entries_; }
  std::span<const Complex> span() const { return entries_; }
  const std::vector<Complex>& entries() const { return entries_; }

  double squared_norm() const;

  friend bool operator==(const CVector&, const CVector&) = default;

 private:
  std::vector<Complex> entries_;
};

/// Dense complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols, Complex fill = {});
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static CMatrix identity(std::size_t rows, std::size_t cols);
  static CMatrix from_columns(std::span<const CVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  const std::vector<Complex>& entries() const { return entries_; }

  CVector column(std::size_t c) const;
  /// Submatrix holding the listed columns in the listed order.
  CMatrix select_columns(std::span<const std::size_t> cols) const;

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, const CVector& x);

/// Conjugate inner product u* v.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);

/// Gram-Schmidt basis grown one column at a time.
///
/// Each pushed column is orthogonalized against the retained basis with two
/// modified Gram-Schmidt passes. A column is retained when its residual norm
/// exceeds `tol * reference_norm`; the reference is supplied by the caller
/// (the largest column norm of the matrix being factored).
class IncrementalBasis {
 public:
  explicit IncrementalBasis(std::size_t rows);

  struct PushResult {
    double residual_norm;
    bool retained;
  };

  PushResult push(std::span<const Complex> column, double tol, double reference_norm);
  /// Undo the most recent push (retained or not).
  void pop();
  void clear();

  std::size_t rows() const { return rows_; }
  std::size_t pushed() const { return retained_flags_.size(); }
  std::size_t rank() const { return basis_.size() / rows_; }
  std::span<const Complex> vector(std::size_t k) const {
    return {basis_.data() + k * rows_, rows_};
  }

 private:
  std::size_t rows_;
  std::vector<Complex> basis_;  // rank() contiguous unit vectors
  std::vector<bool> retained_flags_;
  std::vector<Complex> work_;
};

struct OrthonormalBasis {
  CMatrix basis;  // rows x rank
  std::size_t rank = 0;
};

/// Orthonormal basis of the column space of `m`. Requires rows >= cols.
OrthonormalBasis orthonormal_basis(const CMatrix& m, double tol = kDefaultRankTol);

/// ||y||^2 - sum_j |q_j* y|^2 for an orthonormal `basis`, clamped at zero.
double residual_energy(const CVector& y, const CMatrix& basis);

std::size_t numeric_rank(const CMatrix& m, double tol = kDefaultRankTol);

}  // namespace cslab
