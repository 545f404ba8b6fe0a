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

#include "cslab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cslab/error.hpp"

namespace cslab {

CVector::CVector(std::size_t n, Complex fill) : entries_(n, fill) {}

CVector::CVector(std::vector<Complex> entries) : entries_(std::move(entries)) {}

double CVector::squared_norm() const {
  double s = 0.0;
  for (const auto& v : entries_) s += std::norm(v);
  return s;
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, Complex fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("CMatrix: " + std::to_string(entries_.size()) +
                         " entries for a " + std::to_string(rows_) + "x" +
                         std::to_string(cols_) + " matrix");
  }
}

CMatrix CMatrix::identity(std::size_t rows, std::size_t cols) {
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::from_columns(std::span<const CVector> columns) {
  if (columns.empty()) throw DimensionError("CMatrix::from_columns: no columns");
  const std::size_t rows = columns.front().size();
  CMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      throw DimensionError("CMatrix::from_columns: ragged columns");
    }
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

CVector CMatrix::column(std::size_t c) const {
  if (c >= cols_) throw DimensionError("CMatrix::column: index out of range");
  CVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

CMatrix CMatrix::select_columns(std::span<const std::size_t> cols) const {
  CMatrix out(rows_, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k] >= cols_) throw DimensionError("select_columns: index out of range");
    for (std::size_t r = 0; r < rows_; ++r) out(r, k) = (*this)(r, cols[k]);
  }
  return out;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

CVector operator*(const CMatrix& a, const CVector& x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector product: size mismatch");
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s{};
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
    out[i] = s;
  }
  return out;
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  // Split real/imag accumulation; std::complex operator* carries NaN checks.
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double ur = u[i].real(), ui = u[i].imag();
    const double vr = v[i].real(), vi = v[i].imag();
    re += ur * vr + ui * vi;
    im += ur * vi - ui * vr;
  }
  return {re, im};
}

namespace {

// w -= c * q
void subtract_scaled(std::span<Complex> w, Complex c, std::span<const Complex> q) {
  const double cr = c.real(), ci = c.imag();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double qr = q[i].real(), qi = q[i].imag();
    w[i] = {w[i].real() - (cr * qr - ci * qi), w[i].imag() - (cr * qi + ci * qr)};
  }
}

double span_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += z.real() * z.real() + z.imag() * z.imag();
  return std::sqrt(s);
}

double max_column_norm(const CMatrix& m) {
  double best = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += std::norm(m(r, c));
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

}  // namespace

IncrementalBasis::IncrementalBasis(std::size_t rows) : rows_(rows), work_(rows) {
  if (rows == 0) throw DimensionError("IncrementalBasis: zero rows");
}

IncrementalBasis::PushResult IncrementalBasis::push(std::span<const Complex> column,
                                                    double tol, double reference_norm) {
  if (column.size() != rows_) throw DimensionError("IncrementalBasis::push: length mismatch");
  std::copy(column.begin(), column.end(), work_.begin());
  const std::size_t r = rank();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < r; ++k) {
      const auto q = vector(k);
      subtract_scaled(work_, inner(q, work_), q);
    }
  }
  const double norm = span_norm(work_);
  const bool keep = norm > tol * reference_norm && norm > 0.0;
  if (keep) {
    const double inv = 1.0 / norm;
    for (const auto& z : work_) basis_.push_back(z * inv);
  }
  retained_flags_.push_back(keep);
  return {norm, keep};
}

void IncrementalBasis::pop() {
  if (retained_flags_.empty()) return;
  if (retained_flags_.back()) basis_.resize(basis_.size() - rows_);
  retained_flags_.pop_back();
}

void IncrementalBasis::clear() {
  basis_.clear();
  retained_flags_.clear();
}

namespace {

IncrementalBasis factor_columns(const CMatrix& m, double tol) {
  IncrementalBasis basis(m.rows());
  const double ref = max_column_norm(m);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const CVector col = m.column(c);
    basis.push(col.span(), tol, ref);
  }
  return basis;
}

}  // namespace

OrthonormalBasis orthonormal_basis(const CMatrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) throw DimensionError("orthonormal_basis: empty matrix");
  if (m.rows() < m.cols()) {
    throw DimensionError("orthonormal_basis: need rows >= cols, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (tol < 0.0) throw DomainError("orthonormal_basis: negative tolerance");
  const IncrementalBasis inc = factor_columns(m, tol);
  OrthonormalBasis out;
  out.rank = inc.rank();
  out.basis = CMatrix(m.rows(), out.rank);
  for (std::size_t k = 0; k < out.rank; ++k) {
    const auto q = inc.vector(k);
    for (std::size_t r = 0; r < m.rows(); ++r) out.basis(r, k) = q[r];
  }
  return out;
}

double residual_energy(const CVector& y, const CMatrix& basis) {
  if (y.size() != basis.rows()) throw DimensionError("residual_energy: length mismatch");
#ifndef NDEBUG
  for (std::size_t i = 0; i < basis.cols(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Complex g{};
      for (std::size_t r = 0; r < basis.rows(); ++r) g += std::conj(basis(r, i)) * basis(r, j);
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(g - expect) > 1e-8) throw DomainError("residual_energy: basis not orthonormal");
    }
  }
#endif
  double energy = y.squared_norm();
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    Complex c{};
    for (std::size_t r = 0; r < basis.rows(); ++r) c += std::conj(basis(r, j)) * y[r];
    energy -= std::norm(c);
  }
  return std::max(energy, 0.0);
}

std::size_t numeric_rank(const CMatrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return factor_columns(m, tol).rank();
}

}  // namespace cslab
