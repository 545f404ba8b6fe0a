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

#include "cslab/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "cslab/error.hpp"

namespace cslab {

double typicality_target(std::size_t n, std::size_t l, double nu) {
  const double nn = static_cast<double>(n);
  return (nn - static_cast<double>(l)) / nn * nu * nu;
}

namespace {

// Walks L-subsets in lexicographic order, reusing the orthonormalized prefix
// shared with the previous subset. Per-subset results match a fresh
// factorization of A_J bitwise because every prefix is built by the same
// sequence of pushes.
class SubsetScanner {
 public:
  SubsetScanner(const CMatrix& a, const CVector& y, std::size_t l, double tol)
      : n_(a.rows()), m_(a.cols()), l_(l), tol_(tol), y_(y), basis_(a.rows()),
        columns_(a.rows() * a.cols()), col_norms_(a.cols()),
        proj_(l + 1, 0.0), min_res_(l + 1, std::numeric_limits<double>::infinity()),
        max_norm_(l + 1, 0.0) {
    for (std::size_t c = 0; c < m_; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < n_; ++r) {
        columns_[c * n_ + r] = a(r, c);
        s += std::norm(a(r, c));
      }
      col_norms_[c] = std::sqrt(s);
    }
    y_norm2_ = y.squared_norm();
  }

  std::size_t rows() const { return n_; }

  template <typename Visitor>
  void scan(std::uint64_t begin, std::uint64_t end, Visitor&& visit) {
    if (begin >= end) return;
    IndexSet c = unrank_combination(begin, m_, l_);
    basis_.clear();
    std::size_t from = 0;
    for (std::uint64_t r = begin; r < end; ++r) {
      while (basis_.pushed() > from) basis_.pop();
      for (std::size_t pos = from; pos < l_; ++pos) push(pos, c[pos]);
      visit(c, leaf());
      if (r + 1 == end) break;
      const auto changed = next_combination(c, m_);
      if (!changed) break;
      from = *changed;
    }
  }

  SubsetStatistic evaluate(const IndexSet& j) {
    basis_.clear();
    for (std::size_t pos = 0; pos < j.size(); ++pos) push(pos, j[pos]);
    return leaf();
  }

  void set_nu(double nu) { nu_ = nu; }

 private:
  std::span<const Complex> column(std::size_t c) const { return {columns_.data() + c * n_, n_}; }

  void push(std::size_t pos, std::size_t col) {
    // Columns are dropped against the prefix's largest norm; the leaf applies
    // the rank test against the largest norm of the whole subset, which makes
    // the full-rank decision agree with numeric_rank(A_J).
    max_norm_[pos + 1] = std::max(max_norm_[pos], col_norms_[col]);
    const auto res = basis_.push(column(col), tol_, max_norm_[pos + 1]);
    double gain = 0.0;
    if (res.retained) gain = std::norm(inner(basis_.vector(basis_.rank() - 1), y_.span()));
    proj_[pos + 1] = proj_[pos] + gain;
    min_res_[pos + 1] = std::min(min_res_[pos], res.residual_norm);
  }

  SubsetStatistic leaf() const {
    const std::size_t k = basis_.pushed();
    SubsetStatistic s;
    s.full_rank = k > 0 && basis_.rank() == k && min_res_[k] > tol_ * max_norm_[k];
    s.residual = std::max(y_norm2_ - proj_[k], 0.0);
    s.deviation = std::abs(s.residual / static_cast<double>(n_) - typicality_target(n_, k, nu_));
    return s;
  }

  std::size_t n_, m_, l_;
  double tol_;
  double nu_ = 1.0;
  const CVector& y_;
  double y_norm2_ = 0.0;
  IncrementalBasis basis_;
  std::vector<Complex> columns_;  // column-major copy of A
  std::vector<double> col_norms_;
  std::vector<double> proj_;      // prefix sums of |q_k* y|^2
  std::vector<double> min_res_;   // prefix minimum of column residual norms
  std::vector<double> max_norm_;  // prefix maximum of column norms
};

void validate_subset(const IndexSet& j, std::size_t m) {
  if (j.empty()) throw DimensionError("index set is empty");
  IndexSet sorted = j;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] >= m) {
      throw DimensionError("index " + std::to_string(sorted[k]) + " out of range for m = " +
                           std::to_string(m));
    }
    if (k > 0 && sorted[k] == sorted[k - 1]) {
      throw DomainError("duplicate index " + std::to_string(sorted[k]) + " in index set");
    }
  }
}

std::uint64_t checked_subset_count(std::size_t m, std::size_t l, std::uint64_t budget) {
  if (l == 0) throw DomainError("sparsity l must be at least 1");
  if (m < l) {
    throw DimensionError("cannot choose l = " + std::to_string(l) + " columns from m = " +
                         std::to_string(m));
  }
  const auto total = binomial(m, l);
  if (!total || *total > budget) {
    throw ScanBudgetError("C(" + std::to_string(m) + ", " + std::to_string(l) +
                          ") subsets exceed the scan budget of " + std::to_string(budget));
  }
  return *total;
}

struct ChunkResult {
  std::vector<IndexSet> typical;
  std::uint64_t typical_count = 0;
  std::uint64_t scanned = 0;
  std::optional<IndexSet> best;  // min deviation among typical
  double best_deviation = std::numeric_limits<double>::infinity();
  double best_residual = 0.0;
  std::optional<IndexSet> last_typical;
  double last_typical_residual = 0.0;
  bool truth_typical = false;
};

template <typename Work>
std::vector<ChunkResult> run_chunks(std::uint64_t total, unsigned threads, Work&& work) {
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                                  std::min<std::uint64_t>(total, 64))));
  std::vector<ChunkResult> results(t);
  if (t == 1) {
    work(0, total, results[0]);
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned i = 0; i < t; ++i) {
    const std::uint64_t begin = total * i / t;
    const std::uint64_t end = total * (i + 1) / t;
    pool.emplace_back([&, i, begin, end] { work(begin, end, results[i]); });
  }
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace

SubsetStatistic subset_statistic(const CVector& y, const CMatrix& a, const IndexSet& j,
                                 double nu, double rank_tol) {
  if (y.size() != a.rows()) throw DimensionError("y length differs from rows of A");
  validate_subset(j, a.cols());
  IndexSet sorted = j;
  std::sort(sorted.begin(), sorted.end());
  SubsetScanner scanner(a, y, sorted.size(), rank_tol);
  scanner.set_nu(nu);
  return scanner.evaluate(sorted);
}

bool is_jointly_typical(const CVector& y, const CMatrix& a, const IndexSet& j,
                        const TypicalityParams& p, double rank_tol) {
  if (j.size() != p.l) {
    throw DimensionError("index set has " + std::to_string(j.size()) + " entries, expected l = " +
                         std::to_string(p.l));
  }
  const SubsetStatistic s = subset_statistic(y, a, j, p.nu, rank_tol);
  return s.full_rank && s.deviation < p.delta;
}

DecodeReport typicality_decode(const CVector& y, const CMatrix& a, const TypicalityParams& p,
                               const DecodeOptions& options, const IndexSet* truth) {
  if (y.size() != a.rows()) throw DimensionError("y length differs from rows of A");
  if (!(p.delta > 0.0)) throw DomainError("typicality delta must be positive");
  if (!(p.nu > 0.0)) throw DomainError("noise level nu must be positive");
  const std::uint64_t total = checked_subset_count(a.cols(), p.l, options.scan_budget);
  IndexSet truth_sorted;
  if (truth) {
    truth_sorted = *truth;
    std::sort(truth_sorted.begin(), truth_sorted.end());
  }

  auto work = [&](std::uint64_t begin, std::uint64_t end, ChunkResult& out) {
    SubsetScanner scanner(a, y, p.l, options.rank_tol);
    scanner.set_nu(p.nu);
    scanner.scan(begin, end, [&](const IndexSet& c, const SubsetStatistic& s) {
      ++out.scanned;
      if (!(s.full_rank && s.deviation < p.delta)) return;
      ++out.typical_count;
      if (out.typical.size() < options.typical_cap) out.typical.push_back(c);
      if (s.deviation < out.best_deviation) {
        out.best_deviation = s.deviation;
        out.best = c;
        out.best_residual = s.residual;
      }
      out.last_typical = c;
      out.last_typical_residual = s.residual;
      if (truth && c == truth_sorted) out.truth_typical = true;
    });
  };
  const auto chunks = run_chunks(total, options.threads, work);

  DecodeReport report;
  double best_dev = std::numeric_limits<double>::infinity();
  const ChunkResult* best_chunk = nullptr;
  const ChunkResult* last_chunk = nullptr;
  for (const auto& ch : chunks) {
    report.scanned += ch.scanned;
    report.typical_count += ch.typical_count;
    report.true_set_typical = report.true_set_typical || ch.truth_typical;
    for (const auto& s : ch.typical) {
      if (report.typical_sets.size() < options.typical_cap) report.typical_sets.push_back(s);
    }
    if (ch.best && ch.best_deviation < best_dev) {
      best_dev = ch.best_deviation;
      best_chunk = &ch;
    }
    if (ch.last_typical) last_chunk = &ch;
  }
  report.overflow = report.typical_count > report.typical_sets.size();

  switch (p.policy) {
    case DecodePolicy::kUnique:
      if (report.typical_count == 1) {
        report.chosen = *last_chunk->last_typical;
        report.residual_of_chosen = last_chunk->last_typical_residual;
      }
      break;
    case DecodePolicy::kMinDeviation:
      if (best_chunk) {
        report.chosen = *best_chunk->best;
        report.residual_of_chosen = best_chunk->best_residual;
      }
      break;
  }
  return report;
}

IndexSet ml_decode(const CVector& y, const CMatrix& a, std::size_t l, const DecodeOptions& options) {
  if (y.size() != a.rows()) throw DimensionError("y length differs from rows of A");
  const std::uint64_t total = checked_subset_count(a.cols(), l, options.scan_budget);
  auto work = [&](std::uint64_t begin, std::uint64_t end, ChunkResult& out) {
    SubsetScanner scanner(a, y, l, options.rank_tol);
    scanner.scan(begin, end, [&](const IndexSet& c, const SubsetStatistic& s) {
      ++out.scanned;
      if (s.residual < out.best_deviation) {
        out.best_deviation = s.residual;
        out.best = c;
      }
    });
  };
  const auto chunks = run_chunks(total, options.threads, work);
  double best = std::numeric_limits<double>::infinity();
  IndexSet chosen;
  for (const auto& ch : chunks) {
    if (ch.best && ch.best_deviation < best) {
      best = ch.best_deviation;
      chosen = *ch.best;
    }
  }
  return chosen;
}

std::size_t overlap(const IndexSet& a, const IndexSet& b) {
  std::size_t count = 0;
  for (auto i : a) count += static_cast<std::size_t>(std::find(b.begin(), b.end(), i) != b.end());
  return count;
}

double captured_energy(const IndexSet& est, const SparseSignal& signal) {
  double e = 0.0;
  const auto& support = signal.support();
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (std::find(est.begin(), est.end(), support[k]) != est.end()) {
      e += std::norm(signal.values()[k]);
    }
  }
  return e;
}

namespace {

void require_same_size(const IndexSet& est, std::size_t l) {
  if (est.size() != l) {
    throw DimensionError("estimate has " + std::to_string(est.size()) +
                         " indices, true support has " + std::to_string(l));
  }
}

// Strict comparisons below carry a 1e-12 relative guard so that boundary
// cases such as 0.9 > 1 - 0.1 resolve as exact arithmetic would.
constexpr double kStrictGuard = 1e-12;

}  // namespace

bool metric1_success(const IndexSet& est, const IndexSet& truth) {
  require_same_size(est, truth.size());
  return overlap(est, truth) == truth.size();
}

bool metric2_success(const IndexSet& est, const IndexSet& truth, double alpha) {
  require_same_size(est, truth.size());
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  const double l = static_cast<double>(truth.size());
  const double missed = l - static_cast<double>(overlap(est, truth));
  // overlap / L > 1 - alpha  <=>  missed < alpha L
  return missed < alpha * l * (1.0 - kStrictGuard);
}

bool metric3_success(const IndexSet& est, const SparseSignal& signal, double gamma) {
  require_same_size(est, signal.l());
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0,1)");
  const double p = power(signal);
  return captured_energy(est, signal) > (1.0 - gamma) * p + kStrictGuard * p;
}

MetricOutcome score(const std::optional<IndexSet>& est, const SparseSignal& signal, double alpha,
                    double gamma) {
  MetricOutcome out;
  if (!est) return out;
  out.overlap_count = overlap(*est, signal.support());
  out.captured_energy = captured_energy(*est, signal);
  out.metric1 = metric1_success(*est, signal.support());
  out.metric2 = metric2_success(*est, signal.support(), alpha);
  out.metric3 = metric3_success(*est, signal, gamma);
  return out;
}

}  // namespace cslab
