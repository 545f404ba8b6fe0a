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

#include "cslab/combinations.hpp"

#include <cmath>

#include "cslab/error.hpp"

namespace cslab {

std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > UINT64_MAX) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

double log_binomial(double n, double k) {
  if (k < 0.0 || k > n) throw DomainError("log_binomial: need 0 <= k <= n");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

IndexSet first_combination(std::size_t k) {
  IndexSet c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

std::optional<std::size_t> next_combination(std::span<std::size_t> c, std::size_t n) {
  const std::size_t k = c.size();
  if (k == 0) return std::nullopt;
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return i;
    }
  }
  return std::nullopt;
}

IndexSet unrank_combination(std::uint64_t rank, std::size_t n, std::size_t k) {
  const auto total = binomial(n, k);
  if (!total || rank >= *total) throw DomainError("unrank_combination: rank out of range");
  IndexSet c(k);
  std::size_t next = 0;
  for (std::size_t pos = 0; pos < k; ++pos) {
    for (std::size_t v = next;; ++v) {
      // Number of combinations whose element at `pos` is v (given the prefix).
      const std::uint64_t block = *binomial(n - v - 1, k - pos - 1);
      if (rank < block) {
        c[pos] = v;
        next = v + 1;
        break;
      }
      rank -= block;
    }
  }
  return c;
}

std::uint64_t rank_combination(std::span<const std::size_t> c, std::size_t n) {
  const std::size_t k = c.size();
  std::uint64_t rank = 0;
  std::size_t next = 0;
  for (std::size_t pos = 0; pos < k; ++pos) {
    for (std::size_t v = next; v < c[pos]; ++v) rank += *binomial(n - v - 1, k - pos - 1);
    next = c[pos] + 1;
  }
  return rank;
}

}  // namespace cslab
