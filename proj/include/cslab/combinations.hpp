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
#include <span>
#include <vector>

namespace cslab {

using IndexSet = std::vector<std::size_t>;

/// Exact C(n, k), or nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k);

/// log C(n, k) through log-gamma.
double log_binomial(double n, double k);

/// First k-subset of {0..n-1} in lexicographic order: {0, 1, ..., k-1}.
IndexSet first_combination(std::size_t k);

/// Advance to the lexicographic successor. Returns the leftmost position that
/// changed, or nullopt when `c` was the last combination (c is left as is).
std::optional<std::size_t> next_combination(std::span<std::size_t> c, std::size_t n);

/// Combination at lexicographic `rank` among the k-subsets of {0..n-1}.
IndexSet unrank_combination(std::uint64_t rank, std::size_t n, std::size_t k);

/// Lexicographic rank of a sorted k-subset of {0..n-1}.
std::uint64_t rank_combination(std::span<const std::size_t> c, std::size_t n);

}  // namespace cslab
