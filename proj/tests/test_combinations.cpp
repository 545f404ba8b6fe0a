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

#include <gtest/gtest.h>

#include <cmath>

#include "cslab/combinations.hpp"
#include "oracle.hpp"

namespace cslab {
namespace {

TEST(Binomial, SmallValuesAndOverflow) {
  EXPECT_EQ(binomial(24, 6).value(), 134596u);
  EXPECT_EQ(binomial(20, 5).value(), 15504u);
  EXPECT_EQ(binomial(5, 0).value(), 1u);
  EXPECT_EQ(binomial(3, 5).value(), 0u);
  EXPECT_EQ(binomial(67, 33).value(), static_cast<std::uint64_t>(oracle::choose(67, 33)));
  EXPECT_FALSE(binomial(200, 100).has_value());
}

TEST(Binomial, LogMatchesExact) {
  for (unsigned n = 1; n <= 60; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      const double exact = std::log(static_cast<double>(oracle::choose(n, k)));
      EXPECT_NEAR(log_binomial(n, k), exact, 1e-10 * std::max(1.0, exact));
    }
  }
}

TEST(Combinations, LexicographicWalkVisitsEverySubsetOnce) {
  const std::size_t n = 9, k = 4;
  IndexSet c = first_combination(k);
  std::uint64_t count = 0;
  IndexSet prev;
  for (;;) {
    EXPECT_EQ(rank_combination(c, n), count);
    EXPECT_EQ(unrank_combination(count, n, k), c);
    if (!prev.empty()) {
      EXPECT_LT(prev, c);
    }
    prev = c;
    ++count;
    const auto changed = next_combination(c, n);
    if (!changed) break;
    for (std::size_t i = 0; i < *changed; ++i) EXPECT_EQ(c[i], prev[i]);
    EXPECT_NE(c[*changed], prev[*changed]);
  }
  EXPECT_EQ(count, binomial(n, k).value());
}

}  // namespace
}  // namespace cslab
