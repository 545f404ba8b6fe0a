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
#include <random>

namespace cslab {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Role tags for per-component seed derivation.
enum class SeedRole : std::uint64_t {
  kMatrix = 0x6d61747269780000ULL,
  kNoise = 0x6e6f697365000000ULL,
  kSignal = 0x7369676e616c0000ULL,
  kTail = 0x7461696c00000000ULL,
};

/// Seed for one component of one trial: hash(master, role, point, trial).
/// Independent of the order in which trials are executed.
std::uint64_t derive_seed(std::uint64_t master, SeedRole role, std::uint64_t point,
                          std::uint64_t trial);

}  // namespace cslab
