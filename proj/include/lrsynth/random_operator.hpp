// Copyright 2026 The lrsynth authors
//
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
#include <stdexcept>

#include "lrsynth/bit_matrix.hpp"
#include "lrsynth/prng.hpp"

namespace lrsynth {

/// The operator of k uniformly random CNOTs (control ≠ target) on n lines.
/// k ≈ n² lands in the dense worst-case regime.
inline BitMatrix random_operator(std::size_t n, std::size_t k,
                                 std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_operator: n must be >= 2");
  BitMatrix m = BitMatrix::identity(n);
  std::mt19937_64 rng(seed);
  for (std::size_t g = 0; g < k; ++g) {
    const auto c = static_cast<std::size_t>(bounded_rand(rng, n));
    auto t = static_cast<std::size_t>(bounded_rand(rng, n - 1));
    if (t >= c) ++t;
    m.row_add(c, t);
  }
  return m;
}

}  // namespace lrsynth
