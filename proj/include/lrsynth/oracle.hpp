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
#include <stdexcept>
#include <vector>

#include "lrsynth/bit_matrix.hpp"
#include "lrsynth/circuit.hpp"

namespace lrsynth {

namespace detail {

inline std::uint32_t encode_small(const BitMatrix& a) {
  const std::size_t n = a.dim();
  std::uint32_t key = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (a.get(r, c)) key |= 1u << (r * n + c);
  return key;
}

}  // namespace detail

/// Minimum-gate-count circuit for an invertible operator, by breadth-first
/// search from the identity over all n(n−1) row-operation generators. The
/// state space is the whole of GL(n,2), so this is restricted to n ≤ 4.
inline CnotCircuit brute_force_optimal(const BitMatrix& a) {
  const std::size_t n = a.dim();
  if (n > 4)
    throw std::invalid_argument(
        "brute_force_optimal: state space too large beyond n = 4");

  struct Gen {
    std::uint32_t ctrl, tgt;
    std::uint32_t src_mask;
    std::uint32_t shift_up;  // tgt*n - ctrl*n when tgt > ctrl, else 0
    std::uint32_t shift_dn;
  };
  std::vector<Gen> gens;
  std::uint32_t row0_mask = (n == 4) ? 0xFu : ((1u << n) - 1u);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Gen g{};
      g.ctrl = i;
      g.tgt = j;
      g.src_mask = row0_mask << (i * n);
      if (j > i) {
        g.shift_up = (j - i) * static_cast<std::uint32_t>(n);
        g.shift_dn = 0;
      } else {
        g.shift_up = 0;
        g.shift_dn = (i - j) * static_cast<std::uint32_t>(n);
      }
      gens.push_back(g);
    }
  }
  auto apply = [](const Gen& g, std::uint32_t key) {
    const std::uint32_t src = key & g.src_mask;
    return g.shift_up ? key ^ (src << g.shift_up) : key ^ (src >> g.shift_dn);
  };

  const std::uint32_t start = detail::encode_small(BitMatrix::identity(n));
  const std::uint32_t target = detail::encode_small(a);
  const std::size_t space = std::size_t{1} << (n * n);
  // parent op per state; -1 unvisited, -2 start
  std::vector<std::int8_t> parent_op(space, -1);
  std::vector<std::uint32_t> parent_key(space, 0);
  std::vector<std::uint32_t> frontier{start}, next;
  parent_op[start] = -2;
  while (parent_op[target] == -1 && !frontier.empty()) {
    next.clear();
    for (std::uint32_t key : frontier) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const std::uint32_t nk = apply(gens[g], key);
        if (parent_op[nk] != -1) continue;
        parent_op[nk] = static_cast<std::int8_t>(g);
        parent_key[nk] = key;
        next.push_back(nk);
      }
    }
    frontier.swap(next);
  }
  if (parent_op[target] == -1) throw SingularMatrixError();

  std::vector<std::uint8_t> path;  // generator indices, last applied first
  for (std::uint32_t k = target; parent_op[k] != -2; k = parent_key[k])
    path.push_back(static_cast<std::uint8_t>(parent_op[k]));
  CnotCircuit c(n);
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    c.add(gens[*it].ctrl, gens[*it].tgt);
  return c;
}

}  // namespace lrsynth
