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

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lrsynth/bit_matrix.hpp"
#include "lrsynth/circuit.hpp"

namespace lrsynth {

namespace detail {

// Emits the recorded reduction ops reversed, which is the circuit that
// rebuilds the reduced operator.
inline CnotCircuit circuit_from_reduction(std::size_t n,
                                          const std::vector<CnotGate>& ops) {
  CnotCircuit c(n);
  c.reserve(ops.size());
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) c.add(it->control, it->target);
  return c;
}

}  // namespace detail

/// Plain Gauss-Jordan synthesis: reduce a copy of a to I column by column
/// with row additions only (a zero diagonal entry is fixed by adding the
/// first row below it that holds a 1), then emit the ops reversed.
inline CnotCircuit synth_gauss(const BitMatrix& a) {
  const std::size_t n = a.dim();
  BitMatrix w = a;
  std::vector<CnotGate> ops;
  for (std::size_t j = 0; j < n; ++j) {
    if (!w.get(j, j)) {
      std::size_t r = n;
      for (std::size_t i = j + 1; i < n; ++i) {
        if (w.get(i, j)) {
          r = i;
          break;
        }
      }
      if (r == n) throw SingularMatrixError();
      w.row_add(r, j);
      ops.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(j)});
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j && w.get(i, j)) {
        w.row_add(j, i);
        ops.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i)});
      }
    }
  }
  return detail::circuit_from_reduction(n, ops);
}

/// Block size used when the caller does not pick one: half the bit width
/// of the operator.
inline std::size_t default_pmh_block_size(std::size_t n) {
  const std::size_t lg = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(n))));
  return lg / 2 > 0 ? lg / 2 : 1;
}

namespace detail {

// One lower-triangularization pass in sections of m columns: within each
// section, rows sharing the same non-zero m-bit sub-row are collapsed onto
// the first of them, then the section's columns are cleared below the
// diagonal. Leaves w upper-triangular; appends the ops it applied.
inline void pmh_lower_triangularize(BitMatrix& w, std::size_t m,
                                    std::vector<CnotGate>& ops) {
  const std::size_t n = w.dim();
  for (std::size_t sec = 0; sec < n; sec += m) {
    const std::size_t width = std::min(m, n - sec);
    std::unordered_map<std::uint64_t, std::size_t> first_with;
    first_with.reserve((n - sec) * 2);
    for (std::size_t r = sec; r < n; ++r) {
      const std::uint64_t pat = w.extract_bits(r, sec, width);
      if (pat == 0) continue;
      auto [it, inserted] = first_with.try_emplace(pat, r);
      if (!inserted) {
        w.row_add(it->second, r);
        ops.push_back({static_cast<std::uint32_t>(it->second),
                       static_cast<std::uint32_t>(r)});
      }
    }
    for (std::size_t j = sec; j < sec + width; ++j) {
      if (!w.get(j, j)) {
        std::size_t piv = n;
        for (std::size_t r = j + 1; r < n; ++r) {
          if (w.get(r, j)) {
            piv = r;
            break;
          }
        }
        if (piv == n) throw SingularMatrixError();
        w.row_add(piv, j);
        ops.push_back({static_cast<std::uint32_t>(piv), static_cast<std::uint32_t>(j)});
      }
      for (std::size_t r = j + 1; r < n; ++r) {
        if (w.get(r, j)) {
          w.row_add(j, r);
          ops.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(r)});
        }
      }
    }
  }
}

}  // namespace detail

/// Section-wise elimination with duplicate sub-row removal. Lower and upper
/// parts are cleared by two passes, the second on the transpose with the
/// recorded ops emitted control/target swapped.
inline CnotCircuit synth_pmh(const BitMatrix& a, std::size_t m) {
  const std::size_t n = a.dim();
  if (m < 1 || m > n)
    throw std::invalid_argument("synth_pmh: block size must be in [1, n]");
  BitMatrix w = a;
  std::vector<CnotGate> lower_ops;
  detail::pmh_lower_triangularize(w, m, lower_ops);
  BitMatrix wt = transpose(w);
  std::vector<CnotGate> upper_ops;
  detail::pmh_lower_triangularize(wt, m, upper_ops);
  CnotCircuit c(n);
  for (const CnotGate& g : upper_ops) c.add(g.target, g.control);
  for (auto it = lower_ops.rbegin(); it != lower_ops.rend(); ++it)
    c.add(it->control, it->target);
  return c;
}

inline CnotCircuit synth_pmh(const BitMatrix& a) {
  return synth_pmh(a, default_pmh_block_size(a.dim()));
}

}  // namespace lrsynth
