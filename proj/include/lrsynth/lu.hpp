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
#include <limits>
#include <stdexcept>
#include <vector>

#include "lrsynth/bit_matrix.hpp"

namespace lrsynth {

/// Pivot selection for lu_decompose.
///  - standard: first column, first row holding a 1 (row permutation only).
///  - sparse:   minimum-weight residual row, then its minimum-weight
///              admissible column; ties take the lowest index.
///  - min_ones: the admissible pivot whose elimination leaves the fewest
///              ones in the residual; ties are lexicographic on (row, col).
enum class LuStrategy { standard, sparse, min_ones };

/// P1 * A * P2 = L * U with unit-diagonal triangular factors.
struct LuFactors {
  Permutation p1;
  Permutation p2;
  BitMatrix l;
  BitMatrix u;
};

namespace detail {

// XOR row src into row dst restricted to columns >= from. Keeps the
// multiplier column of an in-place LU intact.
inline void row_add_from(BitMatrix& m, std::size_t src, std::size_t dst,
                         std::size_t from) {
  const std::size_t w0 = from >> 6;
  const std::uint64_t head = ~std::uint64_t{0} << (from & 63);
  const std::uint64_t* s = m.row(src);
  std::uint64_t* d = m.row(dst);
  d[w0] ^= s[w0] & head;
  for (std::size_t w = w0 + 1; w < m.words_per_row(); ++w) d[w] ^= s[w];
}

// Residual column weights over rows >= step, columns >= step.
inline std::vector<std::uint32_t> residual_col_weights(const BitMatrix& w,
                                                       std::size_t step) {
  const std::size_t n = w.dim();
  std::vector<std::uint32_t> cnt(n, 0);
  for (std::size_t r = step; r < n; ++r) {
    const std::uint64_t* row = w.row(r);
    for (std::size_t wd = step >> 6; wd < w.words_per_row(); ++wd) {
      std::uint64_t bits = row[wd];
      if (wd == (step >> 6)) bits &= ~std::uint64_t{0} << (step & 63);
      while (bits) {
        cnt[(wd << 6) + std::countr_zero(bits)]++;
        bits &= bits - 1;
      }
    }
  }
  return cnt;
}

inline std::pair<std::size_t, std::size_t> pick_pivot_standard(const BitMatrix& w,
                                                               std::size_t step) {
  const std::size_t n = w.dim();
  for (std::size_t r = step; r < n; ++r) {
    if (w.get(r, step)) return {r, step};
  }
  throw SingularMatrixError();
}

inline std::pair<std::size_t, std::size_t> pick_pivot_sparse(const BitMatrix& w,
                                                             std::size_t step) {
  const std::size_t n = w.dim();
  std::size_t best_weight = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> rows;
  for (std::size_t r = step; r < n; ++r) {
    const std::size_t wt = w.row_popcount_from(r, step);
    if (wt == 0) continue;
    if (wt < best_weight) {
      best_weight = wt;
      rows.clear();
    }
    if (wt == best_weight) rows.push_back(r);
  }
  if (rows.empty()) throw SingularMatrixError();
  const std::vector<std::uint32_t> colw = residual_col_weights(w, step);
  std::size_t best_r = n, best_c = n;
  std::uint32_t best_cw = std::numeric_limits<std::uint32_t>::max();
  for (std::size_t r : rows) {
    std::uint32_t row_cw = std::numeric_limits<std::uint32_t>::max();
    std::size_t row_c = n;
    for (std::size_t c = step; c < n; ++c) {
      if (w.get(r, c) && colw[c] < row_cw) {
        row_cw = colw[c];
        row_c = c;
      }
    }
    if (row_cw < best_cw) {
      best_cw = row_cw;
      best_r = r;
      best_c = row_c;
    }
  }
  return {best_r, best_c};
}

inline std::pair<std::size_t, std::size_t> pick_pivot_min_ones(const BitMatrix& w,
                                                               std::size_t step) {
  const std::size_t n = w.dim();
  std::size_t total = 0;
  std::vector<std::size_t> rw(n, 0);
  for (std::size_t r = step; r < n; ++r) {
    rw[r] = w.row_popcount_from(r, step);
    total += rw[r];
  }
  if (total == 0) throw SingularMatrixError();
  long long best_score = std::numeric_limits<long long>::max();
  std::size_t best_r = n, best_c = n;
  std::vector<long long> d(n, 0);
  for (std::size_t r = step; r < n; ++r) {
    if (rw[r] == 0) continue;
    for (std::size_t k = step; k < n; ++k) {
      if (k == r) continue;
      // Residual weight of row k after adding row r.
      std::size_t pc = 0;
      const std::uint64_t* a = w.row(k);
      const std::uint64_t* b = w.row(r);
      const std::size_t w0 = step >> 6;
      pc += std::popcount((a[w0] ^ b[w0]) & (~std::uint64_t{0} << (step & 63)));
      for (std::size_t wd = w0 + 1; wd < w.words_per_row(); ++wd)
        pc += std::popcount(a[wd] ^ b[wd]);
      d[k] = static_cast<long long>(pc) - static_cast<long long>(rw[k]);
    }
    const long long base = static_cast<long long>(total - rw[r]);
    for (std::size_t c = step; c < n; ++c) {
      if (!w.get(r, c)) continue;
      long long score = base;
      for (std::size_t k = step; k < n; ++k) {
        if (k != r && w.get(k, c)) score += d[k];
      }
      if (score < best_score) {
        best_score = score;
        best_r = r;
        best_c = c;
      }
    }
  }
  return {best_r, best_c};
}

}  // namespace detail

/// Full-pivot GF(2) LU: returns P1, P2, L, U with P1*A*P2 = L*U. The
/// min_ones strategy is quartic and refuses dimensions above
/// min_ones_limit unless the caller raises it.
inline LuFactors lu_decompose(const BitMatrix& a, LuStrategy strategy,
                              std::size_t min_ones_limit = 256) {
  const std::size_t n = a.dim();
  if (strategy == LuStrategy::min_ones && n > min_ones_limit)
    throw std::invalid_argument(
        "lu_decompose: min_ones strategy limited to dimension " +
        std::to_string(min_ones_limit));
  BitMatrix w = a;
  std::vector<std::uint32_t> rowp(n), colp(n);
  for (std::size_t i = 0; i < n; ++i) rowp[i] = colp[i] = static_cast<std::uint32_t>(i);
  for (std::size_t s = 0; s < n; ++s) {
    std::pair<std::size_t, std::size_t> piv;
    switch (strategy) {
      case LuStrategy::standard:
        piv = detail::pick_pivot_standard(w, s);
        break;
      case LuStrategy::sparse:
        piv = detail::pick_pivot_sparse(w, s);
        break;
      case LuStrategy::min_ones:
        piv = detail::pick_pivot_min_ones(w, s);
        break;
    }
    w.swap_rows(s, piv.first);
    std::swap(rowp[s], rowp[piv.first]);
    w.swap_cols(s, piv.second);
    std::swap(colp[s], colp[piv.second]);
    for (std::size_t r = s + 1; r < n; ++r) {
      if (w.get(r, s)) detail::row_add_from(w, s, r, s + 1);
    }
  }
  LuFactors f{Permutation(n), Permutation(n), BitMatrix(n), BitMatrix(n)};
  for (std::size_t i = 0; i < n; ++i) {
    f.l.set(i, i, true);
    f.u.set(i, i, true);
    for (std::size_t j = 0; j < i; ++j) {
      if (w.get(i, j)) f.l.set(i, j, true);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w.get(i, j)) f.u.set(i, j, true);
    }
  }
  std::vector<std::uint32_t> p1(n);
  for (std::size_t k = 0; k < n; ++k) p1[rowp[k]] = static_cast<std::uint32_t>(k);
  f.p1 = Permutation(std::move(p1));
  f.p2 = Permutation(std::vector<std::uint32_t>(colp.begin(), colp.end()));
  return f;
}

}  // namespace lrsynth
