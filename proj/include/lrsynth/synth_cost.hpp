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

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lrsynth/bit_matrix.hpp"
#include "lrsynth/circuit.hpp"
#include "lrsynth/prng.hpp"

namespace lrsynth {

/// Density heuristics guiding the descent. The H-variants add the same
/// measure of the inverse operator, which penalizes moves that only shift
/// weight into A⁻¹.
enum class CostFunctionKind { h_sum, h_prod, H_sum, H_prod };

inline bool cost_tracks_inverse(CostFunctionKind k) {
  return k == CostFunctionKind::H_sum || k == CostFunctionKind::H_prod;
}

inline bool cost_is_prod(CostFunctionKind k) {
  return k == CostFunctionKind::h_prod || k == CostFunctionKind::H_prod;
}

inline const char* cost_kind_name(CostFunctionKind k) {
  switch (k) {
    case CostFunctionKind::h_sum: return "hsum";
    case CostFunctionKind::h_prod: return "hprod";
    case CostFunctionKind::H_sum: return "Hsum";
    case CostFunctionKind::H_prod: return "Hprod";
  }
  return "?";
}

/// Total number of ones in the matrix.
inline std::size_t cost_h_sum(const BitMatrix& a) { return a.popcount(); }

/// Sum over rows of the natural log of the row weight. A zero row makes the
/// measure undefined and signals a singular operator.
inline double cost_h_prod(const BitMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    const std::size_t pc = a.row_popcount(r);
    if (pc == 0) throw SingularMatrixError();
    s += std::log(static_cast<double>(pc));
  }
  return s;
}

/// Thrown when a descent exceeds its iteration cap without reaching a
/// permutation matrix. Carries the best cost seen, so callers can decide
/// whether a retry with a fresh seed is worth it.
class DescentStuck : public std::runtime_error {
 public:
  DescentStuck(double best_cost, std::size_t iterations)
      : std::runtime_error("greedy descent stuck: best cost " +
                           std::to_string(best_cost) + " after " +
                           std::to_string(iterations) + " iterations"),
        best_cost_(best_cost),
        iterations_(iterations) {}

  double best_cost() const noexcept { return best_cost_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double best_cost_;
  std::size_t iterations_;
};

/// One candidate move: Row(i,j) adds row i into row j of A; Col(i,j) adds
/// column i into column j of A.
struct DescentOp {
  bool is_col;
  std::uint32_t i;
  std::uint32_t j;

  friend bool operator==(const DescentOp& a, const DescentOp& b) {
    return a.is_col == b.is_col && a.i == b.i && a.j == b.j;
  }
};

namespace detail {

inline int xor_popcount(const BitMatrix& m, std::size_t r1, std::size_t r2) {
  const std::uint64_t* a = m.row(r1);
  const std::uint64_t* b = m.row(r2);
  int s = 0;
  for (std::size_t w = 0; w < m.words_per_row(); ++w)
    s += std::popcount(a[w] ^ b[w]);
  return s;
}

inline int word_bit(const std::uint64_t* w, std::size_t x) {
  return static_cast<int>((w[x >> 6] >> (x & 63)) & 1u);
}

inline void collect_ones(const std::uint64_t* w, std::size_t words,
                         std::vector<std::uint32_t>& out) {
  out.clear();
  for (std::size_t k = 0; k < words; ++k) {
    std::uint64_t x = w[k];
    while (x) {
      out.push_back(static_cast<std::uint32_t>((k << 6) + std::countr_zero(x)));
      x &= x - 1;
    }
  }
}

// Delta of the row-measure under "row v ^= row u": depends only on rows u, v.
inline double xor_delta(int xp, int pcv, bool prod,
                        const std::vector<double>& ln_tab) {
  return prod ? ln_tab[xp] - ln_tab[pcv] : static_cast<double>(xp - pcv);
}

// Recomputes m[x][*] and m[*][x] exactly from the rows of mat.
inline void exact_row_col(const BitMatrix& mat, const std::vector<int>& pc,
                          const std::vector<double>& ln_tab, bool prod,
                          std::vector<double>& m, std::size_t x) {
  const std::size_t n = mat.dim();
  double* M = m.data();
  for (std::size_t v = 0; v < n; ++v) {
    if (v == x) continue;
    const int xp = xor_popcount(mat, x, v);
    M[x * n + v] = xor_delta(xp, pc[v], prod, ln_tab);
    M[v * n + x] = xor_delta(xp, pc[x], prod, ln_tab);
  }
  M[x * n + x] = 0.0;
}

// Full fill of an xor-form delta matrix (row ops on mat, or column ops read
// off the transpose).
inline void fill_xor_delta(const BitMatrix& mat, const std::vector<int>& pc,
                           const std::vector<double>& ln_tab, bool prod,
                           std::vector<double>& m) {
  const std::size_t n = mat.dim();
  double* M = m.data();
  for (std::size_t u = 0; u < n; ++u) {
    M[u * n + u] = 0.0;
    for (std::size_t v = u + 1; v < n; ++v) {
      const int xp = xor_popcount(mat, u, v);
      M[u * n + v] = xor_delta(xp, pc[v], prod, ln_tab);
      M[v * n + u] = xor_delta(xp, pc[u], prod, ln_tab);
    }
  }
}

// Full fill of the product-measure column-op delta matrix:
//   m[u][v] = sum over rows r with mat(r,u) = 1 of
//             ln(pc_r + 1 - 2*mat(r,v)) - ln(pc_r)
// computed as a v-independent base plus per-set-bit corrections.
inline void fill_prod_col(const BitMatrix& mat, const BitMatrix& mat_t,
                          const std::vector<int>& pc_rows,
                          const std::vector<double>& ln_tab,
                          std::vector<double>& m,
                          std::vector<std::uint32_t>& rows_scratch) {
  const std::size_t n = mat.dim();
  double* M = m.data();
  for (std::size_t u = 0; u < n; ++u) {
    collect_ones(mat_t.row(u), mat_t.words_per_row(), rows_scratch);
    double base = 0.0;
    for (std::uint32_t r : rows_scratch)
      base += ln_tab[pc_rows[r] + 1] - ln_tab[pc_rows[r]];
    double* R = M + u * n;
    std::fill(R, R + n, base);
    for (std::uint32_t r : rows_scratch) {
      const double gd = ln_tab[pc_rows[r] - 1] - ln_tab[pc_rows[r] + 1];
      const std::uint64_t* row = mat.row(r);
      for (std::size_t k = 0; k < mat.words_per_row(); ++k) {
        std::uint64_t x = row[k];
        while (x) {
          R[(k << 6) + std::countr_zero(x)] += gd;
          x &= x - 1;
        }
      }
    }
    R[u] = 0.0;
  }
}

// Corrects an xor-form delta matrix after one bit position flipped in the
// vectors indexed by F. memb marks F membership, oldb/newb hold the flipped
// position's bit per index before/after.
inline void sum_corr_sweep(std::vector<double>& m, std::size_t n,
                           const std::vector<std::uint32_t>& F,
                           const std::uint64_t* memb, const std::uint64_t* oldb,
                           const std::uint64_t* newb) {
  double* M = m.data();
  for (std::uint32_t u : F) {
    const int buo = word_bit(oldb, u);
    const int bun = word_bit(newb, u);
    double* R = M + static_cast<std::size_t>(u) * n;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u) continue;
      const int bvo = word_bit(oldb, v);
      const int bvn = word_bit(newb, v);
      R[v] += ((bun ^ bvn) - (buo ^ bvo)) - (bvn - bvo);
    }
  }
  for (std::uint32_t v : F) {
    const int bvo = word_bit(oldb, v);
    const int bvn = word_bit(newb, v);
    const int dv = bvn - bvo;
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v || word_bit(memb, u)) continue;
      const int bu = word_bit(oldb, u);
      M[u * n + v] += ((bu ^ bvn) - (bu ^ bvo)) - dv;
    }
  }
}

// Adds (sign=+1) or removes (sign=-1) one row's contribution to the
// product-measure column-op delta matrix.
inline void prod_col_term(std::vector<double>& m, std::size_t n,
                          const std::uint64_t* rowbits, std::size_t words,
                          int pc, const std::vector<double>& ln_tab,
                          double sign) {
  const double c0 = sign * (ln_tab[pc + 1] - ln_tab[pc]);
  const double c1 = sign * (ln_tab[pc - 1] - ln_tab[pc]);
  double* M = m.data();
  for (std::size_t k = 0; k < words; ++k) {
    std::uint64_t x = rowbits[k];
    while (x) {
      const std::size_t u = (k << 6) + std::countr_zero(x);
      x &= x - 1;
      double* R = M + u * n;
      for (std::size_t v = 0; v < n; ++v)
        R[v] += word_bit(rowbits, v) ? c1 : c0;
      R[u] = 0.0;
    }
  }
}

}  // namespace detail

/// Full descent bookkeeping: the operator, its inverse, both transposes, the
/// four move-delta matrices, and the seeded generator. apply_row_op /
/// apply_col_op keep everything consistent incrementally.
struct CostState {
  CostFunctionKind kind = CostFunctionKind::h_sum;
  BitMatrix a{1};
  BitMatrix a_inv{1};
  BitMatrix a_t{1};
  BitMatrix a_inv_t{1};
  std::vector<double> m_a_row, m_a_col, m_ainv_row, m_ainv_col;
  std::mt19937_64 rng;
  std::size_t iter = 0;

  std::vector<int> pc_a_rows, pc_a_cols, pc_ainv_rows, pc_ainv_cols;
  std::vector<double> ln_tab;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> row_ops, col_ops;

  std::size_t dim() const { return a.dim(); }

  /// True once A is a permutation matrix (n ones and invertible).
  bool at_permutation() const {
    std::size_t total = 0;
    for (int pc : pc_a_rows) total += static_cast<std::size_t>(pc);
    return total == dim();
  }

  double current_cost() const {
    double c = side_cost(pc_a_rows);
    if (cost_tracks_inverse(kind)) c += side_cost(pc_ainv_rows);
    return c;
  }

  /// Row(i,j): row j of A ^= row i. Mirrors the inverse as Col(j,i).
  void apply_row_op(std::uint32_t i, std::uint32_t j) {
    check_op(i, j);
    side_row(false, i, j, true);
    side_col(true, j, i, cost_tracks_inverse(kind));
    row_ops.emplace_back(i, j);
  }

  /// Col(i,j): column j of A ^= column i. Mirrors the inverse as Row(j,i).
  void apply_col_op(std::uint32_t i, std::uint32_t j) {
    check_op(i, j);
    side_col(false, i, j, true);
    side_row(true, j, i, cost_tracks_inverse(kind));
    col_ops.emplace_back(i, j);
  }

 private:
  friend CostState build_cost_state(const BitMatrix&, CostFunctionKind,
                                    std::uint64_t);

  std::vector<std::uint64_t> old_bits_;
  std::vector<std::uint32_t> flip_set_;
  std::vector<std::uint32_t> rows_scratch_;

  void check_op(std::uint32_t i, std::uint32_t j) const {
    if (i >= dim() || j >= dim() || i == j)
      throw std::invalid_argument("CostState: bad operation indices");
  }

  double side_cost(const std::vector<int>& pc) const {
    double c = 0.0;
    if (cost_is_prod(kind)) {
      for (int p : pc) c += ln_tab[p];
    } else {
      for (int p : pc) c += static_cast<double>(p);
    }
    return c;
  }

  // Row x ^= row i on one side's matrix, with cache and delta maintenance.
  void side_row(bool inv, std::uint32_t i, std::uint32_t j, bool with_deltas) {
    BitMatrix& mat = inv ? a_inv : a;
    BitMatrix& mat_t = inv ? a_inv_t : a_t;
    std::vector<int>& pc_rows = inv ? pc_ainv_rows : pc_a_rows;
    std::vector<int>& pc_cols = inv ? pc_ainv_cols : pc_a_cols;
    const std::size_t n = mat.dim();
    const std::size_t words = mat.words_per_row();

    old_bits_.assign(mat.row(j), mat.row(j) + words);
    const int old_pc = pc_rows[j];
    detail::collect_ones(mat.row(i), words, flip_set_);

    mat.row_add(i, j);
    mat_t.col_add(i, j);
    pc_rows[j] = static_cast<int>(mat.row_popcount(j));
    for (std::uint32_t u : flip_set_) pc_cols[u] += mat.get(j, u) ? 1 : -1;

    if (!with_deltas) return;
    const bool prod = cost_is_prod(kind);
    std::vector<double>& m_row = inv ? m_ainv_row : m_a_row;
    std::vector<double>& m_col = inv ? m_ainv_col : m_a_col;
    detail::exact_row_col(mat, pc_rows, ln_tab, prod, m_row, j);
    if (prod) {
      detail::prod_col_term(m_col, n, old_bits_.data(), words, old_pc, ln_tab,
                            -1.0);
      detail::prod_col_term(m_col, n, mat.row(j), words, pc_rows[j], ln_tab,
                            +1.0);
    } else {
      detail::sum_corr_sweep(m_col, n, flip_set_, mat.row(i), old_bits_.data(),
                             mat.row(j));
    }
  }

  // Column j ^= column i on one side's matrix.
  void side_col(bool inv, std::uint32_t i, std::uint32_t j, bool with_deltas) {
    BitMatrix& mat = inv ? a_inv : a;
    BitMatrix& mat_t = inv ? a_inv_t : a_t;
    std::vector<int>& pc_rows = inv ? pc_ainv_rows : pc_a_rows;
    std::vector<int>& pc_cols = inv ? pc_ainv_cols : pc_a_cols;
    const std::size_t n = mat.dim();
    const std::size_t words = mat.words_per_row();

    old_bits_.assign(mat_t.row(j), mat_t.row(j) + words);
    detail::collect_ones(mat_t.row(i), words, flip_set_);

    mat.col_add(i, j);
    mat_t.row_add(i, j);
    pc_cols[j] = static_cast<int>(mat_t.row_popcount(j));
    for (std::uint32_t r : flip_set_) pc_rows[r] += mat.get(r, j) ? 1 : -1;

    if (!with_deltas) return;
    const bool prod = cost_is_prod(kind);
    std::vector<double>& m_row = inv ? m_ainv_row : m_a_row;
    std::vector<double>& m_col = inv ? m_ainv_col : m_a_col;
    if (prod) {
      for (std::uint32_t r : flip_set_)
        detail::exact_row_col(mat, pc_rows, ln_tab, true, m_row, r);
      detail::fill_prod_col(mat, mat_t, pc_rows, ln_tab, m_col, rows_scratch_);
    } else {
      detail::exact_row_col(mat_t, pc_cols, ln_tab, false, m_col, j);
      detail::sum_corr_sweep(m_row, n, flip_set_, mat_t.row(i),
                             old_bits_.data(), mat_t.row(j));
    }
  }
};

/// Builds the descent state for an invertible operator: inverse, transposes,
/// weight caches, and all four delta matrices populated from scratch. For the
/// h-only kinds the inverse-side delta matrices stay zero (and contribute
/// nothing to move scores), but A⁻¹ itself is still kept consistent.
inline CostState build_cost_state(const BitMatrix& a, CostFunctionKind kind,
                                  std::uint64_t seed) {
  CostState s;
  s.kind = kind;
  s.a = a;
  s.a_inv = inverse(a);
  s.a_t = transpose(s.a);
  s.a_inv_t = transpose(s.a_inv);
  s.rng.seed(seed);
  const std::size_t n = a.dim();

  s.ln_tab.resize(n + 2);
  s.ln_tab[0] = 0.0;
  for (std::size_t m = 1; m <= n + 1; ++m)
    s.ln_tab[m] = std::log(static_cast<double>(m));

  auto fill_pc = [](const BitMatrix& m, std::vector<int>& pc) {
    pc.resize(m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r)
      pc[r] = static_cast<int>(m.row_popcount(r));
  };
  fill_pc(s.a, s.pc_a_rows);
  fill_pc(s.a_t, s.pc_a_cols);
  fill_pc(s.a_inv, s.pc_ainv_rows);
  fill_pc(s.a_inv_t, s.pc_ainv_cols);

  s.m_a_row.assign(n * n, 0.0);
  s.m_a_col.assign(n * n, 0.0);
  s.m_ainv_row.assign(n * n, 0.0);
  s.m_ainv_col.assign(n * n, 0.0);

  const bool prod = cost_is_prod(kind);
  detail::fill_xor_delta(s.a, s.pc_a_rows, s.ln_tab, prod, s.m_a_row);
  if (prod) {
    std::vector<std::uint32_t> scratch;
    detail::fill_prod_col(s.a, s.a_t, s.pc_a_rows, s.ln_tab, s.m_a_col,
                          scratch);
    if (cost_tracks_inverse(kind)) {
      detail::fill_xor_delta(s.a_inv, s.pc_ainv_rows, s.ln_tab, true,
                             s.m_ainv_row);
      detail::fill_prod_col(s.a_inv, s.a_inv_t, s.pc_ainv_rows, s.ln_tab,
                            s.m_ainv_col, scratch);
    }
  } else {
    detail::fill_xor_delta(s.a_t, s.pc_a_cols, s.ln_tab, false, s.m_a_col);
    if (cost_tracks_inverse(kind)) {
      detail::fill_xor_delta(s.a_inv, s.pc_ainv_rows, s.ln_tab, false,
                             s.m_ainv_row);
      detail::fill_xor_delta(s.a_inv_t, s.pc_ainv_cols, s.ln_tab, false,
                             s.m_ainv_col);
    }
  }
  return s;
}

/// Combined score of a move: a row op on A pairs with the column delta on
/// A⁻¹ and vice versa (the same elementary matrix acts on both sides). For
/// h-only kinds the inverse matrices are zero, so this reduces to the A-side
/// delta.
inline double descent_op_score(const CostState& s, const DescentOp& op) {
  const std::size_t n = s.dim();
  return op.is_col ? s.m_a_col[op.i * n + op.j] + s.m_ainv_row[op.j * n + op.i]
                   : s.m_a_row[op.i * n + op.j] + s.m_ainv_col[op.j * n + op.i];
}

namespace detail {

#ifndef NDEBUG
// Debug oracle: a handful of delta entries must match a from-scratch
// recomputation on a mutated copy after every applied operation.
inline void debug_check_state(const CostState& s) {
  const std::size_t n = s.dim();
  if (n < 2) return;
  std::uint64_t sm = 0x5eed0000u + s.iter;
  const bool prod = cost_is_prod(s.kind);
  const double base_a = prod ? cost_h_prod(s.a)
                             : static_cast<double>(cost_h_sum(s.a));
  const double base_inv = cost_tracks_inverse(s.kind)
                              ? (prod ? cost_h_prod(s.a_inv)
                                      : static_cast<double>(cost_h_sum(s.a_inv)))
                              : 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto which = splitmix64(sm) & 3;
    if (!cost_tracks_inverse(s.kind) && which >= 2) continue;
    const auto u = static_cast<std::uint32_t>(splitmix64(sm) % n);
    auto v = static_cast<std::uint32_t>(splitmix64(sm) % (n - 1));
    if (v >= u) ++v;
    const bool on_inv = which >= 2;
    const bool col_op = (which & 1) != 0;
    BitMatrix w = on_inv ? s.a_inv : s.a;
    if (col_op)
      w.col_add(u, v);
    else
      w.row_add(u, v);
    const double mutated =
        prod ? cost_h_prod(w) : static_cast<double>(cost_h_sum(w));
    const double expect = mutated - (on_inv ? base_inv : base_a);
    const std::vector<double>& m =
        on_inv ? (col_op ? s.m_ainv_col : s.m_ainv_row)
               : (col_op ? s.m_a_col : s.m_a_row);
    const double got = m[u * n + v];
    assert(std::abs(got - expect) <= (prod ? 1e-9 : 0.0));
  }
}
#endif

}  // namespace detail

/// One descent step: scans every Row(i,j) and Col(i,j) move, and applies one
/// chosen uniformly at random among the best-scoring ones. Random choice on
/// ties doubles as the local-minimum escape when the best score is ≥ 0.
inline void descent_step(CostState& s, std::vector<DescentOp>& cand_scratch) {
  const std::size_t n = s.dim();
  const double* AR = s.m_a_row.data();
  const double* AC = s.m_a_col.data();
  const double* IR = s.m_ainv_row.data();
  const double* IC = s.m_ainv_col.data();
  double best = std::numeric_limits<double>::infinity();
  cand_scratch.clear();
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sr = AR[i * n + j] + IC[j * n + i];
      if (sr < best) {
        best = sr;
        cand_scratch.clear();
      }
      if (sr == best) cand_scratch.push_back({false, i, j});
      const double sc = AC[i * n + j] + IR[j * n + i];
      if (sc < best) {
        best = sc;
        cand_scratch.clear();
      }
      if (sc == best) cand_scratch.push_back({true, i, j});
    }
  }
  const DescentOp op =
      cand_scratch[bounded_rand(s.rng, cand_scratch.size())];
  if (op.is_col)
    s.apply_col_op(op.i, op.j);
  else
    s.apply_row_op(op.i, op.j);
  ++s.iter;
#ifndef NDEBUG
  detail::debug_check_state(s);
#endif
}

inline void descent_step(CostState& s) {
  std::vector<DescentOp> scratch;
  descent_step(s, scratch);
}

/// Assembles the circuit once the state's A has been reduced to a
/// permutation matrix P. The recorded reduction satisfies
/// (row ops)·A·(col ops) = P, so A itself is rebuilt as the column-op gates
/// in application order, then the row-op gates reversed and relabeled
/// through P⁻¹, with P carried in out_perm.
inline CnotCircuit assemble_descent_circuit(const CostState& s) {
  if (!s.a.is_permutation_matrix())
    throw std::logic_error("assemble_descent_circuit: reduction incomplete");
  const std::size_t n = s.dim();
  const Permutation p = permutation_from_matrix(s.a);
  const Permutation pinv = p.inverse();
  CnotCircuit c(n);
  for (const auto& [i, j] : s.col_ops) c.add(j, i);
  for (auto it = s.row_ops.rbegin(); it != s.row_ops.rend(); ++it)
    c.add(pinv[it->first], pinv[it->second]);
  c.set_out_perm(p);
  return c;
}

/// Greedy cost descent: repeatedly applies the best-scoring row or column
/// operation until A becomes a permutation matrix, then assembles the
/// verifying circuit. iter_cap = 0 selects the default cap of 20·n².
inline CnotCircuit greedy_descent(const BitMatrix& a, CostFunctionKind kind,
                                  std::uint64_t seed, std::size_t iter_cap = 0) {
  const std::size_t n = a.dim();
  const std::size_t cap = iter_cap ? iter_cap : 20 * n * n;
  CostState s = build_cost_state(a, kind, seed);
  std::vector<DescentOp> scratch;
  double best = s.current_cost();
  while (!s.at_permutation()) {
    if (s.iter >= cap) throw DescentStuck(best, s.iter);
    descent_step(s, scratch);
    best = std::min(best, s.current_cost());
  }
  return assemble_descent_circuit(s);
}

}  // namespace lrsynth
