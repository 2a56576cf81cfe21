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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lrsynth/bit_matrix.hpp"
#include "lrsynth/circuit.hpp"
#include "lrsynth/lu.hpp"
#include "lrsynth/synth_baseline.hpp"

namespace lrsynth {

/// One greedy row operation: row j <- row i XOR row j, with i < j.
struct RowOpPair {
  std::uint32_t i;
  std::uint32_t j;

  friend bool operator==(const RowOpPair& a, const RowOpPair& b) {
    return a.i == b.i && a.j == b.j;
  }
};

/// Greedy pair selection on a unit lower-triangular matrix that is not yet
/// the identity: scan columns left to right keeping the rows that agree on
/// the scanned prefix, preferring the rows holding a 1 whenever at least two
/// do. The surviving pair shares the longest such prefix.
inline RowOpPair select_row_operation(const BitMatrix& l) {
  const std::size_t n = l.dim();
  if (!l.is_lower_triangular())
    throw std::invalid_argument("select_row_operation: matrix must be unit lower-triangular");
  if (l.is_identity())
    throw std::invalid_argument("select_row_operation: nothing to select on the identity");
  std::vector<std::uint32_t> set(n);
  for (std::size_t i = 0; i < n; ++i) set[i] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> zeros, ones;
  std::size_t j = 0;
  while (set.size() > 2) {
    if (j >= n)
      throw std::logic_error("select_row_operation: duplicate rows in an invertible matrix");
    zeros.clear();
    ones.clear();
    for (std::uint32_t r : set) {
      (l.get(r, j) ? ones : zeros).push_back(r);
    }
    set = (ones.size() < 2) ? zeros : ones;
    ++j;
  }
  return {set[0], set[1]};
}

namespace detail {

inline constexpr std::size_t no_cached_word = static_cast<std::size_t>(-1);

// One row of a split group: the row index packed with the cached storage
// word of that row currently steering the partition. 16 bytes so partition
// moves compile to single vector copies.
struct SplitElem {
  std::uint64_t key;
  std::uint32_t row;
  std::uint32_t pad = 0;
};
static_assert(sizeof(SplitElem) == 16);

// Splits a row group toward singletons and emits the merge pairs. A group
// lives in elems[lo, hi); each element carries the storage word of its row
// named by the keys_word/kw argument, reloaded lazily when the column walk
// crosses into the next 64-column word, so the partition test is a register
// mask test instead of a per-row bit lookup. tmp is same-capacity scratch.
// Pairs are appended in post-order — left subgroup, right subgroup,
// survivors' pair — the order in which they must be applied.
struct RowSplitter {
  const BitMatrix* l;
  SplitElem* elems;
  SplitElem* tmp;
  std::vector<RowOpPair>* pairs;

  [[noreturn]] static void duplicate_rows() {
    throw std::logic_error(
        "select_all_row_operations: duplicate rows in an invertible matrix");
  }

  // Two rows merge exactly once, wherever they first differ, so the pair and
  // survivor depend only on the row indices; still reject rows identical
  // from column c on. ka/kb cache word kw of rows a/b.
  std::uint32_t merge_pair(std::uint32_t a, std::uint32_t b, std::uint64_t ka,
                           std::uint64_t kb, std::size_t c,
                           std::size_t kw) const {
    if (c >= l->dim()) duplicate_rows();
    const std::size_t cw = c >> 6;
    if (cw != kw) {
      ka = l->row(a)[cw];
      kb = l->row(b)[cw];
    }
    bool differ = ((ka ^ kb) >> (c & 63)) != 0;
    for (std::size_t wd = cw + 1; wd < l->words_per_row() && !differ; ++wd)
      differ = (l->row(a)[wd] ^ l->row(b)[wd]) != 0;
    if (!differ) duplicate_rows();
    const std::uint32_t s = a < b ? a : b;
    pairs->push_back({s, a < b ? b : a});
    return s;
  }

  // Survivor of the group in elems[lo, hi) whose column scan resumes at c:
  // singletons stand, pairs merge, larger groups split further.
  std::uint32_t child(std::size_t c, std::size_t lo, std::size_t hi,
                      std::size_t kw) {
    const std::size_t s = hi - lo;
    if (s == 1) return elems[lo].row;
    if (s == 2)
      return merge_pair(elems[lo].row, elems[lo + 1].row, elems[lo].key,
                        elems[lo + 1].key, c, kw);
    return split(c, lo, hi, kw);
  }

  // Emits the node splitting elems[lo, hi) at boundary mid, both children
  // resuming at column c; returns the node's survivor.
  std::uint32_t emit_node(std::size_t c, std::size_t lo, std::size_t mid,
                          std::size_t hi, std::size_t kw) {
    const std::uint32_t s0 = child(c, lo, mid, kw);
    const std::uint32_t s1 = child(c, mid, hi, kw);
    const std::uint32_t a = s0 < s1 ? s0 : s1;
    pairs->push_back({a, s0 < s1 ? s1 : s0});
    return a;
  }

  // Group of three or more rows in elems[lo, hi); returns the subtree
  // survivor (the group's minimum row index). Large groups consume two
  // columns per pass via a four-way stable scatter; the emitted nodes are
  // exactly those of the column-at-a-time binary walk, because rows sharing
  // a bucket agree on both scanned columns and buckets are ordered
  // zeros-first by column c then by column c + 1.
  std::uint32_t split(std::size_t c, std::size_t lo, std::size_t hi,
                      std::size_t kw) {
    for (;; ++c) {
      if (c >= l->dim()) duplicate_rows();
      const std::size_t cw = c >> 6;
      if (cw != kw) {
        for (std::size_t k = lo; k < hi; ++k)
          elems[k].key = l->row(elems[k].row)[cw];
        kw = cw;
      }
      const unsigned cb = static_cast<unsigned>(c & 63);
      const std::size_t sz = hi - lo;
      if (sz >= 8 && cb != 63 && c + 1 < l->dim()) {
        // Two-column pass. cnt is indexed by the raw bit pair (bit c in the
        // low position); the offset table rearranges the four buckets so the
        // scatter lands them ordered by bit c, then bit c + 1.
        std::size_t cnt[4] = {0, 0, 0, 0};
        for (std::size_t k = lo; k < hi; ++k)
          ++cnt[(elems[k].key >> cb) & 3];
        if (cnt[0] == sz || cnt[1] == sz || cnt[2] == sz || cnt[3] == sz) {
          ++c;  // both columns uniform: no data movement, scan on
          continue;
        }
        const std::size_t zl = cnt[0] + cnt[2];
        const std::size_t b1 = lo + cnt[0];
        const std::size_t b2 = b1 + cnt[2];
        const std::size_t b3 = b2 + cnt[1];
        std::size_t off[4] = {lo, b2, b1, b3};
        for (std::size_t k = lo; k < hi; ++k) {
          const SplitElem e = elems[k];
          tmp[off[(e.key >> cb) & 3]++] = e;
        }
        std::copy(tmp + lo, tmp + hi, elems + lo);
        if (zl == 0 || zl == sz) {
          // Column c is uniform; the scatter split the group at c + 1 alone
          // (the node the binary walk would emit after stepping one column).
          return emit_node(c + 2, lo, zl ? b1 : b3, hi, kw);
        }
        const std::size_t mid = lo + zl;
        const std::uint32_t s0 = cnt[0] == 0 || cnt[2] == 0
                                     ? child(c + 2, lo, mid, kw)
                                     : emit_node(c + 2, lo, b1, mid, kw);
        const std::uint32_t s1 = cnt[1] == 0 || cnt[3] == 0
                                     ? child(c + 2, mid, hi, kw)
                                     : emit_node(c + 2, mid, b3, hi, kw);
        const std::uint32_t a = s0 < s1 ? s0 : s1;
        pairs->push_back({a, s0 < s1 ? s1 : s0});
        return a;
      }
      // Single-column pass: branchless stable partition. Zeros compact in
      // place, ones collect in tmp and are copied back behind them; both
      // targets are written every iteration and only the matching cursor
      // advances. elems[mid] with mid <= k is always safe to clobber because
      // position k was already read and positions below mid are final.
      std::size_t mid = lo, ones = 0;
      for (std::size_t k = lo; k < hi; ++k) {
        const SplitElem e = elems[k];
        const std::size_t bit = (e.key >> cb) & 1;
        elems[mid] = e;
        tmp[ones] = e;
        mid += bit ^ 1;
        ones += bit;
      }
      if (mid == lo) {
        // Every row landed on the ones side; restore and try the next
        // column without recursing.
        for (std::size_t k = 0; k < ones; ++k) elems[lo + k] = tmp[k];
        continue;
      }
      if (mid == hi) continue;  // every row on the zeros side, order intact
      for (std::size_t k = 0; k < ones; ++k) elems[mid + k] = tmp[k];
      return emit_node(c + 1, lo, mid, hi, kw);
    }
  }
};

}  // namespace detail

/// All row operations clearing one column in a single sweep: rows in `rows`
/// are repeatedly partitioned from column j on, paired within each branch,
/// and the branch survivors paired across. The overall survivor is the
/// minimum row; applying the pairs in order zeroes the examined column on
/// every other row.
inline std::pair<std::vector<RowOpPair>, std::optional<std::uint32_t>>
select_all_row_operations(const BitMatrix& l, std::size_t j,
                          const std::vector<std::uint32_t>& rows) {
  std::vector<RowOpPair> pairs;
  if (rows.empty()) return {std::move(pairs), std::nullopt};
  if (rows.size() == 1) return {std::move(pairs), rows[0]};
  std::vector<detail::SplitElem> elems(rows.size());
  std::vector<detail::SplitElem> tmp(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) elems[k].row = rows[k];
  pairs.reserve(rows.size());
  detail::RowSplitter splitter{&l, elems.data(), tmp.data(), &pairs};
  const std::uint32_t survivor =
      rows.size() == 2
          ? splitter.merge_pair(rows[0], rows[1], 0, 0, j,
                                detail::no_cached_word)
          : splitter.split(j, 0, rows.size(), detail::no_cached_word);
  return {std::move(pairs), survivor};
}

namespace detail {

inline void require_unit_lower(const BitMatrix& l, const char* who) {
  if (!l.is_lower_triangular())
    throw std::invalid_argument(std::string(who) +
                                ": matrix must be unit lower-triangular");
}

// Column sweep of the triangular synthesizer: collects the rows holding a 1
// in column j (from row j down) together with their cached storage words,
// selects the pair list and applies it, recording gates. The two buffers are
// caller-owned scratch, (re)sized here to the row count.
inline void eliminate_column(BitMatrix& w, std::size_t j,
                             std::vector<SplitElem>& elems,
                             std::vector<SplitElem>& tmp,
                             std::vector<RowOpPair>& pairs,
                             std::vector<CnotGate>& gates) {
  const std::size_t n = w.dim();
  if (elems.size() < n) {
    elems.resize(n);
    tmp.resize(n);
  }
  // Branchless collection; the captured word doubles as the splitter's key
  // cache for word j/64.
  const std::size_t wj = j >> 6;
  const unsigned bj = static_cast<unsigned>(j & 63);
  std::size_t sz = 0;
  for (std::size_t r = j; r < n; ++r) {
    const std::uint64_t word = w.row(r)[wj];
    elems[sz].key = word;
    elems[sz].row = static_cast<std::uint32_t>(r);
    sz += (word >> bj) & 1;
  }
  if (sz < 2) return;
  pairs.clear();
  RowSplitter splitter{&w, elems.data(), tmp.data(), &pairs};
  if (sz == 2)
    splitter.merge_pair(elems[0].row, elems[1].row, elems[0].key, elems[1].key,
                        j + 1, wj);
  else
    splitter.split(j + 1, 0, sz, wj);
  // Batch rows are zero in every column left of j, so the additions only
  // need to touch words from j's onward.
  for (const RowOpPair& p : pairs) {
    w.row_add_from(p.i, p.j, wj);
    gates.push_back({p.i, p.j});
  }
}

#ifndef NDEBUG
inline bool leading_columns_identity(const BitMatrix& w, std::size_t j) {
  for (std::size_t k = 0; k <= j; ++k) {
    for (std::size_t r = 0; r < w.dim(); ++r) {
      if (w.get(r, k) != (r == k)) return false;
    }
  }
  return true;
}
#endif

}  // namespace detail

/// One-pair-at-a-time greedy elimination of a unit lower-triangular
/// operator. Same greedy policy as fast_greedyge, re-scanning after every
/// operation; kept as the straightforward reference form.
inline CnotCircuit greedyge_triangular(const BitMatrix& l) {
  detail::require_unit_lower(l, "greedyge_triangular");
  const std::size_t n = l.dim();
  BitMatrix w = l;
  std::vector<CnotGate> ops;
  std::size_t ones = w.popcount();
  while (ones > n) {
    const RowOpPair p = select_row_operation(w);
    const std::size_t before = w.row_popcount(p.j);
    w.row_add(p.i, p.j);
    ones += w.row_popcount(p.j) - before;
    ops.push_back({p.i, p.j});
  }
  return detail::circuit_from_reduction(n, ops);
}

namespace detail {

// The fast_greedyge column loop on a working copy: reduces w to the identity
// and appends the reduction's row operations to gates in application order.
inline void fast_greedyge_reduce(BitMatrix& w, std::vector<CnotGate>& gates) {
  const std::size_t n = w.dim();
  std::vector<SplitElem> elems, tmp;
  std::vector<RowOpPair> pairs;
  pairs.reserve(n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    eliminate_column(w, j, elems, tmp, pairs, gates);
    assert(leading_columns_identity(w, j));
  }
}

}  // namespace detail

/// Column-at-a-time greedy elimination of a unit lower-triangular operator:
/// every column's clearing operations are selected in one sweep.
inline CnotCircuit fast_greedyge(const BitMatrix& l) {
  detail::require_unit_lower(l, "fast_greedyge");
  BitMatrix w = l;
  std::vector<CnotGate> gates;
  detail::fast_greedyge_reduce(w, gates);
  return detail::circuit_from_reduction(l.dim(), gates);
}

namespace detail {

// Reverses the bit order within one 64-bit word.
inline std::uint64_t reverse_word_bits(std::uint64_t x) {
  x = ((x & 0x5555555555555555ULL) << 1) | ((x >> 1) & 0x5555555555555555ULL);
  x = ((x & 0x3333333333333333ULL) << 2) | ((x >> 2) & 0x3333333333333333ULL);
  x = ((x & 0x0F0F0F0F0F0F0F0FULL) << 4) | ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL);
  x = ((x & 0x00FF00FF00FF00FFULL) << 8) | ((x >> 8) & 0x00FF00FF00FF00FFULL);
  x = ((x & 0x0000FFFF0000FFFFULL) << 16) | ((x >> 16) & 0x0000FFFF0000FFFFULL);
  return (x << 32) | (x >> 32);
}

// The operator with row and column order both reversed: result(i, j) =
// m(n-1-i, n-1-j). Conjugation by the order reversal turns unit upper-
// triangular into unit lower-triangular.
inline BitMatrix build_reversed(const BitMatrix& m) {
  const std::size_t n = m.dim();
  const std::size_t wpr = m.words_per_row();
  const unsigned shift = static_cast<unsigned>(wpr * 64 - n);
  BitMatrix rev(n);
  std::vector<std::uint64_t> full(wpr);
  for (std::size_t i = 0; i < n; ++i) {
    // Reverse all wpr*64 bits of source row n-1-i, then shift the reversed
    // tail padding back out so bit j of the result is source bit n-1-j.
    const std::uint64_t* src = m.row(n - 1 - i);
    for (std::size_t wd = 0; wd < wpr; ++wd)
      full[wd] = reverse_word_bits(src[wpr - 1 - wd]);
    std::uint64_t* dst = rev.row(i);
    if (shift == 0) {
      for (std::size_t wd = 0; wd < wpr; ++wd) dst[wd] = full[wd];
    } else {
      for (std::size_t wd = 0; wd + 1 < wpr; ++wd)
        dst[wd] = (full[wd] >> shift) | (full[wd + 1] << (64 - shift));
      dst[wpr - 1] = full[wpr - 1] >> shift;
    }
  }
  return rev;
}

// Reduction ops for a unit upper-triangular operator, in reversed-order
// coordinates and application order: run the fast_greedyge reduction on the
// conjugated (unit lower-triangular) operator. A line q here is line
// n-1-q of the original.
inline void upper_reversal_ops(const BitMatrix& u, std::vector<CnotGate>& ops) {
  BitMatrix rev = build_reversed(u);
  fast_greedyge_reduce(rev, ops);
}

// Synthesizes a unit upper-triangular operator by running fast_greedyge on
// the operator with row and column order reversed, then relabeling the
// gates back.
inline CnotCircuit synth_upper_by_reversal(const BitMatrix& u) {
  const std::size_t n = u.dim();
  std::vector<CnotGate> ops;
  upper_reversal_ops(u, ops);
  CnotCircuit out(n);
  out.reserve(ops.size());
  for (auto it = ops.rbegin(); it != ops.rend(); ++it)
    out.add(static_cast<std::uint32_t>(n - 1 - it->control),
            static_cast<std::uint32_t>(n - 1 - it->target));
  return out;
}

}  // namespace detail

struct GreedyGeStats {
  std::size_t pivot_fix_gates = 0;
};

/// Greedy elimination of a general invertible operator without
/// factorization: clear below the diagonal column by column (repairing a
/// zero diagonal entry with the row below that zeroes the most entries to
/// the right), then synthesize the remaining upper factor.
inline CnotCircuit greedyge_general_direct(const BitMatrix& a,
                                           GreedyGeStats* stats = nullptr) {
  const std::size_t n = a.dim();
  BitMatrix w = a;
  std::vector<CnotGate> lower_ops;
  std::vector<detail::SplitElem> elems(n + 1), tmp(n + 1);
  std::vector<RowOpPair> pairs;
  pairs.reserve(n);
  std::size_t fixes = 0;
  for (std::size_t j = 0; j < n; ++j) {
    // Branchless collection of the rows holding a 1 in column j, from row j
    // down; slot 0 stays free for a repaired pivot row. The captured word
    // doubles as the splitter's key cache for word j/64.
    const std::size_t wj = j >> 6;
    const unsigned bj = static_cast<unsigned>(j & 63);
    std::size_t sz = 1;
    for (std::size_t r = j; r < n; ++r) {
      const std::uint64_t word = w.row(r)[wj];
      elems[sz].key = word;
      elems[sz].row = static_cast<std::uint32_t>(r);
      sz += (word >> bj) & 1;
    }
    if (sz == 1) throw SingularMatrixError();  // column empty from row j down
    std::size_t lo = 1;
    if (elems[1].row != j) {
      // Zero diagonal entry: repair it with the collected row that clears
      // the most entries of row j right of column j (first such row wins
      // ties), then put row j at the batch front.
      std::size_t best = 0, best_zeroed = 0;
      const std::uint64_t* rj = w.row(j);
      const std::size_t w0 = (j + 1) >> 6;
      const std::uint64_t head = ~std::uint64_t{0} << ((j + 1) & 63);
      for (std::size_t k = 1; k < sz; ++k) {
        const std::uint64_t* rr = w.row(elems[k].row);
        std::size_t z = 0;
        if (w0 < w.words_per_row()) {
          z += std::popcount(rj[w0] & rr[w0] & head);
          for (std::size_t wd = w0 + 1; wd < w.words_per_row(); ++wd)
            z += std::popcount(rj[wd] & rr[wd]);
        }
        if (best == 0 || z > best_zeroed) {
          best = elems[k].row;
          best_zeroed = z;
        }
      }
      w.row_add_from(best, j, wj);
      lower_ops.push_back({static_cast<std::uint32_t>(best),
                           static_cast<std::uint32_t>(j)});
      ++fixes;
      elems[0].key = w.row(j)[wj];
      elems[0].row = static_cast<std::uint32_t>(j);
      lo = 0;
    }
    if (sz - lo < 2) continue;
    pairs.clear();
    detail::RowSplitter splitter{&w, elems.data(), tmp.data(), &pairs};
    try {
      if (sz - lo == 2)
        splitter.merge_pair(elems[lo].row, elems[lo + 1].row, elems[lo].key,
                            elems[lo + 1].key, j + 1, wj);
      else
        splitter.split(j + 1, lo, sz, wj);
    } catch (const std::logic_error&) {
      // Rows in a column batch carry zeros left of the column, so exhausting
      // the remaining columns means two rows are fully identical.
      throw SingularMatrixError();
    }
    for (const RowOpPair& p : pairs) {
      w.row_add_from(p.i, p.j, wj);
      lower_ops.push_back({p.i, p.j});
    }
  }
  if (stats) stats->pivot_fix_gates = fixes;
  // Assemble directly from the upper phase's raw reduction ops (reversed and
  // relabeled back from reversed-order coordinates) followed by the lower
  // phase's ops reversed.
  std::vector<CnotGate> upper_ops;
  detail::upper_reversal_ops(w, upper_ops);
  CnotCircuit out(n);
  out.reserve(upper_ops.size() + lower_ops.size());
  for (auto it = upper_ops.rbegin(); it != upper_ops.rend(); ++it)
    out.add(static_cast<std::uint32_t>(n - 1 - it->control),
            static_cast<std::uint32_t>(n - 1 - it->target));
  for (auto it = lower_ops.rbegin(); it != lower_ops.rend(); ++it)
    out.add(it->control, it->target);
  return out;
}

/// Greedy elimination through an LU factorization: both factors are
/// synthesized triangularly, conjugated through the column permutation, and
/// the remaining row/column permutations are folded into out_perm at zero
/// gate cost.
inline CnotCircuit greedyge_general_lu(const BitMatrix& a,
                                       LuStrategy strategy = LuStrategy::standard,
                                       std::size_t min_ones_limit = 256) {
  const LuFactors f = lu_decompose(a, strategy, min_ones_limit);
  const CnotCircuit cl = fast_greedyge(f.l);
  const CnotCircuit cu = detail::synth_upper_by_reversal(f.u);
  CnotCircuit body = concat(cu, cl).relabeled(f.p2);
  body.set_out_perm(compose(f.p1.inverse(), f.p2.inverse()));
  return body;
}

}  // namespace lrsynth
