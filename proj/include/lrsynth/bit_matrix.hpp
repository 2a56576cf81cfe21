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

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lrsynth {

/// Thrown when an operation needs an invertible matrix and the input is not.
struct SingularMatrixError : std::runtime_error {
  SingularMatrixError() : std::runtime_error("matrix is singular over GF(2)") {}
  explicit SingularMatrixError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Square boolean matrix over GF(2), rows bit-packed 64 entries per word.
/// Entry (i, j) is bit j of row i; bits past column n-1 in the last word of a
/// row are kept zero so whole-word operations stay exact.
class BitMatrix {
 public:
  explicit BitMatrix(std::size_t n)
      : n_(n), wpr_((n + 63) / 64), words_(n * ((n + 63) / 64), 0) {
    if (n == 0) throw std::invalid_argument("BitMatrix: dimension must be >= 1");
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  std::size_t dim() const { return n_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t i, std::size_t j) const {
    return (words_[i * wpr_ + (j >> 6)] >> (j & 63)) & 1u;
  }

  void set(std::size_t i, std::size_t j, bool v) {
    std::uint64_t& w = words_[i * wpr_ + (j >> 6)];
    const std::uint64_t mask = std::uint64_t{1} << (j & 63);
    if (v)
      w |= mask;
    else
      w &= ~mask;
  }

  void flip(std::size_t i, std::size_t j) {
    words_[i * wpr_ + (j >> 6)] ^= std::uint64_t{1} << (j & 63);
  }

  const std::uint64_t* row(std::size_t i) const { return words_.data() + i * wpr_; }
  std::uint64_t* row(std::size_t i) { return words_.data() + i * wpr_; }

  /// Row operation: row dst <- row src XOR row dst. Requires src != dst.
  void row_add(std::size_t src, std::size_t dst) {
    check_pair(src, dst);
    const std::uint64_t* s = row(src);
    std::uint64_t* d = row(dst);
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
  }

  /// row_add restricted to storage words first_word and later; only valid
  /// when both rows are zero in every earlier word.
  void row_add_from(std::size_t src, std::size_t dst, std::size_t first_word) {
    check_pair(src, dst);
    assert(first_word <= wpr_);
    const std::uint64_t* s = row(src);
    std::uint64_t* d = row(dst);
    for (std::size_t w = first_word; w < wpr_; ++w) d[w] ^= s[w];
  }

  /// Column operation: col dst <- col src XOR col dst. Requires src != dst.
  /// Implemented with one bit test per row; no transpose is kept.
  void col_add(std::size_t src, std::size_t dst) {
    check_pair(src, dst);
    const std::size_t sw = src >> 6, dw = dst >> 6;
    const std::uint64_t sm = std::uint64_t{1} << (src & 63);
    const std::uint64_t dm = std::uint64_t{1} << (dst & 63);
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint64_t* r = row(i);
      if (r[sw] & sm) r[dw] ^= dm;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::uint64_t* ra = row(a);
    std::uint64_t* rb = row(b);
    for (std::size_t w = 0; w < wpr_; ++w) std::swap(ra[w], rb[w]);
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < n_; ++i) {
      const bool va = get(i, a), vb = get(i, b);
      if (va != vb) {
        set(i, a, vb);
        set(i, b, va);
      }
    }
  }

  std::size_t row_popcount(std::size_t i) const {
    const std::uint64_t* r = row(i);
    std::size_t c = 0;
    for (std::size_t w = 0; w < wpr_; ++w) c += std::popcount(r[w]);
    return c;
  }

  /// Popcount of row i restricted to columns >= from.
  std::size_t row_popcount_from(std::size_t i, std::size_t from) const {
    if (from >= n_) return 0;
    const std::uint64_t* r = row(i);
    const std::size_t w0 = from >> 6;
    std::size_t c = std::popcount(r[w0] & (~std::uint64_t{0} << (from & 63)));
    for (std::size_t w = w0 + 1; w < wpr_; ++w) c += std::popcount(r[w]);
    return c;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  /// Bits [col, col+width) of row i packed into a word; width <= 64.
  std::uint64_t extract_bits(std::size_t i, std::size_t col, std::size_t width) const {
    const std::uint64_t* r = row(i);
    const std::size_t w0 = col >> 6, off = col & 63;
    std::uint64_t v = r[w0] >> off;
    if (off != 0 && w0 + 1 < wpr_) v |= r[w0 + 1] << (64 - off);
    if (width < 64) v &= (std::uint64_t{1} << width) - 1;
    return v;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (row_popcount(i) != 1 || !get(i, i)) return false;
    }
    return true;
  }

  bool is_lower_triangular() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (!get(i, i)) return false;
      if (row_popcount_from(i, i + 1) != 0) return false;
    }
    return true;
  }

  bool is_upper_triangular() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (!get(i, i)) return false;
      if (row_popcount(i) != row_popcount_from(i, i)) return false;
    }
    return true;
  }

  bool is_permutation_matrix() const {
    std::vector<bool> col_seen(n_, false);
    for (std::size_t i = 0; i < n_; ++i) {
      if (row_popcount(i) != 1) return false;
      const std::size_t j = first_set_in_row(i);
      if (col_seen[j]) return false;
      col_seen[j] = true;
    }
    return true;
  }

  /// Column of the first set bit in row i, or dim() if the row is zero.
  std::size_t first_set_in_row(std::size_t i) const {
    const std::uint64_t* r = row(i);
    for (std::size_t w = 0; w < wpr_; ++w) {
      if (r[w]) return (w << 6) + std::countr_zero(r[w]);
    }
    return n_;
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  friend bool operator!=(const BitMatrix& a, const BitMatrix& b) { return !(a == b); }

 private:
  void check_pair(std::size_t src, std::size_t dst) const {
    if (src >= n_ || dst >= n_)
      throw std::invalid_argument("BitMatrix: row/column index out of range");
    if (src == dst)
      throw std::invalid_argument("BitMatrix: source and destination must differ");
  }

  std::size_t n_;
  std::size_t wpr_;
  std::vector<std::uint64_t> words_;
};

inline BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("multiply: dimension mismatch");
  const std::size_t n = a.dim(), wpr = a.words_per_row();
  BitMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t* dst = out.row(i);
    const std::uint64_t* src = a.row(i);
    for (std::size_t w = 0; w < wpr; ++w) {
      std::uint64_t bits = src[w];
      while (bits) {
        const std::size_t k = (w << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        const std::uint64_t* rb = b.row(k);
        for (std::size_t v = 0; v < wpr; ++v) dst[v] ^= rb[v];
      }
    }
  }
  return out;
}

/// Gauss-Jordan inverse; throws SingularMatrixError when no inverse exists.
inline BitMatrix inverse(const BitMatrix& a) {
  const std::size_t n = a.dim();
  BitMatrix w = a;
  BitMatrix inv = BitMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t pivot = n;
    for (std::size_t i = j; i < n; ++i) {
      if (w.get(i, j)) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) throw SingularMatrixError();
    if (pivot != j) {
      w.swap_rows(pivot, j);
      inv.swap_rows(pivot, j);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j && w.get(i, j)) {
        w.row_add(j, i);
        inv.row_add(j, i);
      }
    }
  }
  return inv;
}

inline BitMatrix transpose(const BitMatrix& a) {
  const std::size_t n = a.dim();
  BitMatrix t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t* r = a.row(i);
    for (std::size_t w = 0; w < a.words_per_row(); ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        const std::size_t j = (w << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        t.set(j, i, true);
      }
    }
  }
  return t;
}

inline std::size_t rank(const BitMatrix& a) {
  BitMatrix w = a;
  const std::size_t n = w.dim();
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < n; ++j) {
    std::size_t pivot = n;
    for (std::size_t i = r; i < n; ++i) {
      if (w.get(i, j)) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) continue;
    w.swap_rows(pivot, r);
    for (std::size_t i = r + 1; i < n; ++i) {
      if (w.get(i, j)) w.row_add(r, i);
    }
    ++r;
  }
  return r;
}

/// Bijection on {0, ..., n-1}; map(i) is the image of i.
class Permutation {
 public:
  explicit Permutation(std::size_t n) : map_(n) {
    if (n == 0) throw std::invalid_argument("Permutation: size must be >= 1");
    for (std::size_t i = 0; i < n; ++i) map_[i] = static_cast<std::uint32_t>(i);
  }

  explicit Permutation(std::vector<std::uint32_t> map) : map_(std::move(map)) {
    if (map_.empty()) throw std::invalid_argument("Permutation: size must be >= 1");
    std::vector<bool> seen(map_.size(), false);
    for (std::uint32_t v : map_) {
      if (v >= map_.size() || seen[v])
        throw std::invalid_argument("Permutation: map is not a bijection");
      seen[v] = true;
    }
  }

  std::size_t size() const { return map_.size(); }
  std::uint32_t operator[](std::size_t i) const { return map_[i]; }

  bool is_identity() const {
    for (std::size_t i = 0; i < map_.size(); ++i) {
      if (map_[i] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    std::vector<std::uint32_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = static_cast<std::uint32_t>(i);
    return Permutation(std::move(inv));
  }

  const std::vector<std::uint32_t>& map() const { return map_; }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.map_ == b.map_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }

 private:
  std::vector<std::uint32_t> map_;
};

/// compose(p, q)(x) = p(q(x)); matches to_matrix(p) * to_matrix(q).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("compose: size mismatch");
  std::vector<std::uint32_t> m(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) m[x] = p[q[x]];
  return Permutation(std::move(m));
}

/// Matrix P with P(p(j), j) = 1, i.e. P maps e_j to e_{p(j)}. Left-multiplying
/// by P moves row k to row p(k); right-multiplying replaces column j by
/// column p(j).
inline BitMatrix to_matrix(const Permutation& p) {
  BitMatrix m(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) m.set(p[j], j, true);
  return m;
}

inline Permutation permutation_from_matrix(const BitMatrix& m) {
  if (!m.is_permutation_matrix())
    throw std::invalid_argument("permutation_from_matrix: not a permutation matrix");
  const std::size_t n = m.dim();
  std::vector<std::uint32_t> map(n);
  for (std::size_t i = 0; i < n; ++i)
    map[m.first_set_in_row(i)] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(map));
}

// Matrix text format: first line is n, then n lines of n characters from
// {0, 1}. Any other payload character is rejected.

inline BitMatrix read_matrix_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("matrix text: missing dimension line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::size_t pos = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(line, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("matrix text: dimension line is not an integer");
  }
  if (pos != line.size() || n == 0)
    throw std::runtime_error("matrix text: bad dimension '" + line + "'");
  BitMatrix m(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      throw std::runtime_error("matrix text: fewer rows than the declared dimension");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() != n)
      throw std::runtime_error("matrix text: row " + std::to_string(i) +
                               " has wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      if (line[j] == '1')
        m.set(i, j, true);
      else if (line[j] != '0')
        throw std::runtime_error("matrix text: invalid character in row " +
                                 std::to_string(i));
    }
  }
  return m;
}

inline void write_matrix_text(std::ostream& out, const BitMatrix& m) {
  const std::size_t n = m.dim();
  out << n << '\n';
  std::string line(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) line[j] = m.get(i, j) ? '1' : '0';
    out << line << '\n';
  }
}

inline BitMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  return read_matrix_text(in);
}

inline void write_matrix_file(const std::string& path, const BitMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix file: " + path);
  write_matrix_text(out, m);
}

}  // namespace lrsynth
