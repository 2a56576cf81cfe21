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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrsynth/bit_matrix.hpp"

namespace lrsynth {

struct CnotGate {
  std::uint32_t control;
  std::uint32_t target;

  friend bool operator==(const CnotGate& a, const CnotGate& b) {
    return a.control == b.control && a.target == b.target;
  }
};

/// A CNOT-only circuit on n lines, optionally followed by a free relabeling
/// of the output lines (out_perm). A gate (c, t) XORs line c into line t;
/// on the matrix side it maps M to M with row t replaced by row c XOR row t.
class CnotCircuit {
 public:
  explicit CnotCircuit(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("CnotCircuit: need at least one line");
  }

  std::size_t dim() const { return n_; }
  std::size_t size() const { return gates_.size(); }
  const std::vector<CnotGate>& gates() const { return gates_; }

  void reserve(std::size_t gate_capacity) { gates_.reserve(gate_capacity); }

  void add(std::uint32_t control, std::uint32_t target) {
    if (control >= n_ || target >= n_)
      throw std::invalid_argument("CnotCircuit: line index out of range");
    if (control == target)
      throw std::invalid_argument("CnotCircuit: control and target must differ");
    gates_.push_back({control, target});
  }

  const std::optional<Permutation>& out_perm() const { return out_perm_; }

  void set_out_perm(Permutation p) {
    if (p.size() != n_)
      throw std::invalid_argument("CnotCircuit: out_perm size mismatch");
    out_perm_ = std::move(p);
  }

  void clear_out_perm() { out_perm_.reset(); }

  /// The GF(2) operator computed by the circuit: gates applied in order to I,
  /// then rows relabeled by out_perm (row i of the result is row
  /// out_perm^-1(i) of the gate product).
  BitMatrix simulate() const {
    BitMatrix m = BitMatrix::identity(n_);
    for (const CnotGate& g : gates_) m.row_add(g.control, g.target);
    if (out_perm_) {
      BitMatrix p(n_);
      for (std::size_t k = 0; k < n_; ++k) {
        const std::uint64_t* src = m.row(k);
        std::uint64_t* dst = p.row((*out_perm_)[k]);
        std::copy(src, src + m.words_per_row(), dst);
      }
      return p;
    }
    return m;
  }

  /// ASAP layering: a gate starts one layer after the later of its two lines;
  /// out_perm adds no depth.
  std::size_t depth() const {
    std::vector<std::size_t> busy(n_, 0);
    std::size_t d = 0;
    for (const CnotGate& g : gates_) {
      const std::size_t layer = 1 + std::max(busy[g.control], busy[g.target]);
      busy[g.control] = layer;
      busy[g.target] = layer;
      d = std::max(d, layer);
    }
    return d;
  }

  /// Gates in reverse order; computes the inverse operator. Not defined for
  /// circuits carrying an out_perm.
  CnotCircuit reversed() const {
    if (out_perm_)
      throw std::invalid_argument("CnotCircuit: cannot reverse a circuit with out_perm");
    CnotCircuit r(n_);
    r.gates_.assign(gates_.rbegin(), gates_.rend());
    return r;
  }

  /// Circuit with every line index mapped through p; computes P * M * P^-1.
  /// Not defined for circuits carrying an out_perm.
  CnotCircuit relabeled(const Permutation& p) const {
    if (out_perm_)
      throw std::invalid_argument("CnotCircuit: cannot relabel a circuit with out_perm");
    if (p.size() != n_)
      throw std::invalid_argument("CnotCircuit: relabel permutation size mismatch");
    CnotCircuit r(n_);
    r.gates_.reserve(gates_.size());
    for (const CnotGate& g : gates_) r.gates_.push_back({p[g.control], p[g.target]});
    return r;
  }

  friend bool operator==(const CnotCircuit& a, const CnotCircuit& b) {
    return a.n_ == b.n_ && a.gates_ == b.gates_ && a.out_perm_ == b.out_perm_;
  }

 private:
  std::size_t n_;
  std::vector<CnotGate> gates_;
  std::optional<Permutation> out_perm_;
};

/// Runs a, then b. a must not carry an out_perm; the result keeps b's.
inline CnotCircuit concat(const CnotCircuit& a, const CnotCircuit& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("concat: dimension mismatch");
  if (a.out_perm())
    throw std::invalid_argument("concat: first circuit must not carry an out_perm");
  CnotCircuit c(a.dim());
  for (const CnotGate& g : a.gates()) c.add(g.control, g.target);
  for (const CnotGate& g : b.gates()) c.add(g.control, g.target);
  if (b.out_perm()) c.set_out_perm(*b.out_perm());
  return c;
}

inline BitMatrix simulate(const CnotCircuit& c) { return c.simulate(); }

inline CnotCircuit reversed(const CnotCircuit& c) { return c.reversed(); }

inline bool verify(const CnotCircuit& c, const BitMatrix& a) {
  if (c.dim() != a.dim()) throw std::invalid_argument("verify: dimension mismatch");
  return c.simulate() == a;
}

// Circuit text format: "n <int>", one "CNOT <control> <target>" line per
// gate, and an optional final "PERM p0 ... p(n-1)" line.

inline CnotCircuit read_circuit_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("circuit text: missing header line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::istringstream head(line);
  std::string tag;
  long long n = 0;
  if (!(head >> tag >> n) || tag != "n" || n <= 0 || (head >> tag))
    throw std::runtime_error("circuit text: bad header '" + line + "'");
  CnotCircuit c(static_cast<std::size_t>(n));
  bool saw_perm = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (saw_perm)
      throw std::runtime_error("circuit text: PERM must be the final line");
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    if (op == "CNOT") {
      long long ctl = -1, tgt = -1;
      if (!(ls >> ctl >> tgt) || (ls >> op))
        throw std::runtime_error("circuit text: bad CNOT line '" + line + "'");
      if (ctl < 0 || tgt < 0 || ctl >= n || tgt >= n || ctl == tgt)
        throw std::runtime_error("circuit text: CNOT indices out of range in '" +
                                 line + "'");
      c.add(static_cast<std::uint32_t>(ctl), static_cast<std::uint32_t>(tgt));
    } else if (op == "PERM") {
      std::vector<std::uint32_t> map;
      long long v = 0;
      while (ls >> v) {
        if (v < 0 || v >= n)
          throw std::runtime_error("circuit text: PERM entry out of range");
        map.push_back(static_cast<std::uint32_t>(v));
      }
      if (map.size() != static_cast<std::size_t>(n))
        throw std::runtime_error("circuit text: PERM needs exactly n entries");
      try {
        c.set_out_perm(Permutation(std::move(map)));
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("circuit text: ") + e.what());
      }
      saw_perm = true;
    } else {
      throw std::runtime_error("circuit text: unknown directive '" + op + "'");
    }
  }
  return c;
}

inline void write_circuit_text(std::ostream& out, const CnotCircuit& c) {
  out << "n " << c.dim() << '\n';
  for (const CnotGate& g : c.gates())
    out << "CNOT " << g.control << ' ' << g.target << '\n';
  if (c.out_perm()) {
    out << "PERM";
    for (std::size_t i = 0; i < c.dim(); ++i) out << ' ' << (*c.out_perm())[i];
    out << '\n';
  }
}

inline CnotCircuit read_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file: " + path);
  return read_circuit_text(in);
}

inline void write_circuit_file(const std::string& path, const CnotCircuit& c) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write circuit file: " + path);
  write_circuit_text(out, c);
}

}  // namespace lrsynth
