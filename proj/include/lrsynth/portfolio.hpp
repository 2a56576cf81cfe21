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

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lrsynth/bit_matrix.hpp"
#include "lrsynth/circuit.hpp"
#include "lrsynth/lu.hpp"
#include "lrsynth/prng.hpp"
#include "lrsynth/synth_baseline.hpp"
#include "lrsynth/synth_cost.hpp"
#include "lrsynth/synth_greedyge.hpp"

namespace lrsynth {

enum class Method {
  gauss,
  pmh,
  greedyge_direct,
  greedyge_lu_standard,
  greedyge_lu_sparse,
  greedyge_lu_min_ones,
  descent_h_sum,
  descent_h_prod,
  descent_H_sum,
  descent_H_prod,
};

inline const char* method_name(Method m) {
  switch (m) {
    case Method::gauss: return "gauss";
    case Method::pmh: return "pmh";
    case Method::greedyge_direct: return "greedyge";
    case Method::greedyge_lu_standard: return "greedyge-lu-standard";
    case Method::greedyge_lu_sparse: return "greedyge-lu-sparse";
    case Method::greedyge_lu_min_ones: return "greedyge-lu-minones";
    case Method::descent_h_sum: return "descent-hsum";
    case Method::descent_h_prod: return "descent-hprod";
    case Method::descent_H_sum: return "descent-Hsum";
    case Method::descent_H_prod: return "descent-Hprod";
  }
  return "?";
}

inline std::optional<Method> method_from_name(const std::string& s) {
  for (Method m : {Method::gauss, Method::pmh, Method::greedyge_direct,
                   Method::greedyge_lu_standard, Method::greedyge_lu_sparse,
                   Method::greedyge_lu_min_ones, Method::descent_h_sum,
                   Method::descent_h_prod, Method::descent_H_sum,
                   Method::descent_H_prod}) {
    if (s == method_name(m)) return m;
  }
  return std::nullopt;
}

inline std::vector<Method> all_methods() {
  return {Method::gauss,
          Method::pmh,
          Method::greedyge_direct,
          Method::greedyge_lu_standard,
          Method::greedyge_lu_sparse,
          Method::greedyge_lu_min_ones,
          Method::descent_h_sum,
          Method::descent_h_prod,
          Method::descent_H_sum,
          Method::descent_H_prod};
}

inline bool method_is_descent(Method m) {
  switch (m) {
    case Method::descent_h_sum:
    case Method::descent_h_prod:
    case Method::descent_H_sum:
    case Method::descent_H_prod:
      return true;
    default:
      return false;
  }
}

struct PortfolioOptions {
  std::size_t restarts = 5;       // descent attempts with derived seeds
  std::size_t iter_cap = 0;       // 0 = default 20·n² per attempt
  std::size_t pmh_m = 0;          // 0 = default block size
  std::size_t min_ones_limit = 256;
};

/// One method run on one instance: what ran, what came out, how long the
/// synthesis call itself took. Emitted only for verified circuits.
struct SynthesisReport {
  std::string method;
  std::size_t n = 0;
  std::optional<std::size_t> input_gate_count;
  std::size_t output_gate_count = 0;
  std::size_t depth = 0;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
  bool verified = false;
};

/// Runs one method. Descent methods make up to opts.restarts attempts with
/// seeds derived from `seed`; if every attempt is stuck, the last
/// DescentStuck propagates.
inline CnotCircuit synthesize_with(Method m, const BitMatrix& a,
                                   std::uint64_t seed,
                                   const PortfolioOptions& opts = {}) {
  switch (m) {
    case Method::gauss:
      return synth_gauss(a);
    case Method::pmh:
      return opts.pmh_m ? synth_pmh(a, opts.pmh_m) : synth_pmh(a);
    case Method::greedyge_direct:
      return greedyge_general_direct(a);
    case Method::greedyge_lu_standard:
      return greedyge_general_lu(a, LuStrategy::standard);
    case Method::greedyge_lu_sparse:
      return greedyge_general_lu(a, LuStrategy::sparse);
    case Method::greedyge_lu_min_ones:
      return greedyge_general_lu(a, LuStrategy::min_ones, opts.min_ones_limit);
    default:
      break;
  }
  CostFunctionKind kind = CostFunctionKind::h_sum;
  switch (m) {
    case Method::descent_h_sum: kind = CostFunctionKind::h_sum; break;
    case Method::descent_h_prod: kind = CostFunctionKind::h_prod; break;
    case Method::descent_H_sum: kind = CostFunctionKind::H_sum; break;
    case Method::descent_H_prod: kind = CostFunctionKind::H_prod; break;
    default: throw std::invalid_argument("synthesize_with: unknown method");
  }
  const std::size_t attempts = opts.restarts ? opts.restarts : 1;
  for (std::size_t r = 0;; ++r) {
    try {
      return greedy_descent(a, kind, mix_seed(seed, r), opts.iter_cap);
    } catch (const DescentStuck&) {
      if (r + 1 >= attempts) throw;
    }
  }
}

struct PortfolioResult {
  CnotCircuit best;
  std::vector<SynthesisReport> reports;       // verified successes only
  std::vector<std::string> stuck_methods;     // descent methods that gave up
};

/// Runs every requested method and keeps the smallest verifying circuit
/// (ties: smaller depth, then method name). Descent methods that stay stuck
/// after their restarts are recorded by name instead of aborting the
/// portfolio.
inline PortfolioResult portfolio_synth(const BitMatrix& a,
                                       const std::vector<Method>& methods,
                                       std::uint64_t seed,
                                       const PortfolioOptions& opts = {}) {
  if (methods.empty())
    throw std::invalid_argument("portfolio_synth: no methods requested");
  PortfolioResult out{CnotCircuit(a.dim()), {}, {}};
  bool have_best = false;
  std::size_t best_size = 0, best_depth = 0;
  std::string best_name;
  for (Method m : methods) {
    const auto t0 = std::chrono::steady_clock::now();
    CnotCircuit c(a.dim());
    try {
      c = synthesize_with(m, a, seed, opts);
    } catch (const DescentStuck&) {
      out.stuck_methods.emplace_back(method_name(m));
      continue;
    }
    const auto t1 = std::chrono::steady_clock::now();
    if (!verify(c, a))
      throw std::logic_error(std::string("portfolio_synth: ") +
                             method_name(m) + " produced a bad circuit");
    SynthesisReport r;
    r.method = method_name(m);
    r.n = a.dim();
    r.output_gate_count = c.gates().size();
    r.depth = c.depth();
    r.wall_time = std::chrono::duration<double>(t1 - t0).count();
    r.seed = seed;
    r.verified = true;
    out.reports.push_back(std::move(r));
    const std::size_t sz = c.gates().size();
    const std::size_t dp = out.reports.back().depth;
    const std::string& nm = out.reports.back().method;
    if (!have_best || sz < best_size ||
        (sz == best_size &&
         (dp < best_depth || (dp == best_depth && nm < best_name)))) {
      have_best = true;
      best_size = sz;
      best_depth = dp;
      best_name = nm;
      out.best = std::move(c);
    }
  }
  if (!have_best)
    throw std::runtime_error("portfolio_synth: every requested method failed");
  return out;
}

}  // namespace lrsynth
