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
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "lrsynth/bit_matrix.hpp"
#include "lrsynth/circuit.hpp"
#include "lrsynth/portfolio.hpp"
#include "lrsynth/prng.hpp"
#include "lrsynth/random_operator.hpp"

namespace lrsynth {

// Instance CSV schema shared by both experiments; every row carries a
// re-verified circuit. Lines end CRLF.
inline void write_report_csv_header(std::ostream& os) {
  os << "method,n,k,seed,out_size,depth,time,verified\r\n";
}

inline void write_report_csv_row(std::ostream& os, const SynthesisReport& r,
                                 std::size_t k) {
  char tbuf[64];
  std::snprintf(tbuf, sizeof tbuf, "%.6f", r.wall_time);
  os << r.method << ',' << r.n << ',' << k << ',' << r.seed << ','
     << r.output_gate_count << ',' << r.depth << ',' << tbuf << ","
     << (r.verified ? "true" : "false") << "\r\n";
}

namespace detail {

// Runs each method on one instance, appending one verified report per
// method that produced a circuit (stuck descents are skipped).
inline std::vector<SynthesisReport> bench_instance(
    const BitMatrix& a, const std::vector<Method>& methods, std::uint64_t seed,
    const PortfolioOptions& opts, std::size_t k) {
  std::vector<SynthesisReport> rows;
  for (Method m : methods) {
    const auto t0 = std::chrono::steady_clock::now();
    CnotCircuit c(a.dim());
    try {
      c = synthesize_with(m, a, seed, opts);
    } catch (const DescentStuck&) {
      continue;
    }
    const auto t1 = std::chrono::steady_clock::now();
    if (!verify(c, a))
      throw std::logic_error(std::string("bench: ") + method_name(m) +
                             " produced a bad circuit");
    SynthesisReport r;
    r.method = method_name(m);
    r.n = a.dim();
    r.input_gate_count = k;
    r.output_gate_count = c.gates().size();
    r.depth = c.depth();
    r.wall_time = std::chrono::duration<double>(t1 - t0).count();
    r.seed = seed;
    r.verified = true;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace detail

struct AsymptoticConfig {
  std::vector<std::size_t> n_list;
  std::size_t seeds = 20;
  std::vector<Method> methods;
  std::uint64_t base_seed = 1;
  PortfolioOptions opts;
};

/// Worst-case experiment: per n, `seeds` operators of k = n² random CNOTs,
/// every method on each. Per-instance rows go to `instances`; per-(n,method)
/// mean sizes and their ratio against the PMH mean go to `summary` when
/// given. PMH always runs — it is the ratio's denominator.
inline void experiment_asymptotic(const AsymptoticConfig& cfg,
                                  std::ostream& instances,
                                  std::ostream* summary = nullptr) {
  std::vector<Method> methods = cfg.methods;
  if (methods.empty()) methods = {Method::greedyge_direct, Method::pmh};
  bool has_pmh = false;
  for (Method m : methods) has_pmh = has_pmh || m == Method::pmh;
  if (!has_pmh) methods.push_back(Method::pmh);

  write_report_csv_header(instances);
  std::vector<std::vector<double>> size_sum(
      cfg.n_list.size(), std::vector<double>(methods.size(), 0.0));
  std::vector<std::vector<std::size_t>> size_cnt(
      cfg.n_list.size(), std::vector<std::size_t>(methods.size(), 0));

  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const std::size_t n = cfg.n_list[ni];
    const std::size_t k = n * n;
    for (std::size_t s = 0; s < cfg.seeds; ++s) {
      const std::uint64_t seed =
          mix_seed(cfg.base_seed, ni * cfg.seeds + s);
      const BitMatrix a = random_operator(n, k, seed);
      const auto rows = detail::bench_instance(a, methods, seed, cfg.opts, k);
      for (const auto& r : rows) {
        write_report_csv_row(instances, r, k);
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
          if (r.method == method_name(methods[mi])) {
            size_sum[ni][mi] += static_cast<double>(r.output_gate_count);
            size_cnt[ni][mi] += 1;
          }
        }
      }
    }
  }

  if (!summary) return;
  *summary << "n,method,mean_size,ratio_vs_pmh\r\n";
  std::size_t pmh_idx = 0;
  for (std::size_t mi = 0; mi < methods.size(); ++mi)
    if (methods[mi] == Method::pmh) pmh_idx = mi;
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    if (size_cnt[ni][pmh_idx] == 0) continue;
    const double pmh_mean =
        size_sum[ni][pmh_idx] / static_cast<double>(size_cnt[ni][pmh_idx]);
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      if (size_cnt[ni][mi] == 0) continue;
      const double mean =
          size_sum[ni][mi] / static_cast<double>(size_cnt[ni][mi]);
      char mbuf[64], rbuf[64];
      std::snprintf(mbuf, sizeof mbuf, "%.6f", mean);
      std::snprintf(rbuf, sizeof rbuf, "%.6f", mean / pmh_mean);
      *summary << cfg.n_list[ni] << ',' << method_name(methods[mi]) << ','
               << mbuf << ',' << rbuf << "\r\n";
    }
  }
}

struct NearOptimalConfig {
  std::size_t n = 30;
  std::vector<std::size_t> k_list;
  std::size_t seeds = 20;
  std::vector<Method> methods;
  std::uint64_t base_seed = 1;
  PortfolioOptions opts;
};

/// Close-to-optimal experiment: fixed n, operators built from k random CNOTs
/// for each k in k_list, every method on each instance.
inline void experiment_near_optimal(const NearOptimalConfig& cfg,
                                    std::ostream& instances) {
  std::vector<Method> methods = cfg.methods;
  if (methods.empty())
    methods = {Method::greedyge_direct, Method::descent_H_sum};
  write_report_csv_header(instances);
  for (std::size_t ki = 0; ki < cfg.k_list.size(); ++ki) {
    const std::size_t k = cfg.k_list[ki];
    for (std::size_t s = 0; s < cfg.seeds; ++s) {
      const std::uint64_t seed =
          mix_seed(cfg.base_seed, ki * cfg.seeds + s);
      const BitMatrix a = random_operator(cfg.n, k, seed);
      for (const auto& r :
           detail::bench_instance(a, methods, seed, cfg.opts, k))
        write_report_csv_row(instances, r, k);
    }
  }
}

}  // namespace lrsynth
