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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lrsynth/lrsynth.hpp"

namespace {

using namespace lrsynth;

std::vector<std::size_t> parse_size_list(const std::string& s,
                                         const char* what) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string tok =
        s.substr(pos, comma == std::string::npos ? std::string::npos
                                                 : comma - pos);
    if (tok.empty())
      throw CLI::ValidationError(std::string(what) + ": empty entry in list");
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(what) + ": bad integer '" + tok +
                                 "'");
    }
    if (used != tok.size())
      throw CLI::ValidationError(std::string(what) + ": bad integer '" + tok +
                                 "'");
    out.push_back(static_cast<std::size_t>(v));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<Method> parse_methods(const std::string& s) {
  std::vector<Method> out;
  for (const auto& name : [&] {
         std::vector<std::string> toks;
         std::size_t pos = 0;
         while (pos <= s.size()) {
           const std::size_t comma = s.find(',', pos);
           toks.push_back(s.substr(pos, comma == std::string::npos
                                            ? std::string::npos
                                            : comma - pos));
           if (comma == std::string::npos) break;
           pos = comma + 1;
         }
         return toks;
       }()) {
    const auto m = method_from_name(name);
    if (!m)
      throw CLI::ValidationError("--methods: unknown method '" + name + "'");
    out.push_back(*m);
  }
  return out;
}

CostFunctionKind parse_cost(const std::string& s) {
  if (s == "hsum") return CostFunctionKind::h_sum;
  if (s == "hprod") return CostFunctionKind::h_prod;
  if (s == "Hsum") return CostFunctionKind::H_sum;
  if (s == "Hprod") return CostFunctionKind::H_prod;
  throw CLI::ValidationError("--cost: expected hsum|hprod|Hsum|Hprod");
}

LuStrategy parse_lu(const std::string& s) {
  if (s == "standard") return LuStrategy::standard;
  if (s == "sparse") return LuStrategy::sparse;
  if (s == "minones") return LuStrategy::min_ones;
  throw CLI::ValidationError("--lu: expected standard|sparse|minones");
}

std::ofstream open_out(const std::string& path, const char* what) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error(std::string("cannot open ") + what + " file '" +
                             path + "' for writing");
  return os;
}

int cmd_synth(const std::string& in, const std::string& out,
              const std::string& method, std::size_t m, const std::string& lu,
              const std::string& cost, std::uint64_t seed,
              std::size_t iter_cap, std::size_t restarts) {
  const BitMatrix a = read_matrix_file(in);
  PortfolioOptions opts;
  opts.restarts = restarts;
  opts.iter_cap = iter_cap;
  opts.pmh_m = m;
  CnotCircuit c(a.dim());
  if (method == "gauss") {
    c = synth_gauss(a);
  } else if (method == "pmh") {
    c = m ? synth_pmh(a, m) : synth_pmh(a);
  } else if (method == "greedyge") {
    c = greedyge_general_direct(a);
  } else if (method == "greedyge-lu") {
    c = greedyge_general_lu(a, parse_lu(lu));
  } else if (method == "descent") {
    const CostFunctionKind kind = parse_cost(cost);
    const std::size_t attempts = restarts ? restarts : 1;
    bool done = false;
    for (std::size_t r = 0; r < attempts && !done; ++r) {
      try {
        c = greedy_descent(a, kind, mix_seed(seed, r), iter_cap);
        done = true;
      } catch (const DescentStuck& e) {
        if (r + 1 == attempts) {
          std::cerr << "synth: descent stuck on every attempt ("
                    << e.what() << ")\n";
          return 3;
        }
      }
    }
  } else {
    throw CLI::ValidationError(
        "--method: expected gauss|pmh|greedyge|greedyge-lu|descent");
  }
  if (!verify(c, a)) {
    std::cerr << "synth: internal error: circuit does not verify\n";
    return 2;
  }
  auto os = open_out(out, "circuit");
  write_circuit_text(os, c);
  std::cout << "method=" << method << " n=" << a.dim()
            << " gates=" << c.gates().size() << " depth=" << c.depth()
            << " verified=true\n";
  return 0;
}

int cmd_verify(const std::string& circuit_path, const std::string& matrix_path) {
  const CnotCircuit c = read_circuit_file(circuit_path);
  const BitMatrix a = read_matrix_file(matrix_path);
  if (c.dim() != a.dim()) {
    std::cout << "mismatch (dimension)\n";
    return 1;
  }
  if (verify(c, a)) {
    std::cout << "verified\n";
    return 0;
  }
  std::cout << "mismatch\n";
  return 1;
}

int cmd_random(std::size_t n, std::size_t k, std::uint64_t seed,
               const std::string& out) {
  const BitMatrix a = random_operator(n, k, seed);
  auto os = open_out(out, "matrix");
  write_matrix_text(os, a);
  std::cout << "n=" << n << " k=" << k << " seed=" << seed
            << " ones=" << a.popcount() << "\n";
  return 0;
}

int cmd_oracle(const std::string& in, const std::string& out) {
  const BitMatrix a = read_matrix_file(in);
  const CnotCircuit c = brute_force_optimal(a);
  if (!verify(c, a)) {
    std::cerr << "oracle: internal error: circuit does not verify\n";
    return 2;
  }
  auto os = open_out(out, "circuit");
  write_circuit_text(os, c);
  std::cout << "n=" << a.dim() << " optimal_gates=" << c.gates().size()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lrsynth: synthesis of linear reversible (CNOT-only) circuits over "
      "GF(2)"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Synthesize a circuit for a matrix");
  std::string s_in, s_out, s_method;
  std::string s_lu = "standard", s_cost = "Hsum";
  std::size_t s_m = 0, s_iter_cap = 0, s_restarts = 5;
  std::uint64_t s_seed = 1;
  synth->add_option("--in", s_in, "Input matrix file")->required();
  synth->add_option("--out", s_out, "Output circuit file")->required();
  synth
      ->add_option("--method", s_method,
                   "gauss|pmh|greedyge|greedyge-lu|descent")
      ->required();
  synth->add_option("--m", s_m, "PMH section width (0 = default)");
  synth->add_option("--lu", s_lu, "LU pivot strategy: standard|sparse|minones");
  synth->add_option("--cost", s_cost,
                    "Descent cost function: hsum|hprod|Hsum|Hprod");
  synth->add_option("--seed", s_seed, "Descent base seed");
  synth->add_option("--iter-cap", s_iter_cap,
                    "Descent iteration cap (0 = 20*n^2)");
  synth->add_option("--restarts", s_restarts,
                    "Descent attempts before giving up");

  // verify
  auto* ver = app.add_subcommand("verify", "Check a circuit against a matrix");
  std::string v_circuit, v_matrix;
  ver->add_option("--circuit", v_circuit, "Circuit file")->required();
  ver->add_option("--matrix", v_matrix, "Matrix file")->required();

  // random
  auto* rnd = app.add_subcommand("random", "Generate a random operator");
  std::size_t r_n = 0, r_k = 0;
  std::uint64_t r_seed = 1;
  std::string r_out;
  rnd->add_option("--n", r_n, "Dimension (>= 2)")->required();
  rnd->add_option("--k", r_k, "Number of random CNOTs")->required();
  rnd->add_option("--seed", r_seed, "Generator seed");
  rnd->add_option("--out", r_out, "Output matrix file")->required();

  // oracle
  auto* orc = app.add_subcommand("oracle", "Optimal circuit by BFS (n <= 4)");
  std::string o_in, o_out;
  orc->add_option("--in", o_in, "Input matrix file")->required();
  orc->add_option("--out", o_out, "Output circuit file")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Experiment protocols");
  bench->require_subcommand(1);

  auto* ba = bench->add_subcommand("asymptotic",
                                   "Dense worst-case sweep over n (k = n^2)");
  std::string ba_nlist = "64", ba_methods = "greedyge,pmh", ba_csv,
              ba_summary;
  std::size_t ba_seeds = 20, ba_iter_cap = 0, ba_restarts = 5;
  std::uint64_t ba_seed = 1;
  ba->add_option("--n-list", ba_nlist, "Comma-separated dimensions");
  ba->add_option("--seeds", ba_seeds, "Instances per n");
  ba->add_option("--methods", ba_methods,
                 "Comma-separated method names (pmh is always added)");
  ba->add_option("--base-seed", ba_seed, "Base seed for instance streams");
  ba->add_option("--iter-cap", ba_iter_cap, "Descent iteration cap");
  ba->add_option("--restarts", ba_restarts, "Descent attempts per instance");
  ba->add_option("--csv", ba_csv, "Per-instance CSV path")->required();
  ba->add_option("--summary", ba_summary, "Per-n summary CSV path");

  auto* bn = bench->add_subcommand("near-optimal",
                                   "Fixed n, sweep over input gate counts k");
  std::string bn_klist = "20", bn_methods = "greedyge,descent-Hsum", bn_csv;
  std::size_t bn_n = 30, bn_seeds = 20, bn_iter_cap = 0, bn_restarts = 5;
  std::uint64_t bn_seed = 1;
  bn->add_option("--n", bn_n, "Dimension");
  bn->add_option("--k-list", bn_klist, "Comma-separated input gate counts");
  bn->add_option("--seeds", bn_seeds, "Instances per k");
  bn->add_option("--methods", bn_methods, "Comma-separated method names");
  bn->add_option("--base-seed", bn_seed, "Base seed for instance streams");
  bn->add_option("--iter-cap", bn_iter_cap, "Descent iteration cap");
  bn->add_option("--restarts", bn_restarts, "Descent attempts per instance");
  bn->add_option("--csv", bn_csv, "Per-instance CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed())
      return cmd_synth(s_in, s_out, s_method, s_m, s_lu, s_cost, s_seed,
                       s_iter_cap, s_restarts);
    if (ver->parsed()) return cmd_verify(v_circuit, v_matrix);
    if (rnd->parsed()) return cmd_random(r_n, r_k, r_seed, r_out);
    if (orc->parsed()) return cmd_oracle(o_in, o_out);
    if (bench->parsed()) {
      if (ba->parsed()) {
        AsymptoticConfig cfg;
        cfg.n_list = parse_size_list(ba_nlist, "--n-list");
        cfg.seeds = ba_seeds;
        cfg.methods = parse_methods(ba_methods);
        cfg.base_seed = ba_seed;
        cfg.opts.iter_cap = ba_iter_cap;
        cfg.opts.restarts = ba_restarts;
        auto os = open_out(ba_csv, "CSV");
        if (!ba_summary.empty()) {
          auto ss = open_out(ba_summary, "summary CSV");
          experiment_asymptotic(cfg, os, &ss);
        } else {
          experiment_asymptotic(cfg, os, nullptr);
        }
        return 0;
      }
      if (bn->parsed()) {
        NearOptimalConfig cfg;
        cfg.n = bn_n;
        cfg.k_list = parse_size_list(bn_klist, "--k-list");
        cfg.seeds = bn_seeds;
        cfg.methods = parse_methods(bn_methods);
        cfg.base_seed = bn_seed;
        cfg.opts.iter_cap = bn_iter_cap;
        cfg.opts.restarts = bn_restarts;
        auto os = open_out(bn_csv, "CSV");
        experiment_near_optimal(cfg, os);
        return 0;
      }
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
