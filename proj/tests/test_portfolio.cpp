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

#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "lrsynth/bench.hpp"
#include "lrsynth/portfolio.hpp"
#include "lrsynth/random_operator.hpp"

using namespace lrsynth;

TEST_CASE("random operator basics") {
  REQUIRE(random_operator(5, 0, 1).is_identity());
  REQUIRE_THROWS_AS(random_operator(1, 3, 1), std::invalid_argument);
  // One random gate on two wires is one of the two elementary matrices.
  const BitMatrix a = random_operator(2, 1, 42);
  BitMatrix lo(2), hi(2);
  lo = BitMatrix::identity(2);
  hi = BitMatrix::identity(2);
  lo.set(1, 0, true);
  hi.set(0, 1, true);
  REQUIRE((a == lo || a == hi));
  // Same seed, same operator; different seed, almost surely different.
  REQUIRE(random_operator(20, 400, 9) == random_operator(20, 400, 9));
  REQUIRE(random_operator(20, 400, 9) != random_operator(20, 400, 10));
}

TEST_CASE("random operators are invertible and dense products mix well") {
  double density_sum = 0.0;
  const std::size_t n = 64;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const BitMatrix a = random_operator(n, n * n, seed);
    REQUIRE(rank(a) == n);
    density_sum += static_cast<double>(a.popcount()) /
                   static_cast<double>(n * n);
  }
  const double mean_density = density_sum / 20.0;
  REQUIRE(mean_density > 0.4);
  REQUIRE(mean_density < 0.6);
}

TEST_CASE("method names round-trip") {
  for (Method m : all_methods()) {
    const auto back = method_from_name(method_name(m));
    REQUIRE(back.has_value());
    REQUIRE(*back == m);
  }
  REQUIRE_FALSE(method_from_name("does-not-exist").has_value());
  REQUIRE(method_is_descent(Method::descent_H_sum));
  REQUIRE_FALSE(method_is_descent(Method::gauss));
}

TEST_CASE("every method synthesizes a verifying circuit") {
  const BitMatrix a = random_operator(16, 256, 31415);
  for (Method m : all_methods()) {
    const CnotCircuit c = synthesize_with(m, a, 7);
    REQUIRE(verify(c, a));
  }
}

TEST_CASE("descent methods retry across restarts and can give up") {
  const BitMatrix a = random_operator(12, 144, 2718);
  PortfolioOptions opts;
  opts.iter_cap = 1;  // guaranteed to be insufficient
  opts.restarts = 3;
  REQUIRE_THROWS_AS(synthesize_with(Method::descent_H_sum, a, 1, opts),
                    DescentStuck);
}

TEST_CASE("portfolio returns the smallest verifying circuit") {
  const BitMatrix a = random_operator(24, 24 * 24, 404);
  const auto r = portfolio_synth(a, all_methods(), 11);
  REQUIRE(verify(r.best, a));
  REQUIRE_FALSE(r.reports.empty());
  for (const auto& rep : r.reports) {
    REQUIRE(rep.verified);
    REQUIRE(rep.n == 24);
    REQUIRE(r.best.gates().size() <= rep.output_gate_count);
  }
  REQUIRE_THROWS_AS(portfolio_synth(a, {}, 11), std::invalid_argument);
}

TEST_CASE("portfolio records methods that give up instead of failing") {
  const BitMatrix a = random_operator(12, 144, 6006);
  PortfolioOptions opts;
  opts.iter_cap = 1;
  opts.restarts = 1;
  const std::vector<Method> methods = {Method::gauss, Method::descent_H_prod};
  const auto r = portfolio_synth(a, methods, 3, opts);
  REQUIRE(verify(r.best, a));
  REQUIRE(r.reports.size() == 1);
  REQUIRE(r.reports[0].method == "gauss");
  REQUIRE(r.stuck_methods ==
          std::vector<std::string>({"descent-Hprod"}));
}

TEST_CASE("csv header and row layout") {
  std::ostringstream os;
  write_report_csv_header(os);
  REQUIRE(os.str() == "method,n,k,seed,out_size,depth,time,verified\r\n");
  SynthesisReport r;
  r.method = "gauss";
  r.n = 8;
  r.output_gate_count = 21;
  r.depth = 13;
  r.wall_time = 0.25;
  r.seed = 77;
  r.verified = true;
  std::ostringstream row;
  write_report_csv_row(row, r, 64);
  REQUIRE(row.str() == "gauss,8,64,77,21,13,0.250000,true\r\n");
}

TEST_CASE("near-optimal experiment emits one verified row per method") {
  NearOptimalConfig cfg;
  cfg.n = 10;
  cfg.k_list = {5, 10};
  cfg.seeds = 2;
  std::ostringstream os;
  experiment_near_optimal(cfg, os);
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  REQUIRE(line == "method,n,k,seed,out_size,depth,time,verified\r");
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    REQUIRE(line.find(",true\r") != std::string::npos);
    ++rows;
  }
  // 2 methods x 2 gate counts x 2 seeds.
  REQUIRE(rows == 8);
}

TEST_CASE("asymptotic experiment always reports the reference method") {
  AsymptoticConfig cfg;
  cfg.n_list = {8};
  cfg.seeds = 2;
  cfg.methods = {Method::greedyge_direct};  // pmh gets appended
  std::ostringstream os, summary;
  experiment_asymptotic(cfg, os, &summary);
  REQUIRE(os.str().find("pmh,") != std::string::npos);
  REQUIRE(os.str().find("greedyge,") != std::string::npos);
  const std::string s = summary.str();
  REQUIRE(s.find("n,method,mean_size,ratio_vs_pmh") == 0);
  REQUIRE(s.find("8,pmh,") != std::string::npos);
  REQUIRE(s.find("8,greedyge,") != std::string::npos);
}

TEST_CASE("experiments are reproducible") {
  NearOptimalConfig cfg;
  cfg.n = 9;
  cfg.k_list = {6};
  cfg.seeds = 2;
  std::ostringstream a, b;
  experiment_near_optimal(cfg, a);
  experiment_near_optimal(cfg, b);
  // Identical except for the wall-time column, which is excluded by
  // comparing the other fields.
  std::istringstream ia(a.str()), ib(b.str());
  std::string la, lb;
  while (std::getline(ia, la)) {
    REQUIRE(std::getline(ib, lb));
    // Strip column 7 (time) from both lines before comparing.
    const auto strip_time = [](const std::string& line) {
      std::vector<std::string> cols;
      std::size_t pos = 0;
      while (true) {
        const std::size_t c = line.find(',', pos);
        cols.push_back(line.substr(pos, c - pos));
        if (c == std::string::npos) break;
        pos = c + 1;
      }
      std::string out;
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i == 6) continue;
        out += cols[i];
        out += '|';
      }
      return out;
    };
    REQUIRE(strip_time(la) == strip_time(lb));
  }
  REQUIRE_FALSE(std::getline(ib, lb));
}
