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

#include <catch2/catch_amalgamated.hpp>

#include "lrsynth/oracle.hpp"
#include "lrsynth/random_operator.hpp"
#include "lrsynth/synth_baseline.hpp"

using namespace lrsynth;

namespace {

BitMatrix from_rows(const std::vector<std::string>& rows) {
  BitMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      if (rows[i][j] == '1') m.set(i, j, true);
  return m;
}

// All invertible 3x3 matrices over GF(2), generated by filtering.
std::vector<BitMatrix> gl3() {
  std::vector<BitMatrix> out;
  for (unsigned bits = 0; bits < 512; ++bits) {
    BitMatrix m(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (bits >> (i * 3 + j) & 1) m.set(i, j, true);
    if (rank(m) == 3) out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("optimal circuit for trivial targets") {
  REQUIRE(brute_force_optimal(BitMatrix::identity(4)).gates().empty());
  const BitMatrix e = from_rows({"10", "11"});
  const CnotCircuit c1 = brute_force_optimal(e);
  REQUIRE(verify(c1, e));
  REQUIRE(c1.gates().size() == 1);
}

TEST_CASE("a swap needs exactly three gates") {
  const BitMatrix swap2 = from_rows({"01", "10"});
  const CnotCircuit c = brute_force_optimal(swap2);
  REQUIRE(verify(c, swap2));
  REQUIRE(c.gates().size() == 3);
}

TEST_CASE("a 3-cycle needs exactly six gates") {
  // Two transpositions, three gates each; the search proves nothing shorter
  // exists.
  const BitMatrix cyc = from_rows({"001", "100", "010"});
  const CnotCircuit c = brute_force_optimal(cyc);
  REQUIRE(verify(c, cyc));
  REQUIRE(c.gates().size() == 6);
}

TEST_CASE("search-space guardrails") {
  REQUIRE_THROWS_AS(brute_force_optimal(BitMatrix::identity(5)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(brute_force_optimal(from_rows({"11", "11"})),
                    SingularMatrixError);
}

TEST_CASE("the whole 3x3 group is reachable with at most six gates") {
  std::size_t count = 0;
  std::size_t worst = 0;
  for (const BitMatrix& a : gl3()) {
    const CnotCircuit c = brute_force_optimal(a);
    REQUIRE(verify(c, a));
    // A systematic eliminator can never beat the exhaustive search.
    REQUIRE(c.gates().size() <= synth_gauss(a).gates().size());
    worst = std::max(worst, c.gates().size());
    ++count;
  }
  REQUIRE(count == 168);
  REQUIRE(worst == 6);
}

TEST_CASE("optimal sizes on random 4x4 operators") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const BitMatrix a = random_operator(4, 16, mix_seed(4444, seed));
    const CnotCircuit c = brute_force_optimal(a);
    REQUIRE(verify(c, a));
    REQUIRE(c.gates().size() <= synth_gauss(a).gates().size());
  }
}
