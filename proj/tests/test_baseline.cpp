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

}  // namespace

TEST_CASE("gauss on identity emits nothing") {
  REQUIRE(synth_gauss(BitMatrix::identity(6)).gates().empty());
}

TEST_CASE("gauss handles a single elementary matrix") {
  const BitMatrix a = from_rows({"10", "11"});
  const CnotCircuit c = synth_gauss(a);
  REQUIRE(verify(c, a));
  REQUIRE(c.gates().size() == 1);
}

TEST_CASE("gauss handles the swap matrix") {
  const BitMatrix a = from_rows({"01", "10"});
  const CnotCircuit c = synth_gauss(a);
  REQUIRE(verify(c, a));
  REQUIRE(c.gates().size() == 3);
}

TEST_CASE("gauss rejects singular input") {
  REQUIRE_THROWS_AS(synth_gauss(from_rows({"11", "11"})), SingularMatrixError);
}

TEST_CASE("gauss verifies on random operators with a size bound") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const std::size_t n = 2 + static_cast<std::size_t>(seed) % 40;
    const BitMatrix a = random_operator(n, n * n, mix_seed(99, seed));
    const CnotCircuit c = synth_gauss(a);
    REQUIRE(verify(c, a));
    REQUIRE(c.gates().size() <= n * n - 1);
    REQUIRE_FALSE(c.out_perm().has_value());
  }
}

TEST_CASE("default pmh block size") {
  REQUIRE(default_pmh_block_size(2) == 1);
  REQUIRE(default_pmh_block_size(3) == 1);
  REQUIRE(default_pmh_block_size(16) == 2);
  REQUIRE(default_pmh_block_size(64) == 3);
  REQUIRE(default_pmh_block_size(256) == 4);
  REQUIRE(default_pmh_block_size(1024) == 5);
}

TEST_CASE("pmh verifies across block sizes") {
  const BitMatrix a = random_operator(23, 23 * 23, 5);
  for (std::size_t m = 1; m <= 6; ++m) {
    const CnotCircuit c = synth_pmh(a, m);
    REQUIRE(verify(c, a));
  }
  REQUIRE(verify(synth_pmh(a), a));  // default block size
  REQUIRE_THROWS_AS(synth_pmh(a, 0), std::invalid_argument);
}

TEST_CASE("pmh beats gauss on dense instances") {
  // Aggregate over a few large dense operators; the block strategy should
  // clearly win.
  std::size_t pmh_total = 0, gauss_total = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const BitMatrix a = random_operator(96, 96 * 96, mix_seed(7, seed));
    pmh_total += synth_pmh(a).gates().size();
    gauss_total += synth_gauss(a).gates().size();
  }
  REQUIRE(pmh_total < gauss_total);
}

TEST_CASE("pmh rejects singular input") {
  REQUIRE_THROWS_AS(synth_pmh(from_rows({"11", "11"})), SingularMatrixError);
}
