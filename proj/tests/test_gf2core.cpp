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

#include <random>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "lrsynth/bit_matrix.hpp"
#include "lrsynth/lu.hpp"
#include "lrsynth/prng.hpp"

using namespace lrsynth;

namespace {

BitMatrix from_rows(const std::vector<std::string>& rows) {
  BitMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      if (rows[i][j] == '1') m.set(i, j, true);
  return m;
}

BitMatrix random_invertible(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitMatrix m = BitMatrix::identity(n);
  for (std::size_t g = 0; g < 4 * n * n; ++g) {
    const std::size_t c = bounded_rand(rng, n);
    std::size_t t = bounded_rand(rng, n - 1);
    if (t >= c) ++t;
    m.row_add(c, t);
  }
  return m;
}

}  // namespace

TEST_CASE("identity and element access") {
  BitMatrix m = BitMatrix::identity(5);
  REQUIRE(m.dim() == 5);
  REQUIRE(m.is_identity());
  REQUIRE(m.popcount() == 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) REQUIRE(m.get(i, j) == (i == j));
  m.flip(0, 4);
  REQUIRE(m.get(0, 4));
  REQUIRE_FALSE(m.is_identity());
  m.set(0, 4, false);
  REQUIRE(m.is_identity());
}

TEST_CASE("row_add xors source row into destination row") {
  BitMatrix m = from_rows({"110", "011", "001"});
  m.row_add(0, 1);  // row1 ^= row0
  REQUIRE(m == from_rows({"110", "101", "001"}));
  m.row_add(2, 0);
  REQUIRE(m == from_rows({"111", "101", "001"}));
}

TEST_CASE("col_add xors source column into destination column") {
  BitMatrix m = from_rows({"110", "011", "001"});
  m.col_add(0, 2);  // col2 ^= col0
  REQUIRE(m == from_rows({"111", "011", "001"}));
  m.col_add(1, 0);
  REQUIRE(m == from_rows({"011", "111", "001"}));
}

TEST_CASE("row and column swaps") {
  BitMatrix m = from_rows({"100", "010", "111"});
  m.swap_rows(0, 2);
  REQUIRE(m == from_rows({"111", "010", "100"}));
  m.swap_cols(0, 1);
  REQUIRE(m == from_rows({"111", "100", "010"}));
}

TEST_CASE("row popcount helpers") {
  BitMatrix m = from_rows({"1011", "0000", "1111", "0001"});
  REQUIRE(m.row_popcount(0) == 3);
  REQUIRE(m.row_popcount(1) == 0);
  REQUIRE(m.row_popcount(2) == 4);
  REQUIRE(m.row_popcount_from(0, 1) == 2);
  REQUIRE(m.row_popcount_from(2, 2) == 2);
  REQUIRE(m.popcount() == 8);
}

TEST_CASE("row_add works across word boundaries") {
  const std::size_t n = 130;
  BitMatrix m = BitMatrix::identity(n);
  m.set(0, 64, true);
  m.set(0, 129, true);
  m.row_add(0, 100);
  REQUIRE(m.get(100, 0));
  REQUIRE(m.get(100, 64));
  REQUIRE(m.get(100, 129));
  REQUIRE(m.get(100, 100));
  REQUIRE(m.row_popcount(100) == 4);
  m.row_add(0, 100);
  m.set(0, 64, false);
  m.set(0, 129, false);
  REQUIRE(m.is_identity());
}

TEST_CASE("multiply matches hand example") {
  // [[1,1],[0,1]] * [[1,0],[1,1]] = [[0,1],[1,1]]
  const BitMatrix a = from_rows({"11", "01"});
  const BitMatrix b = from_rows({"10", "11"});
  REQUIRE(multiply(a, b) == from_rows({"01", "11"}));
  REQUIRE(multiply(b, a) == from_rows({"11", "10"}));
}

TEST_CASE("multiply by identity is a no-op") {
  const BitMatrix a = random_invertible(37, 11);
  const BitMatrix id = BitMatrix::identity(37);
  REQUIRE(multiply(a, id) == a);
  REQUIRE(multiply(id, a) == a);
}

TEST_CASE("row_add equals left multiplication by an elementary matrix") {
  const std::size_t n = 9;
  BitMatrix a = random_invertible(n, 3);
  BitMatrix e = BitMatrix::identity(n);
  e.set(4, 2, true);  // row4 ^= row2
  BitMatrix by_mult = multiply(e, a);
  a.row_add(2, 4);
  REQUIRE(a == by_mult);
}

TEST_CASE("col_add equals right multiplication by an elementary matrix") {
  const std::size_t n = 9;
  BitMatrix a = random_invertible(n, 4);
  BitMatrix e = BitMatrix::identity(n);
  e.set(2, 4, true);  // col4 ^= col2
  BitMatrix by_mult = multiply(a, e);
  a.col_add(2, 4);
  REQUIRE(a == by_mult);
}

TEST_CASE("inverse round-trips") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (std::size_t n : {2u, 7u, 64u, 65u, 100u}) {
      const BitMatrix a = random_invertible(n, mix_seed(seed, n));
      const BitMatrix ai = inverse(a);
      REQUIRE(multiply(a, ai).is_identity());
      REQUIRE(multiply(ai, a).is_identity());
    }
  }
}

TEST_CASE("inverse of a singular matrix throws") {
  BitMatrix m = from_rows({"110", "110", "001"});
  REQUIRE_THROWS_AS(inverse(m), SingularMatrixError);
  BitMatrix z(4);
  REQUIRE_THROWS_AS(inverse(z), SingularMatrixError);
}

TEST_CASE("transpose and rank") {
  const BitMatrix a = from_rows({"110", "011", "001"});
  REQUIRE(transpose(a) == from_rows({"100", "110", "011"}));
  REQUIRE(transpose(transpose(a)) == a);
  REQUIRE(rank(a) == 3);
  REQUIRE(rank(from_rows({"110", "110", "001"})) == 2);
  REQUIRE(rank(BitMatrix(5)) == 0);
  const BitMatrix r = random_invertible(70, 9);
  REQUIRE(rank(r) == 70);
  REQUIRE(transpose(transpose(r)) == r);
}

TEST_CASE("triangular and permutation predicates") {
  REQUIRE(from_rows({"100", "110", "011"}).is_lower_triangular());
  REQUIRE_FALSE(from_rows({"101", "110", "011"}).is_lower_triangular());
  REQUIRE(from_rows({"110", "011", "001"}).is_upper_triangular());
  REQUIRE_FALSE(from_rows({"110", "011", "101"}).is_upper_triangular());
  REQUIRE(from_rows({"010", "001", "100"}).is_permutation_matrix());
  REQUIRE_FALSE(from_rows({"010", "011", "100"}).is_permutation_matrix());
  REQUIRE_FALSE(from_rows({"010", "010", "100"}).is_permutation_matrix());
  REQUIRE(BitMatrix::identity(8).is_permutation_matrix());
}

TEST_CASE("first_set_in_row") {
  BitMatrix m(80);
  m.set(0, 0, true);
  m.set(1, 79, true);
  m.set(2, 64, true);
  REQUIRE(m.first_set_in_row(0) == 0);
  REQUIRE(m.first_set_in_row(1) == 79);
  REQUIRE(m.first_set_in_row(2) == 64);
  REQUIRE(m.first_set_in_row(3) == 80);  // empty row => dim
}

TEST_CASE("permutation compose, inverse, matrix form") {
  Permutation p({2, 0, 1});  // p(0)=2, p(1)=0, p(2)=1
  Permutation q({1, 2, 0});
  REQUIRE(p.inverse().map() == std::vector<std::uint32_t>({1, 2, 0}));
  // compose(p, q)(x) = p(q(x))
  const Permutation pq = compose(p, q);
  REQUIRE(pq.map() == std::vector<std::uint32_t>({0, 1, 2}));
  // to_matrix: column j has its 1 in row p(j)
  const BitMatrix pm = to_matrix(p);
  REQUIRE(pm == from_rows({"010", "001", "100"}));
  REQUIRE(permutation_from_matrix(pm).map() == p.map());
  // left multiplication by P sends row k of A to row p(k) of PA
  BitMatrix a = from_rows({"110", "011", "111"});
  const BitMatrix pa = multiply(pm, a);
  REQUIRE(pa == from_rows({"011", "111", "110"}));
}

TEST_CASE("compose matches matrix product") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + bounded_rand(rng, 30);
    std::vector<std::uint32_t> mp(n), mq(n);
    for (std::size_t i = 0; i < n; ++i) mp[i] = mq[i] = (std::uint32_t)i;
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(mp[i], mp[bounded_rand(rng, i + 1)]);
      std::swap(mq[i], mq[bounded_rand(rng, i + 1)]);
    }
    Permutation p(mp), q(mq);
    REQUIRE(to_matrix(compose(p, q)) == multiply(to_matrix(p), to_matrix(q)));
    REQUIRE(multiply(to_matrix(p), to_matrix(p.inverse())).is_identity());
  }
}

TEST_CASE("permutation_from_matrix rejects non-permutations") {
  REQUIRE_THROWS_AS(permutation_from_matrix(from_rows({"11", "01"})),
                    std::invalid_argument);
}

TEST_CASE("matrix text format round-trips") {
  const BitMatrix a = random_invertible(19, 5);
  std::ostringstream os;
  write_matrix_text(os, a);
  std::istringstream is(os.str());
  REQUIRE(read_matrix_text(is) == a);
}

TEST_CASE("matrix text format rejects malformed input") {
  {
    std::istringstream is("2\n10\n1\n");  // short row
    REQUIRE_THROWS_AS(read_matrix_text(is), std::runtime_error);
  }
  {
    std::istringstream is("2\n10\n1x\n");  // bad character
    REQUIRE_THROWS_AS(read_matrix_text(is), std::runtime_error);
  }
  {
    std::istringstream is("3\n10\n01\n");  // wrong row length
    REQUIRE_THROWS_AS(read_matrix_text(is), std::runtime_error);
  }
  {
    std::istringstream is("0\n");  // dimension must be positive
    REQUIRE_THROWS_AS(read_matrix_text(is), std::runtime_error);
  }
  {
    std::istringstream is("x\n");  // dimension not a number
    REQUIRE_THROWS_AS(read_matrix_text(is), std::runtime_error);
  }
}

TEST_CASE("lu decomposition contract across strategies") {
  for (LuStrategy s :
       {LuStrategy::standard, LuStrategy::sparse, LuStrategy::min_ones}) {
    for (std::uint64_t seed : {10u, 20u, 30u}) {
      for (std::size_t n : {2u, 5u, 17u, 70u}) {
        const BitMatrix a = random_invertible(n, mix_seed(seed, n));
        const LuFactors f = lu_decompose(a, s);
        REQUIRE(f.l.is_lower_triangular());
        REQUIRE(f.u.is_upper_triangular());
        for (std::size_t i = 0; i < n; ++i) {
          REQUIRE(f.l.get(i, i));
          REQUIRE(f.u.get(i, i));
        }
        // P1 * A * P2 == L * U
        const BitMatrix lhs =
            multiply(multiply(to_matrix(f.p1), a), to_matrix(f.p2));
        REQUIRE(lhs == multiply(f.l, f.u));
      }
    }
  }
}

TEST_CASE("lu rejects singular input") {
  const BitMatrix m = from_rows({"110", "110", "001"});
  for (LuStrategy s :
       {LuStrategy::standard, LuStrategy::sparse, LuStrategy::min_ones}) {
    REQUIRE_THROWS_AS(lu_decompose(m, s), SingularMatrixError);
  }
}

TEST_CASE("lu min_ones dimension limit") {
  const BitMatrix big = random_invertible(300, 8);
  REQUIRE_THROWS_AS(lu_decompose(big, LuStrategy::min_ones),
                    std::invalid_argument);
  // raising the limit makes it legal again
  const LuFactors f = lu_decompose(big, LuStrategy::min_ones, 512);
  const BitMatrix lhs =
      multiply(multiply(to_matrix(f.p1), big), to_matrix(f.p2));
  REQUIRE(lhs == multiply(f.l, f.u));
}

TEST_CASE("lu standard keeps column order fixed") {
  const BitMatrix a = random_invertible(24, 77);
  const LuFactors f = lu_decompose(a, LuStrategy::standard);
  for (std::size_t i = 0; i < 24; ++i) REQUIRE(f.p2.map()[i] == i);
}

TEST_CASE("prng helpers") {
  REQUIRE(mix_seed(1, 0) != mix_seed(1, 1));
  REQUIRE(mix_seed(1, 0) != mix_seed(2, 0));
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) REQUIRE(bounded_rand(rng, 7) < 7);
  REQUIRE(bounded_rand(rng, 1) == 0);
}
