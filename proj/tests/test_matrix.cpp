#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"
#include "maxplus/errors.hpp"
#include "maxplus/honest.hpp"
#include "maxplus/io.hpp"
#include "maxplus/matrix.hpp"
#include "maxplus/rng.hpp"

using maxplus::Matrix;
using maxplus::Value;

namespace {

Matrix random_dense(int n, maxplus::SplitMix64& rng) {
  Matrix m(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (rng.next() % 4 != 0) m.at(i, j) = Value::of(rng.range(-50, 50));
  return m;
}

}  // namespace

TEST_CASE("fresh matrix is the additive zero") {
  const Matrix z(4);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) REQUIRE(!z.at(i, j).finite());
  REQUIRE_THROWS_AS(Matrix(0), maxplus::BadOrder);
}

TEST_CASE("worked 3x3 product and support") {
  const Matrix b = testutil::example3();
  REQUIRE(maxplus::support(b) == 2);
  REQUIRE(maxplus::multiply(b, b).at(1, 1) == Value::of(6));
}

TEST_CASE("entrywise addition is max and is idempotent") {
  const Matrix a = testutil::mat(2, "1 -inf\n3 0\n");
  const Matrix b = testutil::mat(2, "0 5\n-inf 2\n");
  const Matrix s = maxplus::add(a, b);
  REQUIRE(s == testutil::mat(2, "1 5\n3 2\n"));
  REQUIRE(maxplus::add(a, a) == a);
  REQUIRE(maxplus::add(a, Matrix(2)) == a);
  REQUIRE_THROWS_AS(maxplus::add(a, Matrix(3)), maxplus::DimensionMismatch);
}

TEST_CASE("banded matrix powers match frozen rows") {
  const Matrix a = maxplus::to_dense(testutil::ones_honest(2));
  REQUIRE(a == testutil::mat(5,
                             "-inf -inf -inf -1 1\n"
                             "1 -inf -inf -inf -1\n"
                             "-1 1 -inf -inf -inf\n"
                             "-inf -1 1 -inf -inf\n"
                             "-inf -inf -1 1 -inf\n"));
  REQUIRE(maxplus::power_naive(a, 1) == a);
  REQUIRE(maxplus::power_naive(a, 2).row(1) == testutil::vals("-inf -2 0 2 -inf"));
  REQUIRE(maxplus::power_naive(a, 3).row(1) == testutil::vals("-1 1 3 -inf -3"));
  REQUIRE(maxplus::power_naive(a, 4).row(1) == testutil::vals("2 4 -4 -2 0"));
  const Matrix p5 = maxplus::power_naive(a, 5);
  for (int i = 1; i <= 5; ++i) REQUIRE(p5.at(i, i) == Value::of(5));
  REQUIRE_THROWS_AS(maxplus::power_naive(a, 0), maxplus::BadOrder);
}

TEST_CASE("product against the all-eps matrix is all-eps") {
  const Matrix a = maxplus::to_dense(testutil::ones_honest(2));
  const Matrix z(5);
  REQUIRE(maxplus::multiply(a, z) == z);
  REQUIRE(maxplus::multiply(z, a) == z);
}

TEST_CASE("product is associative on random matrices") {
  maxplus::SplitMix64 rng(3);
  for (int n = 4; n <= 8; ++n)
    for (int t = 0; t < 3; ++t) {
      const Matrix p = random_dense(n, rng);
      const Matrix q = random_dense(n, rng);
      const Matrix r = random_dense(n, rng);
      REQUIRE(maxplus::multiply(maxplus::multiply(p, q), r) ==
              maxplus::multiply(p, maxplus::multiply(q, r)));
    }
}

TEST_CASE("powers add exponents") {
  const Matrix a = maxplus::to_dense(maxplus::random_honest(3, 5));
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q)
      REQUIRE(maxplus::power_naive(a, p + q) ==
              maxplus::multiply(maxplus::power_naive(a, p), maxplus::power_naive(a, q)));
}

TEST_CASE("row_times agrees with the full product") {
  maxplus::SplitMix64 rng(9);
  const Matrix p = random_dense(6, rng);
  const Matrix q = random_dense(6, rng);
  const Matrix pq = maxplus::multiply(p, q);
  for (int i = 1; i <= 6; ++i) REQUIRE(maxplus::row_times(p.row(i), q) == pq.row(i));
  REQUIRE_THROWS_AS(maxplus::row_times(p.row(1), random_dense(5, rng)),
                    maxplus::DimensionMismatch);
}

TEST_CASE("scalar shift adds to finite entries only") {
  const Matrix a = maxplus::to_dense(testutil::ones_honest(2));
  const Matrix shifted = maxplus::scalar_shift(a, 2);
  REQUIRE(shifted.at(2, 1) == Value::of(3));
  REQUIRE(!shifted.at(1, 1).finite());
  REQUIRE(maxplus::scalar_shift(a, 0) == a);
  REQUIRE(maxplus::scalar_shift(Matrix(3), 7) == Matrix(3));
}

TEST_CASE("support counts the densest column") {
  REQUIRE(maxplus::support(Matrix(4)) == 0);
  const Matrix a = maxplus::to_dense(maxplus::random_honest(4, 11));
  REQUIRE(maxplus::support(a) == 2);
  REQUIRE(maxplus::min_column_support(a) == 2);
}

TEST_CASE("dense matrix text round trip is exact") {
  maxplus::SplitMix64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const Matrix m = random_dense(2 + static_cast<int>(rng.next() % 9), rng);
    std::stringstream ss;
    maxplus::write_matrix(ss, m);
    REQUIRE(maxplus::read_matrix(ss) == m);
  }
}

TEST_CASE("matrix parser rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::stringstream ss(text);
    return maxplus::read_matrix(ss);
  };
  REQUIRE_THROWS_AS(parse("maxplus v2\nn 1\n0\n"), maxplus::ParseError);
  REQUIRE_THROWS_AS(parse("maxplus v1\nn 2\n0 1\n"), maxplus::ParseError);
  REQUIRE_THROWS_AS(parse("maxplus v1\nn 2\n0 1\nx 3\n"), maxplus::ParseError);
  REQUIRE_THROWS_AS(parse("maxplus v1\nn 0\n"), maxplus::ParseError);
  REQUIRE_THROWS_AS(parse(""), maxplus::ParseError);
  REQUIRE_THROWS_AS(parse("maxplus v1\nn 2\n0 1\n2 3.5\n"), maxplus::ParseError);
}
