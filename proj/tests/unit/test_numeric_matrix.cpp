#include <doctest.h>

#include "gen.hpp"
#include "twistcalc/errors.hpp"
#include "twistcalc/matrix.hpp"
#include "twistcalc/numeric.hpp"

using namespace twistcalc;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("12") == 12);
  CHECK(to_string(parse_rational("10/5")) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_integer("1/2"), ParseError);
  CHECK(to_string(parse_integer("-123456789012345678901234567890")) == "-123456789012345678901234567890");
}

TEST_CASE("determinant agrees between Bareiss and rational elimination") {
  testing::Gen g(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = g.index(5) + 1;
    IntMatrix m = g.int_matrix(n, n, 6);
    CHECK(Rational(determinant(m)) == determinant(to_rational(m)));
  }
}

TEST_CASE("determinant is multiplicative") {
  testing::Gen g(12);
  for (int t = 0; t < 100; ++t) {
    IntMatrix a = g.int_matrix(4, 4, 5), b = g.int_matrix(4, 4, 5);
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
  }
}

TEST_CASE("rational kernel and solve") {
  RatMatrix m{{1, 2, 3}, {2, 4, 6}};
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 2);
  for (const auto& v : k) CHECK((m * v) == RatVector{0, 0});
  CHECK(rank(m) == 1);

  RatMatrix a{{2, 1}, {1, 3}};
  auto x = solve(a, {3, 5});
  REQUIRE(x);
  CHECK((a * *x) == RatVector{3, 5});
  CHECK_FALSE(solve(m, {1, 0}));
}

TEST_CASE("matrix shape errors") {
  CHECK_THROWS_AS(IntMatrix(2, 2) * IntMatrix(3, 3), InvalidArgument);
  CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), InvalidArgument);
}
