#include <doctest.h>

#include "gen.hpp"
#include "twistcalc/errors.hpp"
#include "twistcalc/ring.hpp"

using namespace twistcalc;

namespace {

const RingDescriptor kZ = RingDescriptor::integers();
const RingDescriptor kQ = RingDescriptor::rationals();
const RingDescriptor kSqrt2 = RingDescriptor::quadratic(2);
const RingDescriptor kGauss = RingDescriptor::quadratic(-1);

std::vector<RingDescriptor> all_rings() {
  return {kZ, kQ, kSqrt2, kGauss, RingDescriptor::quadratic(3), RingDescriptor::quadratic(-5),
          RingDescriptor::quadratic(7)};
}

}  // namespace

TEST_CASE("ring descriptor grammar") {
  CHECK(RingDescriptor::parse("Z") == kZ);
  CHECK(RingDescriptor::parse("Q") == kQ);
  CHECK(RingDescriptor::parse("Z[sqrt,2]") == kSqrt2);
  CHECK(RingDescriptor::parse("Z[isqrt,1]") == kGauss);
  CHECK(RingDescriptor::parse("Z[isqrt,5]").d() == -5);
  CHECK(kSqrt2.name() == "Z[sqrt,2]");
  CHECK(kGauss.name() == "Z[isqrt,1]");
  CHECK_THROWS_AS(RingDescriptor::parse("Z[sqrt,4]"), InvalidArgument);
  CHECK_THROWS_AS(RingDescriptor::parse("Z[sqrt,1]"), ParseError);
  CHECK_THROWS(RingDescriptor::parse("R"));
  CHECK(kQ.is_field());
  CHECK_FALSE(kSqrt2.is_field());
  CHECK(kSqrt2.lattice_rank() == 2);
  CHECK(kZ.lattice_rank() == 1);
}

TEST_CASE("element parsing and printing") {
  CHECK(RingElem::parse(kSqrt2, "3-2*w").to_string() == "3-2*w");
  CHECK(RingElem::parse(kSqrt2, "w").to_string() == "1*w");
  CHECK(RingElem::parse(kSqrt2, "-w") == -RingElem::omega(kSqrt2));
  CHECK(RingElem::parse(kGauss, "1+1*w") == RingElem(kGauss, 1, 1));
  CHECK(RingElem::parse(kQ, "-4/6").to_string() == "-2/3");
  CHECK_THROWS_AS(RingElem::parse(kZ, "1/2"), InvalidArgument);
  CHECK_THROWS_AS(RingElem::parse(kZ, "1+w"), InvalidArgument);
  CHECK_THROWS_AS(RingElem::parse(kSqrt2, "w+1"), ParseError);
}

TEST_CASE("parse(to_string(x)) round-trips") {
  testing::Gen g(21);
  for (const auto& r : all_rings())
    for (int t = 0; t < 100; ++t) {
      RingElem x = g.elem(r, 50);
      CHECK(RingElem::parse(r, x.to_string()) == x);
    }
}

TEST_CASE("ring axioms on random elements") {
  testing::Gen g(22);
  for (const auto& r : all_rings())
    for (int t = 0; t < 100; ++t) {
      RingElem a = g.elem(r, 9), b = g.elem(r, 9), c = g.elem(r, 9);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == RingElem::zero(r));
      CHECK(a * RingElem::one(r) == a);
    }
}

TEST_CASE("ring automorphisms are multiplicative and additive") {
  testing::Gen g(23);
  for (const auto& r : all_rings())
    for (auto delta : ring_automorphisms(r))
      for (int t = 0; t < 50; ++t) {
        RingElem a = g.elem(r, 9), b = g.elem(r, 9);
        CHECK(apply(delta, a * b) == apply(delta, a) * apply(delta, b));
        CHECK(apply(delta, a + b) == apply(delta, a) + apply(delta, b));
        CHECK(apply(delta, apply(inverse(delta), a)) == a);
      }
  CHECK_THROWS_AS(check_automorphism(kZ, RingAutomorphism::Conjugation), InvalidArgument);
  CHECK(compose(RingAutomorphism::Conjugation, RingAutomorphism::Conjugation) == RingAutomorphism::Identity);
}

TEST_CASE("units and inverses") {
  CHECK(units(kZ).units.size() == 2);
  CHECK(units(kGauss).units.size() == 4);
  CHECK(units(RingDescriptor::quadratic(-3)).units.size() == 2);
  CHECK(units(RingDescriptor::quadratic(-5)).finite);
  CHECK_FALSE(units(kSqrt2).finite);
  CHECK_FALSE(units(kQ).finite);

  CHECK(fundamental_unit(kSqrt2) == RingElem(kSqrt2, 1, 1));
  CHECK(fundamental_unit(RingDescriptor::quadratic(3)) == RingElem(RingDescriptor::quadratic(3), 2, 1));
  CHECK(fundamental_unit(RingDescriptor::quadratic(7)) == RingElem(RingDescriptor::quadratic(7), 8, 3));
  CHECK_THROWS_AS(fundamental_unit(RingDescriptor::quadratic(94), 10), ResourceCapExceeded);

  for (const auto& r : all_rings()) {
    if (r.is_field()) continue;
    for (const auto& u : units(r, 8).units) {
      CHECK(u.is_unit());
      CHECK(u * inverse(u) == RingElem::one(r));
    }
  }
  CHECK_THROWS_AS(inverse(RingElem(kZ, 2)), NotAUnit);
  CHECK_THROWS_AS(inverse(RingElem::zero(kQ)), ZeroDivision);
  CHECK_THROWS_AS(inverse(RingElem(kSqrt2, 1, 2)), NotAUnit);
  CHECK(inverse(RingElem(kQ, Rational(2, 3))) == RingElem(kQ, Rational(3, 2)));
}

TEST_CASE("mixing rings is rejected") {
  CHECK_THROWS_AS(RingElem(kZ, 1) + RingElem(kQ, 1), DescriptorMismatch);
  CHECK_THROWS_AS(RingElem(kSqrt2, 1) * RingElem(kGauss, 1), DescriptorMismatch);
}

TEST_CASE("lattice view and multiplication matrices") {
  RingElem c = RingElem::parse(kSqrt2, "3-2*w");
  CHECK(mul_matrix(c) == IntMatrix{{3, -4}, {-2, 3}});
  CHECK(mul_matrix(RingElem::one(kSqrt2), RingAutomorphism::Conjugation) == IntMatrix{{1, 0}, {0, -1}});

  testing::Gen g(24);
  for (const auto& r : {kZ, kSqrt2, kGauss, RingDescriptor::quadratic(-7)})
    for (auto delta : ring_automorphisms(r))
      for (int t = 0; t < 50; ++t) {
        RingElem a = g.elem(r, 9), x = g.elem(r, 9);
        CHECK(from_lattice(r, to_lattice(x)) == x);
        CHECK(from_lattice(r, mul_matrix(a, delta) * to_lattice(x)) == a * apply(delta, x));
      }
  CHECK_THROWS_AS(to_lattice(RingElem::one(kQ)), InvalidArgument);
}
