#include <doctest.h>

#include "gen.hpp"
#include "twistcalc/errors.hpp"
#include "twistcalc/serialize.hpp"

using namespace twistcalc;

TEST_CASE("round trips") {
  testing::Gen g(91);
  for (const auto& r : {RingDescriptor::integers(), RingDescriptor::rationals(), RingDescriptor::quadratic(-7),
                        RingDescriptor::quadratic(5)}) {
    for (int t = 0; t < 20; ++t) {
      RingElem x = g.elem(r, 1000);
      CHECK(ring_elem_from_json(r, Json::parse(to_json(x).dump())) == x);

      UniTriMatrix m = g.unitri(r, 5, 50);
      CHECK(unitriangular_from_json(r, Json::parse(to_json(m).dump())) == m);

      Automorphism phi = g.normal_form(r, static_cast<std::size_t>(g.range(2, 5)));
      Json j = to_json(phi);
      CHECK(to_json(automorphism_from_json(r, Json::parse(j.dump()))) == j);
    }
    HeisenbergAuto h{{{{RingElem::one(r), RingElem::one(r)}, {RingElem::one(r), RingElem::zero(r)}}}};
    Json hj = to_json(Automorphism(h));
    CHECK(to_json(automorphism_from_json(r, hj)) == hj);
  }
  IntMatrix big{{Int("123456789012345678901234567890"), -1}, {0, 7}};
  CHECK(int_matrix_from_json(to_json(big)) == big);
}

TEST_CASE("numbers are written as strings") {
  const auto gi = RingDescriptor::quadratic(-1);
  Json j = to_json(RingElem(gi, Rational(2), Rational(-3)));
  CHECK(j.is_string());
  CHECK(to_json(ClassCount::infinity()) == "inf");
  CHECK(to_json(IntVector{Int(5)})[0] == "5");
  CHECK(ring_elem_from_json(RingDescriptor::integers(), Json(4)) == RingElem(RingDescriptor::integers(), Rational(4)));
}

TEST_CASE("Reidemeister values") {
  ReidemeisterValue v;
  v.value = ClassCount::finite(Int(16));
  v.layers = {ClassCount::finite(Int(4)), ClassCount::finite(Int(4))};
  Json j = to_json(v);
  CHECK(j.at("value") == "16");
  CHECK(j.at("layers") == Json::array({"4", "4"}));
  CHECK(j.at("witness").is_null());

  ReidemeisterValue inf;
  inf.value = ClassCount::infinity();
  inf.witness = LayerWitness{1, {Int(1), Int(0)}};
  Json k = to_json(inf);
  CHECK(k.at("layers") == "inf");
  CHECK(k.at("witness").at("layer") == 1);
}

TEST_CASE("parse errors") {
  const auto z = RingDescriptor::integers();
  CHECK_THROWS_AS(ring_elem_from_json(z, Json(1.5)), ParseError);
  CHECK_THROWS_AS(int_matrix_from_json(Json::array()), ParseError);
  CHECK_THROWS_AS(int_matrix_from_json(Json::parse(R"([["1", "2"], ["3"]])")), ParseError);
  CHECK_THROWS_AS(unitriangular_from_json(z, Json::parse(R"({"n": 3, "entries": [[2, 1, "1"]]})")), ParseError);
  CHECK_THROWS_AS(unitriangular_from_json(z, Json::parse(R"({"entries": []})")), ParseError);
  CHECK_THROWS_AS(automorphism_from_json(z, Json::parse(R"({"heisenberg": {"M": [["1"]]}})")), ParseError);
  CHECK_THROWS_AS(automorphism_from_json(z, Json::array()), ParseError);
}
