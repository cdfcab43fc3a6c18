#include <doctest.h>

#include "closed_forms.hpp"
#include "gen.hpp"
#include "twistcalc/engine.hpp"
#include "twistcalc/errors.hpp"
#include "twistcalc/oracle.hpp"

using namespace twistcalc;

namespace {

RingElem elem(const RingDescriptor& r, long a, long b = 0) { return RingElem(r, Rational(a), Rational(b)); }

Int abs_det_shift(const IntMatrix& m) {
  return abs_value(determinant(IntMatrix::identity(m.rows()) - m));
}

// Z phi(Z)^{-1} over a generating set of the preimage of the fixed points on
// UT_3 / Z_1, together with the central contributions.
std::vector<IntVector> exact_h_n3(const NormalFormAuto& phi) {
  const RingDescriptor& r = phi.desc();
  const std::size_t w = r.lattice_rank();
  std::vector<IntVector> gens;
  IntMatrix top = testing::closed_form_layer(phi, 1);
  for (const auto& v : kernel_basis(IntMatrix::identity(2 * w) - top)) {
    IntVector t1(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(w));
    IntVector t2(v.begin() + static_cast<std::ptrdiff_t>(w), v.end());
    UniTriMatrix z = UniTriMatrix::quotient_rep(r, {from_lattice(r, t1), from_lattice(r, t2)}, 1, 3);
    UniTriMatrix c = z * apply(phi, z).inverse();
    REQUIRE(c.central_level() <= 1);
    gens.push_back(to_lattice(c.at(1, 3)));
  }
  IntMatrix k0 = IntMatrix::identity(w) - testing::closed_form_layer(phi, 0);
  for (std::size_t j = 0; j < w; ++j) gens.push_back(k0.column(j));
  return gens;
}

bool in_span(const std::vector<IntVector>& gens, const IntVector& v) {
  bool zero = true;
  for (const auto& x : v) zero = zero && x == 0;
  if (zero) return true;
  if (gens.empty()) return false;
  return solve_integer(IntMatrix::from_columns(gens, v.size()), v).has_value();
}

}  // namespace

TEST_CASE("frozen values") {
  const auto s2 = RingDescriptor::quadratic(2);
  const auto gi = RingDescriptor::quadratic(-1);
  const auto z = RingDescriptor::integers();

  auto v = reidemeister_number(NormalFormAuto::monomial({elem(s2, 1), elem(s2, 1, 1), elem(s2, 3, 2)}));
  CHECK(v.value.to_string() == "16");
  REQUIRE(v.layers.size() == 2);
  CHECK(v.layers[0].to_string() == "4");
  CHECK(v.layers[1].to_string() == "4");
  CHECK_FALSE(v.witness.has_value());

  CHECK(reidemeister_number(NormalFormAuto::monomial({elem(gi, 1), elem(gi, 0, 1), elem(gi, -1)})).value.to_string() == "16");

  HeisenbergAuto golden{{{{elem(z, 1), elem(z, 1)}, {elem(z, 1), elem(z, 0)}}}};
  CHECK(reidemeister_number(golden).value.to_string() == "2");
}

TEST_CASE("Heisenberg over Z with det -1 gives 2 |tr M|") {
  testing::Gen g(61);
  const auto z = RingDescriptor::integers();
  int checked = 0;
  while (checked < 40) {
    IntMatrix u = g.unimodular(2, 6);
    if (determinant(u) != -1) continue;
    HeisenbergAuto psi{{{{RingElem(z, Rational(u(0, 0))), RingElem(z, Rational(u(0, 1)))},
                         {RingElem(z, Rational(u(1, 0))), RingElem(z, Rational(u(1, 1)))}}}};
    Int tr = u(0, 0) + u(1, 1);
    auto v = reidemeister_number(psi);
    if (tr == 0) {
      CHECK(v.value.is_infinite());
    } else {
      CHECK(v.value == ClassCount::finite(2 * abs_value(tr)));
    }
    ++checked;
  }
}

TEST_CASE("identity and inner automorphisms have infinitely many classes") {
  testing::Gen g(62);
  for (const auto& r : {RingDescriptor::integers(), RingDescriptor::quadratic(-1), RingDescriptor::quadratic(5)})
    for (std::size_t n = 2; n <= 5; ++n) {
      NormalFormAuto phi = NormalFormAuto::identity(r, n);
      if (n >= 3) phi.inner = g.unitri(r, n, 3);
      auto v = reidemeister_number(phi);
      CHECK(v.value.is_infinite());
      REQUIRE(v.witness.has_value());
      IntMatrix m = layer_matrices(phi)[v.witness->layer];
      CHECK(m * v.witness->vector == v.witness->vector);
    }
}

TEST_CASE("value is the product of the closed-form layer determinants") {
  testing::Gen g(63);
  for (const auto& r : {RingDescriptor::integers(), RingDescriptor::quadratic(-1), RingDescriptor::quadratic(-3),
                        RingDescriptor::quadratic(2), RingDescriptor::quadratic(3)})
    for (std::size_t n = 2; n <= 6; ++n)
      for (int t = 0; t < 10; ++t) {
        NormalFormAuto phi = g.normal_form(r, n);
        Int product = 1;
        for (std::size_t k = 0; k + 2 <= n; ++k) product *= abs_det_shift(testing::closed_form_layer(phi, k));
        auto v = reidemeister_number(phi);
        if (product == 0) {
          CHECK(v.value.is_infinite());
          REQUIRE(v.witness.has_value());
          CHECK(abs_det_shift(testing::closed_form_layer(phi, v.witness->layer)) == 0);
        } else {
          CHECK(v.value == ClassCount::finite(product));
          CHECK(v.layers.size() == n - 1);
        }
      }
}

TEST_CASE("finite layer values agree with brute-force class counts") {
  testing::Gen g(64);
  int compared = 0;
  for (const auto& r : {RingDescriptor::integers(), RingDescriptor::quadratic(-1), RingDescriptor::quadratic(2)})
    for (std::size_t n = 2; n <= 5; ++n)
      for (int t = 0; t < 25; ++t) {
        NormalFormAuto phi = g.monomial(r, n);
        auto layers = layer_matrices(phi);
        for (std::size_t k = 0; k < layers.size(); ++k) {
          Int q = abs_det_shift(layers[k]);
          if (q <= 1) continue;
          // |coker(I - M)| = q, and the cokernel is killed by q.
          double size = 1;
          for (std::size_t i = 0; i < layers[k].rows(); ++i) size *= q.get_d();
          if (size > 6561) continue;
          auto [grp, map] = linear_abelian(q.get_ui(), layers[k]);
          CHECK(twisted_classes(grp, map).count == q.get_ui());
          CHECK(reidemeister_abelian(layers[k]) == ClassCount::finite(q));
          ++compared;
        }
      }
  CHECK(compared > 20);
}

TEST_CASE("pigeonhole prediction") {
  const auto z = RingDescriptor::integers();
  auto p = predict_singular_layer(NormalFormAuto::monomial({elem(z, 1), elem(z, -1), elem(z, 1), elem(z, -1)}));
  REQUIRE(p.has_value());
  CHECK(p->j == 1);
  CHECK(p->i == 3);
  CHECK(p->layer == 1);
  CHECK_FALSE(predict_singular_layer(NormalFormAuto::monomial({elem(z, 1), elem(z, -1)})).has_value());

  testing::Gen g(65);
  for (const auto& r : {RingDescriptor::integers(), RingDescriptor::quadratic(-1), RingDescriptor::quadratic(-3)})
    for (std::size_t n = 3; n <= 7; ++n)
      for (int t = 0; t < 20; ++t) {
        NormalFormAuto phi = g.monomial(r, n);
        auto pred = predict_singular_layer(phi);
        if (!pred) continue;
        CHECK(pred->j < pred->i);
        CHECK(pred->layer == n + pred->j - pred->i - 1);
        CHECK(abs_det_shift(testing::closed_form_layer(phi, pred->layer)) == 0);
      }
}

TEST_CASE("sweeps") {
  SUBCASE("Z, n = 5: every case is infinite and predicted") {
    auto rep = r_infinity_sweep(RingDescriptor::integers(), 5);
    CHECK(rep.threshold_met);
    CHECK(rep.unit_count == 2);
    CHECK(rep.cases.size() == 32);
    CHECK(rep.all_infinite());
    CHECK(rep.predictions_hold());
  }
  SUBCASE("Z[i], n = 3: finite values occur below the threshold") {
    auto rep = r_infinity_sweep(RingDescriptor::quadratic(-1), 3);
    CHECK_FALSE(rep.threshold_met);
    CHECK(rep.cases.size() == 2 * 2 * 16);
    CHECK(rep.finite_count() > 0);
    CHECK(rep.predictions_hold());
  }
  SUBCASE("worker count does not change the result") {
    SweepOptions one, three;
    three.jobs = 3;
    auto a = r_infinity_sweep(RingDescriptor::quadratic(-3), 4, one);
    auto b = r_infinity_sweep(RingDescriptor::quadratic(-3), 4, three);
    REQUIRE(a.cases.size() == b.cases.size());
    for (std::size_t i = 0; i < a.cases.size(); ++i) {
      CHECK(a.cases[i].phi.diagonal == b.cases[i].phi.diagonal);
      CHECK(a.cases[i].phi.flip == b.cases[i].phi.flip);
      CHECK(a.cases[i].result.value == b.cases[i].result.value);
    }
  }
  SUBCASE("order is (m, delta, D) with d_1 = 1") {
    auto rep = r_infinity_sweep(RingDescriptor::integers(), 3);
    REQUIRE(rep.cases.size() == 8);
    CHECK(rep.cases.front().phi.flip == 0);
    CHECK(rep.cases.back().phi.flip == 1);
    for (const auto& c : rep.cases) CHECK(c.phi.diagonal[0].is_one());
  }
  SUBCASE("explicit units for an infinite unit group") {
    const auto s2 = RingDescriptor::quadratic(2);
    SweepOptions opt;
    opt.units = units(s2, 4).units;
    opt.flips = {0};
    opt.deltas = std::vector<RingAutomorphism>{RingAutomorphism::Identity};
    auto rep = r_infinity_sweep(s2, 3, opt);
    CHECK(rep.cases.size() == 16);
    CHECK_FALSE(rep.threshold_met);
    CHECK_THROWS_AS(r_infinity_sweep(s2, 3), InvalidArgument);
  }
  SUBCASE("case cap") {
    SweepOptions opt;
    opt.max_cases = 10;
    CHECK_THROWS_AS(r_infinity_sweep(RingDescriptor::quadratic(-1), 4, opt), ResourceCapExceeded);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(r_infinity_sweep(RingDescriptor::rationals(), 3), InvalidArgument);
    CHECK_THROWS_AS(r_infinity_sweep(RingDescriptor::integers(), 1), InvalidArgument);
    SweepOptions opt;
    opt.units = std::vector<RingElem>{elem(RingDescriptor::integers(), 2)};
    CHECK_THROWS_AS(r_infinity_sweep(RingDescriptor::integers(), 3, opt), NotAUnit);
  }
}

TEST_CASE("spectrum") {
  // Entries in [-2, 2]: det M = -1 forces |tr M| <= 2.
  SpectrumOptions opt;
  opt.heisenberg_bound = 2;
  auto s = spectrum_sample(RingDescriptor::integers(), 3, opt);
  CHECK(s.has_infinity);
  CHECK(s.finite_values == std::vector<Int>{2, 4});
  CHECK(s.automorphisms_tested > 8);

  auto gi = spectrum_sample(RingDescriptor::quadratic(-1), 3);
  CHECK(std::find(gi.finite_values.begin(), gi.finite_values.end(), Int(16)) != gi.finite_values.end());

  SpectrumOptions bad;
  bad.heisenberg_bound = 1;
  CHECK_THROWS_AS(spectrum_sample(RingDescriptor::integers(), 4, bad), InvalidArgument);
}

TEST_CASE("central subgroup H") {
  const auto z = RingDescriptor::integers();
  SUBCASE("identity over Z, n = 3: H = 0") {
    auto h = central_subgroup_H(NormalFormAuto::identity(z, 3));
    CHECK(h.index.is_infinite());
  }
  SUBCASE("sigma over Z, n = 3 with D = I: H = Z") {
    auto h = central_subgroup_H(NormalFormAuto::monomial({elem(z, 1), elem(z, 1), elem(z, 1)}, 1));
    CHECK(h.index == ClassCount::finite(Int(1)));
  }
  SUBCASE("Z, n = 3 with lambda = id: H = Z for D = I, H = 0 for D = diag(1, -1, 1) without lambda") {
    NormalFormAuto phi = NormalFormAuto::identity(z, 3);
    phi.lambda = AdditiveMap::identity(z);
    CHECK(central_subgroup_H(phi).index == ClassCount::finite(Int(1)));
    auto w = central_conjugator(phi, elem(z, 1), elem(z, 0));
    REQUIRE(w.has_value());
    CHECK(w->Y.is_identity());

    NormalFormAuto neg = NormalFormAuto::monomial({elem(z, 1), elem(z, -1), elem(z, 1)});
    CHECK(central_subgroup_H(neg).index.is_infinite());
    CHECK_FALSE(central_conjugator(neg, elem(z, 3), elem(z, 0)).has_value());
    auto same = central_conjugator(neg, elem(z, 3), elem(z, 3));
    REQUIRE(same.has_value());
    CHECK((same->T * same->Y).is_identity());
  }
  SUBCASE("n = 3 agrees with the direct computation") {
    testing::Gen g(66);
    for (const auto& r : {RingDescriptor::integers(), RingDescriptor::quadratic(-1), RingDescriptor::quadratic(2)})
      for (int t = 0; t < 40; ++t) {
        NormalFormAuto phi = g.monomial(r, 3);
        if (g.coin()) phi.lambda = AdditiveMap::lattice(g.int_matrix(r.lattice_rank(), r.lattice_rank(), 3));
        auto h = central_subgroup_H(phi);
        auto exact = exact_h_n3(phi);
        std::vector<IntVector> ours;
        for (const auto& x : h.generators) ours.push_back(to_lattice(x));
        CHECK(h.index == subgroup_index(exact, r.lattice_rank()));
        for (const auto& v : exact) CHECK(in_span(ours, v));
        for (const auto& v : ours) CHECK(in_span(exact, v));
      }
  }
  SUBCASE("Q") {
    const auto q = RingDescriptor::rationals();
    auto one = [&](long x) { return RingElem(q, Rational(x)); };
    CHECK(central_subgroup_H(NormalFormAuto::identity(q, 4)).index.is_infinite());
    CHECK(central_subgroup_H(NormalFormAuto::monomial({one(1), one(2), one(4), one(3)})).index == ClassCount::finite(Int(1)));
    NormalFormAuto lam = NormalFormAuto::identity(q, 3);
    lam.lambda = AdditiveMap::scalar(Rational(2));
    CHECK(central_subgroup_H(lam).index == ClassCount::finite(Int(1)));
  }
  SUBCASE("errors") {
    NormalFormAuto inner = NormalFormAuto::identity(z, 3);
    inner.inner = UniTriMatrix::transvection(3, 1, 2, elem(z, 1));
    CHECK_THROWS_AS(central_subgroup_H(inner), InvalidArgument);
    CHECK_THROWS_AS(central_subgroup_H(NormalFormAuto::identity(z, 2)), InvalidArgument);
    CHECK_THROWS_AS(central_subgroup_H(NormalFormAuto::monomial(std::vector<RingElem>(4, elem(z, 1)), 1)),
                    InvalidArgument);
  }
}

TEST_CASE("central conjugators") {
  testing::Gen g(67);
  for (const auto& r : {RingDescriptor::integers(), RingDescriptor::quadratic(-1), RingDescriptor::quadratic(3)})
    for (std::size_t n = 3; n <= 5; ++n)
      for (int t = 0; t < 15; ++t) {
        NormalFormAuto phi = NormalFormAuto::monomial(g.diagonal(r, n), 0, g.delta(r));
        if (g.coin()) phi.lambda = AdditiveMap::lattice(g.int_matrix(r.lattice_rank(), r.lattice_rank(), 2));
        auto h = central_subgroup_H(phi);
        std::vector<IntVector> gens;
        for (const auto& x : h.generators) gens.push_back(to_lattice(x));
        RingElem a = g.elem(r, 6), b = g.elem(r, 6);
        auto w = central_conjugator(phi, a, b);
        CHECK(w.has_value() == in_span(gens, to_lattice(a - b)));
        for (const auto& x : h.generators) CHECK(central_conjugator(phi, b + x, b).has_value());
      }
  const auto z = RingDescriptor::integers();
  CHECK_THROWS_AS(central_conjugator(NormalFormAuto::monomial(std::vector<RingElem>(3, elem(z, 1)), 1), elem(z, 1), elem(z, 0)),
                  InvalidArgument);
}

TEST_CASE("engine errors") {
  const auto q = RingDescriptor::rationals();
  CHECK_THROWS_AS(reidemeister_number(NormalFormAuto::identity(q, 3)), InvalidArgument);
  const auto z = RingDescriptor::integers();
  CHECK_THROWS_AS(reidemeister_number(NormalFormAuto::monomial({elem(z, 1), elem(z, 3)})), NotAUnit);
}
