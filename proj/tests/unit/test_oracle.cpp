#include <doctest.h>

#include "gen.hpp"
#include "twistcalc/errors.hpp"
#include "twistcalc/oracle.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>

using namespace twistcalc;

namespace {

FiniteGroupTable symmetric3() {
  // Permutations of {0,1,2} in lexicographic order; composition (a b)(x) = a(b(x)).
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<Elem>> mul(6, std::vector<Elem>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      mul[a][b] = static_cast<Elem>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return FiniteGroupTable::from_multiplication(mul);
}

Elem encode(const UniTriMatrix& x, long m) {
  Elem code = 0;
  for (std::size_t i = 1; i < x.n(); ++i)
    for (std::size_t j = i + 1; j <= x.n(); ++j) {
      Int v = x.at(i, j).a().get_num() % m;
      if (v < 0) v += m;
      code = code * static_cast<Elem>(m) + static_cast<Elem>(v.get_ui());
    }
  return code;
}

}  // namespace

TEST_CASE("small groups") {
  auto c4 = FiniteGroupTable::cyclic(4);
  CHECK(twisted_classes(c4, FiniteAutomorphism::identity(c4)).count == 4);
  CHECK(twisted_classes(c4, inversion_map(c4)).count == 2);

  auto s3 = symmetric3();
  CHECK_FALSE(s3.is_abelian());
  CHECK(twisted_classes(s3, FiniteAutomorphism::identity(s3)).count == 3);
  CHECK_THROWS_AS(inversion_map(s3), InvalidArgument);
  CHECK_THROWS_AS(upper_central_series(s3), InvalidArgument);

  auto ab = FiniteGroupTable::abelian({2, 3});
  CHECK(ab.size() == 6);
  CHECK(ab.is_abelian());
  CHECK(ab.closure(ab.generators()).size() == 6);
}

TEST_CASE("unitriangular groups mod m") {
  const auto z = RingDescriptor::integers();
  auto [d4, id2] = ut_mod(3, 2, NormalFormAuto::identity(z, 3));
  CHECK(d4.size() == 8);
  CHECK(twisted_classes(d4, id2).count == 5);
  auto [h3, id3] = ut_mod(3, 3, NormalFormAuto::identity(z, 3));
  CHECK(h3.size() == 27);
  CHECK(twisted_classes(h3, id3).count == 11);
  auto series = upper_central_series(h3);
  REQUIRE(series.size() == 3);
  CHECK(series[1].size() == 3);

  auto one = [&](long x) { return RingElem(z, Rational(x)); };
  CHECK_THROWS_AS(ut_mod(3, 2, NormalFormAuto::monomial({one(1), one(2), one(1)})), InvalidArgument);
  CHECK_THROWS_AS(ut_mod(3, 3, NormalFormAuto::identity(RingDescriptor::quadratic(-1), 3)), InvalidArgument);
  CHECK_THROWS_AS(ut_mod(5, 3, NormalFormAuto::identity(z, 5)), ResourceCapExceeded);
}

TEST_CASE("ut_mod agrees with exact arithmetic reduced mod m") {
  testing::Gen g(71);
  const auto z = RingDescriptor::integers();
  for (long m : {2L, 3L})
    for (std::size_t n : {std::size_t{3}, std::size_t{4}}) {
      if (m == 3 && n == 4) continue;
      for (int t = 0; t < 6; ++t) {
        NormalFormAuto phi = NormalFormAuto::monomial(g.diagonal(z, n), static_cast<int>(g.range(0, 1)));
        if (g.coin()) phi.inner = g.unitri(z, n, 3);
        if (g.coin()) phi.lambda = AdditiveMap::lattice(IntMatrix{{g.integer(3)}});
        auto [grp, map] = ut_mod(n, static_cast<std::size_t>(m), phi);
        for (int s = 0; s < 30; ++s) {
          UniTriMatrix x = g.unitri(z, n, 9), y = g.unitri(z, n, 9);
          CHECK(grp.mul(encode(x, m), encode(y, m)) == encode(x * y, m));
          CHECK(map(encode(x, m)) == encode(apply(phi, x), m));
        }
      }
    }
}

TEST_CASE("class counting modes and relabeling") {
  testing::Gen g(72);
  const auto z = RingDescriptor::integers();
  for (int t = 0; t < 6; ++t) {
    NormalFormAuto phi = NormalFormAuto::monomial(g.diagonal(z, 3), static_cast<int>(g.range(0, 1)));
    phi.inner = g.unitri(z, 3, 2);
    auto [grp, map] = ut_mod(3, 3, phi);
    auto fast = twisted_classes(grp, map);
    auto slow = twisted_classes(grp, map, ClassMode::AllElements);
    CHECK(fast.count == slow.count);
    CHECK(fast.representatives == slow.representatives);
    CHECK(fast.class_of == slow.class_of);
    for (Elem zz = 0; zz < grp.size(); ++zz)
      for (Elem x = 0; x < grp.size(); x += 5)
        CHECK(fast.class_of[grp.mul(grp.mul(zz, x), grp.inv(map(zz)))] == fast.class_of[x]);

    std::vector<Elem> perm(grp.size());
    std::iota(perm.begin(), perm.end(), Elem{0});
    std::shuffle(perm.begin(), perm.end(), g.engine());
    std::vector<std::vector<Elem>> mul(grp.size(), std::vector<Elem>(grp.size()));
    std::vector<Elem> img(grp.size());
    for (Elem a = 0; a < grp.size(); ++a) {
      img[perm[a]] = perm[map(a)];
      for (Elem b = 0; b < grp.size(); ++b) mul[perm[a]][perm[b]] = perm[grp.mul(a, b)];
    }
    auto relabeled = FiniteGroupTable::from_multiplication(mul);
    CHECK(twisted_classes(relabeled, FiniteAutomorphism(relabeled, img)).count == fast.count);
  }
}

TEST_CASE("propositions") {
  const auto z = RingDescriptor::integers();
  SUBCASE("inner invariance") {
    testing::Gen g(73);
    NormalFormAuto phi = NormalFormAuto::monomial(g.diagonal(z, 3), 1);
    auto [grp, map] = ut_mod(3, 3, phi);
    PropositionOptions opt;
    opt.inn = true;
    opt.inner_samples = 20;
    auto rep = check_propositions(grp, map, opt);
    CHECK(rep.all_hold());
    REQUIRE(rep.results.size() == 1);
    CHECK(rep.results[0].name == "inn");
  }
  SUBCASE("central quotient bound is strict for the Heisenberg group mod 3") {
    auto [grp, map] = ut_mod(3, 3, NormalFormAuto::identity(z, 3));
    PropositionOptions opt;
    opt.central = upper_central_series(grp)[1];
    opt.nilin = true;
    auto rep = check_propositions(grp, map, opt);
    CHECK(rep.classes == 11);
    CHECK(rep.all_hold());
    REQUIRE(rep.results.size() == 2);
    CHECK(rep.results[0].name == "zf");
    CHECK(rep.results[0].strict);
    CHECK(rep.results[0].rhs == "27");
    CHECK(rep.results[1].name == "nilin");
  }
  SUBCASE("direct products multiply") {
    auto c6 = FiniteGroupTable::cyclic(6);
    PropositionOptions opt;
    opt.product = std::make_pair(std::vector<Elem>{0, 3}, std::vector<Elem>{0, 2, 4});
    auto rep = check_propositions(c6, inversion_map(c6), opt);
    CHECK(rep.all_hold());
    CHECK(rep.results[0].lhs == rep.results[0].rhs);

    auto [h3, id3] = ut_mod(3, 3, NormalFormAuto::identity(z, 3));
    auto c2 = FiniteGroupTable::cyclic(2);
    auto prod = direct_product(h3, c2);
    auto phi = direct_product(prod, id3, FiniteAutomorphism::identity(c2));
    CHECK(twisted_classes(prod, phi).count == 22);
    std::vector<Elem> left, right{0, 1};
    for (Elem a = 0; a < h3.size(); ++a) left.push_back(a * 2);
    opt.product = std::make_pair(left, right);
    CHECK(check_propositions(prod, phi, opt).all_hold());
    opt.product = std::make_pair(left, std::vector<Elem>{0});
    CHECK_THROWS_AS(check_propositions(prod, phi, opt), InvalidArgument);
  }
  SUBCASE("abelian index formula") {
    testing::Gen g(74);
    for (int t = 0; t < 10; ++t) {
      IntMatrix u = g.unimodular(2, 5);
      auto [grp, map] = linear_abelian(5, u);
      PropositionOptions opt;
      opt.ind = true;
      opt.nilin = true;
      CHECK(check_propositions(grp, map, opt).all_hold());
    }
    auto s3 = symmetric3();
    PropositionOptions opt;
    opt.ind = true;
    CHECK_THROWS_AS(check_propositions(s3, FiniteAutomorphism::identity(s3), opt), InvalidArgument);
  }
  SUBCASE("non-central subgroup is rejected") {
    auto s3 = symmetric3();
    PropositionOptions opt;
    opt.central = s3.closure({1});
    CHECK_THROWS_AS(check_propositions(s3, FiniteAutomorphism::identity(s3), opt), InvalidArgument);
  }
}

TEST_CASE("sections") {
  auto c4 = FiniteGroupTable::cyclic(4);
  std::vector<Elem> all{0, 1, 2, 3}, half{0, 2};
  Section sec = section(c4, all, half);
  CHECK(sec.table.size() == 2);
  auto inv = induced_on(c4, inversion_map(c4), sec, all, half);
  CHECK(twisted_classes(sec.table, inv).count == 2);
  CHECK_THROWS_AS(section(c4, all, {0, 1}), InvalidArgument);
}

TEST_CASE("table validation and JSON") {
  CHECK_THROWS_AS(FiniteGroupTable::from_multiplication({{0, 1}, {1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(FiniteGroupTable::from_multiplication({{0, 1}}), InvalidArgument);
  // A Latin square with identity 0 that is not associative.
  CHECK_THROWS_AS(FiniteGroupTable::from_multiplication(
                      {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}),
                  InvalidArgument);
  CHECK_THROWS_AS(FiniteGroupTable::from_multiplication({{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}}, {2}),
                  InvalidArgument);

  auto g = FiniteGroupTable::from_json(nlohmann::json::parse(R"({"size": 2, "mul": [[0, 1], [1, 0]]})"));
  CHECK(g.size() == 2);
  CHECK_THROWS_AS(FiniteGroupTable::from_json(nlohmann::json::parse(R"({"size": 3, "mul": [[0, 1], [1, 0]]})")),
                  ParseError);
  CHECK_THROWS_AS(FiniteGroupTable::from_json(nlohmann::json::parse(R"({"size": 2})")), ParseError);
  CHECK_THROWS_AS(FiniteGroupTable::from_json(nlohmann::json::parse(R"({"mul": [[0, -1], [1, 0]]})")), ParseError);

  auto c3 = FiniteGroupTable::cyclic(3);
  CHECK_THROWS_AS(FiniteAutomorphism(c3, {0, 1, 1}), InvalidArgument);
  CHECK_THROWS_AS(FiniteAutomorphism(c3, {1, 2, 0}), InvalidArgument);
  CHECK_THROWS_AS(linear_abelian(3, IntMatrix{{3}}), InvalidArgument);
}
