#include <doctest.h>

#include "polydyn/algebra.hpp"
#include "polydyn/category.hpp"
#include "polydyn/comonoid.hpp"
#include "polydyn/dynamics.hpp"
#include "polydyn/error.hpp"
#include "polydyn/hom.hpp"
#include "support.hpp"

using namespace polydyn;
using namespace polydyn::testing;

namespace {

const std::vector<FinCat>& small_catalog() {
  static const std::vector<FinCat> cats = category_catalog(3, 3);
  return cats;
}

bool same_structure(const Comonoid& a, const Comonoid& b) {
  return a.carrier == b.carrier && a.counit == b.counit && a.root == b.root && a.next == b.next && a.back == b.back;
}

}  // namespace

TEST_CASE("catalog of small categories") {
  // One-object categories are monoids: 1, 2, 7, 35, 228 of orders 1 to 5 up to isomorphism.
  std::vector<std::size_t> monoids(6, 0);
  for (const auto& k : category_catalog(1, 5)) ++monoids[k.num_morphisms()];
  CHECK(monoids == std::vector<std::size_t>{0, 1, 2, 7, 35, 228});
  CHECK(category_catalog(3, 3).size() == 15);
  CHECK(category_catalog(3, 4).size() == 69);
  for (const auto& k : category_catalog(3, 4)) CHECK(check_category(k).ok());
  const auto& cats = category_catalog(3, 4);
  for (std::size_t i = 0; i < cats.size(); ++i)
    for (std::size_t j = i + 1; j < cats.size(); ++j) CHECK_FALSE(isomorphic(cats[i], cats[j]));
}

TEST_CASE("category checker finds violations") {
  FinCat z2 = monoid_category({"e", "g"}, {{0, 1}, {1, 0}});
  CHECK(check_category(z2).ok());
  CHECK(check_category(monoid_category({"e", "g"}, {{0, 1}, {1, 1}})).ok());
  FinCat broken = monoid_category({"e", "g", "h"}, {{0, 1, 2}, {1, 2, 0}, {2, 2, 0}});
  CHECK_FALSE(check_category(broken).ok());
  CHECK(category_from_json(category_to_json(z2)).num_morphisms() == 2);
  CHECK(isomorphic(category_from_json(category_to_json(z2)), z2));
}

TEST_CASE("comonoids from categories") {
  SUBCASE("cyclic group of order two") {
    Comonoid c = category_to_comonoid(monoid_category({"e", "g"}, {{0, 1}, {1, 0}}));
    CHECK(c.carrier.size() == 1);
    CHECK(c.carrier.dirs(0).size() == 2);
    CHECK(check_comonoid_laws(c).ok());
  }
  SUBCASE("contractible groupoids") {
    for (std::size_t n = 0; n <= 3; ++n) {
      Comonoid c = contractible(FinSet::range(n));
      CHECK(check_comonoid_laws(c).ok());
      FinCat k = comonoid_to_category(c);
      CHECK(k.num_morphisms() == n * n);
      CHECK(isomorphic(k, contractible_category(FinSet::range(n))));
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
          std::size_t hom = 0;
          for (const auto& m : k.morphisms()) hom += m.dom == x && m.cod == z;
          CHECK(hom == 1);
        }
    }
  }
  SUBCASE("round trips over the catalog") {
    for (const auto& k : category_catalog(3, 5)) {
      Comonoid c = category_to_comonoid(k);
      CHECK(check_comonoid_laws(c).ok());
      CHECK(isomorphic(comonoid_to_category(c), k));
      CHECK(same_structure(category_to_comonoid(comonoid_to_category(c)), c));
      CHECK(same_structure(comonoid_from_json(comonoid_to_json(c)), c));
    }
  }
  SUBCASE("broken structure is rejected") {
    Comonoid c = contractible(FinSet::range(2));
    c.next[0][0] = 1 - c.next[0][0];
    CHECK_FALSE(check_comonoid_laws(c).ok());
    CHECK_THROWS_AS(comonoid_to_category(c), ShapeError);
  }
}

TEST_CASE("comonoid laws as lens equations") {
  for (const auto& k : small_catalog()) {
    Comonoid c = category_to_comonoid(k);
    const FinPoly& p = c.carrier;
    Lens eps = c.counit_lens(), delta = c.comult_lens();
    CHECK(eps.cod() == y());
    CHECK(delta.cod() == compose(p, p));
    Lens id = lens_id(p);
    CHECK(lens_compose(compose_left_unit(p).forward, lens_compose(compose_lens(eps, id), delta)) == id);
    CHECK(lens_compose(compose_right_unit(p).forward, lens_compose(compose_lens(id, eps), delta)) == id);
    Lens left = lens_compose(compose_assoc(p, p, p).forward, lens_compose(compose_lens(delta, id), delta));
    Lens right = lens_compose(compose_lens(id, delta), delta);
    CHECK(left == right);
    CHECK(same_structure(Comonoid::from_lenses(eps, delta), c));
  }
}

TEST_CASE("comonoid morphisms are cofunctors") {
  const auto& cats = small_catalog();
  std::size_t morphisms = 0;
  for (const auto& a : cats)
    for (const auto& b : cats) {
      Comonoid c = category_to_comonoid(a), d = category_to_comonoid(b);
      for_each_lens(c.carrier, d.carrier, [&](const Lens& f) {
        bool mor = is_comonoid_morphism(c, d, f);
        Cofunctor g = lens_to_cofunctor(c, d, f);
        CHECK(mor == check_cofunctor(g).ok());
        CHECK(cofunctor_to_lens(c, d, g) == f);
        morphisms += mor;
        return true;
      });
    }
  CHECK(morphisms > 0);
  for (const auto& k : cats) CHECK(check_cofunctor(identity_cofunctor(k)).ok());
}

TEST_CASE("cofunctor mutations") {
  const auto& cats = small_catalog();
  std::size_t mutants = 0, rejected = 0;
  for (const auto& a : cats)
    for (const auto& b : cats) {
      Comonoid c = category_to_comonoid(a), d = category_to_comonoid(b);
      for_each_lens(c.carrier, d.carrier, [&](const Lens& f) {
        if (!is_comonoid_morphism(c, d, f)) return true;
        Cofunctor g = lens_to_cofunctor(c, d, f);
        for (std::size_t x = 0; x < g.pull.size(); ++x)
          for (std::size_t slot = 0; slot < g.pull[x].size(); ++slot)
            for (std::size_t m : g.src.out(x)) {
              if (m == g.pull[x][slot]) continue;
              Cofunctor bad = g;
              bad.pull[x][slot] = m;
              ++mutants;
              bool ok = check_cofunctor(bad).ok();
              std::size_t target = g.tgt.out(g.on_obj[x])[slot];
              if (target == g.tgt.identity(g.on_obj[x])) CHECK_FALSE(ok);
              if (g.on_obj[g.src.morphism(m).cod] != g.tgt.morphism(target).cod) CHECK_FALSE(ok);
              CHECK(ok == is_comonoid_morphism(c, d, cofunctor_to_lens(c, d, bad)));
              rejected += !ok;
            }
        return true;
      });
    }
  CHECK(mutants > 0);
  CHECK(rejected > 0);
}

TEST_CASE("sums and tensors of comonoids") {
  Comonoid t = comonoid_tensor(contractible(FinSet::range(2)), contractible(FinSet::range(3)));
  CHECK(check_comonoid_laws(t).ok());
  CHECK(isomorphic(comonoid_to_category(t), contractible_category(FinSet::range(6))));
  for (const auto& a : small_catalog())
    for (const auto& b : small_catalog()) {
      Comonoid c = category_to_comonoid(a), d = category_to_comonoid(b);
      Comonoid s = comonoid_sum(c, d), x = comonoid_tensor(c, d);
      CHECK(check_comonoid_laws(s).ok());
      CHECK(check_comonoid_laws(x).ok());
      FinCat ks = comonoid_to_category(s), kx = comonoid_to_category(x);
      CHECK(ks.num_objects() == a.num_objects() + b.num_objects());
      CHECK(ks.num_morphisms() == a.num_morphisms() + b.num_morphisms());
      CHECK(kx.num_objects() == a.num_objects() * b.num_objects());
      CHECK(kx.num_morphisms() == a.num_morphisms() * b.num_morphisms());
    }
  CHECK(check_comonoid_laws(trivial_comonoid()).ok());
  CHECK(check_comonoid_laws(comonoid_tensor_all({})).ok());
  CHECK(comonoid_tensor_all({}).carrier.size() == 1);
}

TEST_CASE("cofree truncations") {
  auto sizes = [](const FinPoly& p, std::size_t depth) {
    std::vector<std::size_t> out;
    for (const auto& s : cofree_truncation(p, depth).stages) out.push_back(s.size());
    return out;
  };
  CHECK(sizes(poly_from_cardinalities({1, 1}), 4) == std::vector<std::size_t>{1, 2, 4, 8, 16});
  CHECK(sizes(poly_from_cardinalities({1, 0}), 4) == std::vector<std::size_t>{1, 2, 3, 4, 5});
  CHECK(sizes(poly_from_cardinalities({2, 1, 1, 1, 0, 0}), 2) == std::vector<std::size_t>{1, 6, 56});
  for (const auto& p : small_polys(2, 2)) {
    CofreeTruncation t = cofree_truncation(p, 3);
    REQUIRE(t.projections.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(t.stages[k + 1].size() == eval_count(p, t.stages[k].size()));
      CHECK(t.projections[k].dom() == t.stages[k + 1]);
      CHECK(t.projections[k].cod() == t.stages[k]);
    }
  }
}

TEST_CASE("n-step behavior") {
  FinSet a({"a"}), b({"b0", "b1"});
  SUBCASE("three states separating only at depth two") {
    // s0 and s1 both read b0; s0 stays put while s1 moves to s2, which reads b1.
    FinSet s({"s0", "s1", "s2"});
    MooreMachine m = MooreMachine::make(s, a, b, {0, 0, 1}, {{0, 2, 2}});
    Comonoid c = contractible(s);
    Lens f = moore_to_lens(m);
    SetFn one = nstep_behavior(c, f, 1), two = nstep_behavior(c, f, 2);
    CHECK(one(0) == one(1));
    CHECK(two(0) != two(1));
    CHECK(two.cod().size() == compose_power(f.cod(), 2).size());
    CHECK(nstep_labels(c, f, 0) == std::vector<std::string>(3, "*"));
  }
  SUBCASE("two states with one readout never separate") {
    FinSet s({"s0", "s1"});
    for_each_function(2, 2, [&](const std::vector<std::size_t>& u) {
      MooreMachine m = MooreMachine::make(s, a, b, {0, 0}, {u});
      for (std::size_t n = 0; n <= 4; ++n) {
        SetFn beh = nstep_behavior(contractible(s), moore_to_lens(m), n);
        CHECK(beh(0) == beh(1));
      }
      return true;
    });
  }
}
