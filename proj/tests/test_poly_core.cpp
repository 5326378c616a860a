#include <doctest.h>

#include <set>

#include "polydyn/algebra.hpp"
#include "polydyn/error.hpp"
#include "polydyn/hom.hpp"
#include "polydyn/json_io.hpp"
#include "polydyn/label.hpp"
#include "polydyn/lens.hpp"
#include "polydyn/poly.hpp"
#include "support.hpp"

using namespace polydyn;
using namespace polydyn::testing;

namespace {

FinPoly px() { return poly_from_cardinalities({2, 1, 1, 1, 0, 0}); }

std::vector<Lens> all_lenses(const FinPoly& p, const FinPoly& q) { return hom_enumerate(p, q); }

}  // namespace

TEST_CASE("finite sets and functions") {
  FinSet a({"x", "y", "z"});
  CHECK(a.size() == 3);
  CHECK(a.index_of("y") == 1);
  CHECK_THROWS_AS(a.index_of("w"), LabelError);
  CHECK_THROWS_AS(FinSet({"x", "x"}), LabelError);
  CHECK(FinSet({"z", "x", "y"}) == a);
  CHECK_FALSE(FinSet({"z", "x", "y"}).same_order(a));

  FinSet b = FinSet::range(2);
  CHECK(set_product(a, b).size() == 6);
  CHECK(set_product(a, b)[1] == "(x,1)");
  CHECK(set_sum({a, b}).size() == 5);
  CHECK(set_sum({a, b})[3] == "in1(0)");

  SetFn f(a, b, {0, 1, 1});
  CHECK(f.surjective());
  CHECK_FALSE(f.injective());
  CHECK(f("z") == "1");
  CHECK(compose(SetFn::identity(b), f) == f);
  CHECK_THROWS_AS(SetFn(a, b, {0, 2, 1}), ShapeError);

  std::size_t n = 0;
  for_each_function(3, 2, [&](const std::vector<std::size_t>&) { return ++n, true; });
  CHECK(n == 8);
  n = 0;
  for_each_function(0, 0, [&](const std::vector<std::size_t>&) { return ++n, true; });
  CHECK(n == 1);
}

TEST_CASE("set limits and colimits") {
  FinSet one = FinSet::singleton(), two = FinSet::range(2);
  SetFn pick0(one, two, {0}), pick1(one, two, {1});
  Coequalizer co = coequalizer_set(pick0, pick1);
  CHECK(co.quotient.size() == 1);
  CHECK(co.projection.surjective());

  Coequalizer same = coequalizer_set(pick0, pick0);
  CHECK(same.quotient.size() == 2);

  // Pullback oracle: count matching pairs directly.
  FinSet a = FinSet::range(3), b = FinSet::range(4);
  SetFn f(a, two, {0, 1, 1}), g(b, two, {1, 1, 0, 1});
  Pullback pb = pullback_set(f, g);
  std::size_t pairs = 0;
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 4; ++y) pairs += f(x) == g(y);
  CHECK(pb.apex.size() == pairs);
  for (std::size_t k = 0; k < pb.apex.size(); ++k) CHECK(f(pb.left(k)) == g(pb.right(k)));
}

TEST_CASE("labels") {
  for (std::string s : {"a", "(a,b)", "(a,(b,c))", "in1((x,*))", "{0:a,1:in0(b)}", "()", "(t0)"})
    CHECK(parse_label(s).render() == s);
  Label l = parse_label("({e:in0(d)},k)");
  CHECK(l.size() == 2);
  CHECK(l[0].at("e").tag == 0);
  CHECK(l[0].at("e").payload().render() == "d");
  CHECK(tuple_label({"a", "b"}) == "(a,b)");
  CHECK(inj_label(2, "x") == "in2(x)");
}

TEST_CASE("polynomials") {
  SUBCASE("monomial interface") {
    FinPoly m = monomial(FinSet({"b0", "b1", "b2"}), FinSet({"a0", "a1"}));
    CHECK(m.size() == 3);
    for (const auto& pos : m) CHECK(pos.dirs == FinSet({"a0", "a1"}));
    CHECK(is_monomial(m));
    CHECK_FALSE(is_monomial(px()));
  }
  SUBCASE("evaluation") {
    CHECK(eval(representable(FinSet::range(3)), FinSet({"0", "1"})).size() == 8);
    CHECK(eval(px(), FinSet::singleton()).size() == 6);
    CHECK(eval(px(), FinSet()).size() == 2);
    for (const auto& p : small_polys(3, 3))
      for (std::size_t n = 0; n <= 3; ++n) {
        std::size_t expected = 0;
        for (std::size_t i = 0; i < p.size(); ++i) expected += ipow(n, p.dirs(i).size());
        CHECK(eval(p, FinSet::range(n)).size() == expected);
        CHECK(eval_count(p, n) == expected);
      }
  }
  SUBCASE("canonical form") {
    FinPoly prod = product(poly_from_cardinalities({1, 0}), poly_from_cardinalities({1, 0, 0}));
    CHECK(canonical_form(prod) == canonical_form(px()));
    CHECK(isomorphic(prod, px()));
    CHECK(to_algebraic(prod) == "y^2 + 3y + 2");
    CHECK(to_algebraic(zero()) == "0");
    CHECK(to_algebraic(y()) == "y");
    CHECK_FALSE(isomorphic(px(), poly_from_cardinalities({2, 1, 1, 0, 0, 0})));
  }
  SUBCASE("duplicate labels are rejected") {
    CHECK_THROWS_AS(make_poly({{"a", {"x"}}, {"a", {}}}), LabelError);
    CHECK_THROWS_AS(make_poly({{"a", {"x", "x"}}}), LabelError);
  }
}

TEST_CASE("lens construction and category laws") {
  FinPoly p = px(), q = poly_from_cardinalities({5, 0});
  CHECK_THROWS_AS(Lens(p, q, {0}, {}), ShapeError);
  CHECK_THROWS_AS(Lens(y(), y(), {1}, {{0}}), ShapeError);
  CHECK_THROWS_AS(Lens(y(), y(), {0}, {{1}}), ShapeError);
  CHECK_THROWS_AS(Lens(y(), y(), {0}, {{0, 0}}), ShapeError);

  std::vector<FinPoly> polys = small_polys(3, 1);
  for (const auto& a : polys)
    for (const auto& b : polys) {
      Lens ia = lens_id(a), ib = lens_id(b);
      for (const auto& f : all_lenses(a, b)) {
        CHECK(lens_compose(f, ia) == f);
        CHECK(lens_compose(ib, f) == f);
      }
    }
  std::size_t triples = 0;
  for (const auto& a : polys)
    for (const auto& b : polys)
      for (const auto& c : polys)
        for (const auto& d : polys) {
          auto fs = all_lenses(a, b), gs = all_lenses(b, c), hs = all_lenses(c, d);
          if (fs.size() * gs.size() * hs.size() > 2000) continue;
          for (const auto& f : fs)
            for (const auto& g : gs)
              for (const auto& h : hs) {
                ++triples;
                if (!(lens_compose(h, lens_compose(g, f)) == lens_compose(lens_compose(h, g), f))) FAIL("assoc");
              }
        }
  CHECK(triples > 10000);
}

TEST_CASE("hom-sets") {
  FinPoly q = poly_from_cardinalities({5, 0});
  CHECK(hom_count(px(), q) == 264);
  CHECK(hom_enumerate(px(), q).size() == 264);
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b)
      CHECK(hom_count(representable(FinSet::range(a)), representable(FinSet::range(b))) == ipow(a, b));
  for (const auto& p : small_polys(2, 2))
    for (const auto& r : small_polys(2, 2)) {
      CHECK(hom_count(p, r) == hom_oracle(p, r));
      auto all = hom_enumerate(p, r);
      CHECK(all.size() == hom_oracle(p, r));
      std::set<std::string> distinct;
      for (const auto& f : all) distinct.insert(dump(lens_to_json(f)));
      CHECK(distinct.size() == all.size());
    }
  CHECK_THROWS_AS(hom_enumerate(poly_from_cardinalities({3, 3, 3}), poly_from_cardinalities({3, 3}), 100), SizeError);

  std::mt19937_64 rng(7);
  CHECK_FALSE(random_lens(y(), zero(), rng).has_value());
  for (int i = 0; i < 50; ++i) {
    auto f = random_lens(px(), q, rng);
    REQUIRE(f.has_value());
    CHECK(f->dom() == px());
  }
}

TEST_CASE("epimorphisms and monomorphisms") {
  std::vector<FinPoly> polys = small_polys(2, 2);
  std::vector<FinPoly> tests = small_polys(2, 3);
  for (const auto& p : polys)
    for (const auto& q : polys)
      for (const auto& f : hom_enumerate(p, q)) {
        bool epi = right_cancellable(f, tests);
        CHECK(is_epi(f) == epi);
        CHECK(is_epi_by_cancellation(f) == epi);
        bool mono = left_cancellable(f, tests);
        CHECK(is_mono(f) == mono);
        bool structural = f.on_positions().injective();
        for (std::size_t i = 0; i < p.size(); ++i) structural = structural && f.on_directions(i).surjective();
        CHECK(mono == structural);
      }
  for (const auto& p : polys) CHECK(is_epi(from_initial(p)) == p.empty());
}

TEST_CASE("vertical, cartesian and invertible lenses") {
  for (const auto& p : small_polys(2, 2))
    for (const auto& q : small_polys(2, 2))
      for (const auto& f : hom_enumerate(p, q)) {
        if (is_invertible(f)) {
          Lens g = inverse(f);
          CHECK(lens_compose(g, f) == lens_id(p));
          CHECK(lens_compose(f, g) == lens_id(q));
        } else {
          CHECK_THROWS_AS(inverse(f), ShapeError);
        }
      }
  CHECK(is_vertical(lens_id(px())));
  CHECK(is_cartesian(lens_id(px())));
}

TEST_CASE("json round trip") {
  for (const auto& p : small_polys(2, 2)) {
    CHECK(poly_from_json(poly_to_json(p)) == p);
    CHECK(poly_from_json(poly_to_json(p)).same_layout(p));
    for (const auto& f : hom_enumerate(p, px())) CHECK(lens_from_json(lens_to_json(f)) == f);
  }
  nlohmann::json bad = poly_to_json(px());
  bad["positions"][0]["dirs"] = "nope";
  CHECK_THROWS_AS(poly_from_json(bad), Error);
  CHECK(dump(poly_to_json(px())).back() == '\n');
}
