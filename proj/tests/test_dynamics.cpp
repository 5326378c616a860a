#include <doctest.h>

#include "polydyn/algebra.hpp"
#include "polydyn/category.hpp"
#include "polydyn/comonoid.hpp"
#include "polydyn/dynamics.hpp"
#include "polydyn/error.hpp"
#include "polydyn/hom.hpp"
#include "polydyn/label.hpp"

using namespace polydyn;

namespace {

MooreMachine toggle() {
  return MooreMachine::make(FinSet({"t0", "t1"}), FinSet({"go"}), FinSet({"off", "on"}), {0, 1}, {{1, 0}});
}

std::vector<std::string> positions(const Trace& t) {
  std::vector<std::string> out;
  for (const auto& s : t.steps) out.push_back(s.position);
  out.push_back(t.final_position);
  return out;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("Moore machines and lenses") {
  for (std::size_t ns = 1; ns <= 2; ++ns)
    for (std::size_t na = 1; na <= 2; ++na)
      for (std::size_t nb = 1; nb <= 2; ++nb) {
        FinSet s = FinSet::range(ns, "S"), a = FinSet::range(na, "A"), b = FinSet::range(nb, "B");
        std::size_t machines = 0;
        for_each_function(ns, nb, [&](const std::vector<std::size_t>& r) {
          for_each_function(na * ns, ns, [&](const std::vector<std::size_t>& u) {
            std::vector<std::vector<std::size_t>> table(na, std::vector<std::size_t>(ns));
            for (std::size_t k = 0; k < na * ns; ++k) table[k / ns][k % ns] = u[k];
            MooreMachine m = MooreMachine::make(s, a, b, r, table);
            ++machines;
            Lens f = moore_to_lens(m);
            CHECK(f.dom() == monomial(s, s));
            CHECK(f.cod() == monomial(b, a));
            CHECK(lens_to_moore(f, s[m.initial]) == m);
            return true;
          });
          return true;
        });
        CHECK(machines == ipow(nb, ns) * ipow(ns, na * ns));
        CHECK(hom_count(monomial(s, s), monomial(b, a)) == machines);
      }
  CHECK_THROWS_AS(lens_to_moore(lens_id(sum(y(), one()))), ShapeError);
}

TEST_CASE("running machines") {
  SUBCASE("identity machine echoes its input one step late") {
    FinSet s({"0", "1"});
    MooreMachine echo = MooreMachine::make(s, s, s, {0, 1}, {{0, 0}, {1, 1}});
    std::vector<std::string> in{"1", "1", "0", "1", "0", "0"};
    Trace t = run_moore(echo, in);
    REQUIRE(t.steps.size() == in.size());
    CHECK(t.steps[0].position == "0");
    for (std::size_t k = 1; k < in.size(); ++k) CHECK(t.steps[k].position == in[k - 1]);
    CHECK(t.final_position == in.back());
  }
  SUBCASE("toggle alternates") {
    Trace t = run_moore(toggle(), std::vector<std::string>(5, "go"));
    CHECK(positions(t) == std::vector<std::string>{"off", "on", "off", "on", "off", "on"});
    CHECK(run_closed(moore_system(toggle()), "t0", 5).final_state == "t1");
  }
  SUBCASE("systems agree with the machine stepwise") {
    MooreMachine m = MooreMachine::make(FinSet({"s0", "s1", "s2"}), FinSet({"x", "z"}), FinSet({"b0", "b1"}),
                                        {0, 1, 1}, {{1, 2, 0}, {0, 0, 2}});
    MDDS sys = moore_system(m);
    std::vector<std::string> in{"x", "z", "x", "x", "z", "z", "x"};
    Trace a = run_moore(m, in), b = run_open(sys, "s0", in);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
      CHECK(a.steps[k].state == b.steps[k].state);
      CHECK(a.steps[k].position == b.steps[k].position);
      Step st = step(sys, a.steps[k].state, in[k]);
      CHECK(st.position == a.steps[k].position);
      CHECK(st.next_state == (k + 1 < a.steps.size() ? a.steps[k + 1].state : a.final_state));
    }
    CHECK(a.final_state == b.final_state);
    CHECK(trace_valid(sys, b));
    Trace forged = b;
    forged.steps[2].state = forged.steps[2].state == "s0" ? "s1" : "s0";
    CHECK_FALSE(trace_valid(sys, forged));
    CHECK_THROWS_AS(step(sys, "s0", "nope"), Error);
  }
  SUBCASE("trace serialization") {
    Trace t = run_moore(toggle(), {"go", "go"});
    CHECK(trace_to_csv(t) == "step,state,position,direction\n0,t0,off,go\n1,t1,on,go\n2,t0,off,\n");
    nlohmann::json j = trace_to_json(t);
    CHECK(j["final"]["state"] == "t0");
    CHECK(j["history"] == t.history);
    CHECK(j["steps"].size() == 2);
  }
}

TEST_CASE("histories") {
  SUBCASE("contractible states remember only the endpoints") {
    MDDS sys = moore_system(toggle());
    FinCat k = comonoid_to_category(sys.state);
    for (std::size_t n = 0; n <= 4; ++n) {
      Trace t = run_closed(sys, "t0", n);
      std::size_t from = k.objects().index_of("t0"), to = k.objects().index_of(t.final_state);
      std::size_t found = 0;
      for (const auto& m : k.morphisms())
        if (m.dom == from && m.cod == to) {
          ++found;
          CHECK(t.history == m.label);
        }
      CHECK(found == 1);
    }
  }
  SUBCASE("parallel arrows give distinct histories") {
    using M = FinCat::Morphism;
    const std::size_t none = FinCat::kNone;
    // Morphisms idX, idY, a, b with a, b : X -> Y.
    std::vector<std::size_t> composed(16, none);  // composed[g * 4 + f] = g o f
    composed[0 * 4 + 0] = 0;
    composed[1 * 4 + 1] = 1;
    composed[1 * 4 + 2] = 2;
    composed[1 * 4 + 3] = 3;
    composed[2 * 4 + 0] = 2;
    composed[3 * 4 + 0] = 3;
    FinCat k(FinSet({"X", "Y"}), {M{"idX", 0, 0}, M{"idY", 1, 1}, M{"a", 0, 1}, M{"b", 0, 1}}, {0, 1}, composed);
    REQUIRE(check_category(k).ok());
    Comonoid c = category_to_comonoid(k);
    MDDS sys(c, lens_id(c.carrier));
    std::string ha = trace_history(sys, "X", {"a"}), hb = trace_history(sys, "X", {"b"});
    CHECK(ha == "a");
    CHECK(hb == "b");
    CHECK(trace_history(sys, "X", {}) == "idX");
    CHECK(trace_history(sys, "X", {"a", "idY"}) == "a");
  }
}

TEST_CASE("unrolling") {
  MooreMachine flip = MooreMachine::make(FinSet({"t0", "t1"}), FinSet({"x", "z"}), FinSet({"off", "on"}), {0, 1},
                                         {{1, 0}, {1, 0}});
  StrategyTree t = unroll(moore_system(flip), "t0", 3);
  CHECK(t.depth == 3);
  CHECK(t.position == "off");
  REQUIRE(t.branches.size() == 2);
  for (const auto& [dir, child] : t.branches) {
    CHECK(child.position == "on");
    REQUIRE(child.branches.size() == 2);
    for (const auto& [d2, grand] : child.branches) {
      CHECK(grand.position == "off");
      CHECK(grand.branches.empty());
    }
  }
  FinPoly p3 = compose_power(monomial(FinSet({"off", "on"}), FinSet({"x", "z"})), 3);
  CHECK(p3.find(t.label()).has_value());
  CHECK(t.to_dot().find("digraph") != std::string::npos);
  CHECK(t.to_json()["position"] == "off");
  CHECK(unroll(moore_system(flip), "t0", 0).label() == "*");
}

TEST_CASE("overlaying two four-state systems") {
  FinSet states({"tl", "tr", "bl", "br"});
  MooreMachine rb = MooreMachine::make(states, FinSet({"r", "b"}), FinSet({"3.14", "0", "1.41", "2.72"}),
                                       {0, 1, 2, 3}, {{1, 0, 0, 2}, {0, 3, 3, 3}});
  MooreMachine g = MooreMachine::make(states, FinSet({"g"}), FinSet({"2", "4", "8", "16"}), {0, 1, 2, 3},
                                      {{2, 0, 2, 0}});
  Lens both = overlay(moore_to_lens(rb), moore_to_lens(g));
  FinPoly cod = product(monomial(rb.outputs, rb.inputs), monomial(g.outputs, g.inputs));
  CHECK(both.cod() == cod);
  CHECK(cod.size() == 16);
  for (const auto& pos : cod) CHECK(pos.dirs.size() == 3);
  Lens::PosMap pos{{"tl", "(3.14,2)"}, {"tr", "(0,4)"}, {"bl", "(1.41,8)"}, {"br", "(2.72,16)"}};
  Lens::DirMap dir{{"tl", {{"in0(r)", "tr"}, {"in0(b)", "tl"}, {"in1(g)", "bl"}}},
                   {"tr", {{"in0(r)", "tl"}, {"in0(b)", "br"}, {"in1(g)", "tl"}}},
                   {"bl", {{"in0(r)", "tl"}, {"in0(b)", "br"}, {"in1(g)", "bl"}}},
                   {"br", {{"in0(r)", "bl"}, {"in0(b)", "br"}, {"in1(g)", "tl"}}}};
  CHECK(both == Lens::from_labels(monomial(states, states), cod, pos, dir));
  CHECK(lens_compose(proj_left(monomial(rb.outputs, rb.inputs), monomial(g.outputs, g.inputs)),
                     both) == moore_to_lens(rb));
}

TEST_CASE("juxtaposition and wiring reproduce the coupled update") {
  // Controller B y^C copies the plant output; plant C y^(A x B) flips on a xor b.
  FinSet a({"a0", "a1"}), b({"b0", "b1"}), c({"c0", "c1"});
  MooreMachine ctrl = MooreMachine::make(FinSet({"k0", "k1"}), c, b, {0, 1}, {{0, 0}, {1, 1}});
  FinSet ab = set_product(a, b);
  std::vector<std::vector<std::size_t>> plant_table(4, std::vector<std::size_t>(2));
  for (std::size_t ai = 0; ai < 2; ++ai)
    for (std::size_t bi = 0; bi < 2; ++bi)
      for (std::size_t p = 0; p < 2; ++p) plant_table[ai * 2 + bi][p] = p ^ ai ^ bi;
  MooreMachine plant = MooreMachine::make(FinSet({"p0", "p1"}), ab, c, {0, 1}, plant_table);
  MDDS inner = juxtapose(moore_system(ctrl), moore_system(plant));
  CHECK(inner.interface == tensor(monomial(b, c), monomial(c, ab)));
  Lens::PosMap pos;
  Lens::DirMap dir;
  for (const auto& bv : b)
    for (const auto& cv : c) {
      pos[tuple_label({bv, cv})] = cv;
      for (const auto& av : a) dir[tuple_label({bv, cv})][av] = tuple_label({cv, tuple_label({av, bv})});
    }
  MDDS sys = apply_wiring(Lens::from_labels(inner.interface, monomial(c, a), pos, dir), inner);
  for (std::size_t bits = 0; bits < 32; ++bits) {
    std::vector<std::string> in;
    for (std::size_t t = 0; t < 5; ++t) in.push_back(a[(bits >> t) & 1]);
    Trace tr = run_open(sys, "(k0,p0)", in);
    std::size_t k = 0, p = 0;
    for (std::size_t t = 0; t < 5; ++t) {
      CHECK(tr.steps[t].state == "(k" + std::to_string(k) + ",p" + std::to_string(p) + ")");
      std::size_t next_p = p ^ ((bits >> t) & 1) ^ k;
      k = p;
      p = next_p;
    }
    CHECK(tr.final_state == "(k" + std::to_string(k) + ",p" + std::to_string(p) + ")");
  }
  CHECK(juxtapose_all({}).interface.size() == 1);
}
