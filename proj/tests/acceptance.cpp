// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "polydyn/adjunctions.hpp"
#include "polydyn/algebra.hpp"
#include "polydyn/category.hpp"
#include "polydyn/comonoid.hpp"
#include "polydyn/dynamics.hpp"
#include "polydyn/factor.hpp"
#include "polydyn/hom.hpp"
#include "polydyn/label.hpp"
#include "polydyn/limits.hpp"
#include "polydyn/wiring.hpp"
#include "support.hpp"

using namespace polydyn;
using namespace polydyn::testing;
using namespace polydyn::wd;

namespace {

// Collects failed expectations; a criterion passes when none were recorded.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

FinPoly px() { return poly_from_cardinalities({2, 1, 1, 1, 0, 0}); }  // y^2 + 3y + 2

std::string show(std::size_t n) { return std::to_string(n); }

// ---------------------------------------------------------------------------

void identities(Check& c) {
  auto same = [](const FinPoly& a, const FinPoly& b) { return canonical_form(a) == canonical_form(b); };
  FinPoly y1 = poly_from_cardinalities({1, 0}), y2 = poly_from_cardinalities({1, 0, 0});
  c.expect(same(product(y1, y2), px()), "(y+1)(y+2)");
  c.expect(same(tensor(poly_from_cardinalities({3, 1}), poly_from_cardinalities({2, 0})),
                poly_from_cardinalities({6, 2, 0, 0})),
           "(y^3+y) (x) (y^2+1)");
  c.expect(same(compose(poly_from_cardinalities({2, 1}), poly_from_cardinalities({3, 0})),
                poly_from_cardinalities({6, 3, 3, 3, 0, 0})),
           "(y^2+y) o (y^3+1)");

  const Coeffs p{2, 3, 1}, q5{5, 1}, q4{4, 1}, m5{0, 5}, m4{0, 4};
  FinPoly pp = from_coeffs(p), qq = poly_from_cardinalities({5, 4});
  FinPoly cart = from_coeffs(coeff_mul(coeff_substitute(p, q5), coeff_substitute(p, q4)));
  FinPoly dir = from_coeffs(coeff_mul(coeff_substitute(p, m5), coeff_substitute(p, m4)));
  c.expect(same(cartesian_closure(pp, qq), cart), "cartesian closure " + to_algebraic(cartesian_closure(pp, qq)));
  c.expect(same(dirichlet_closure(qq, pp), dir), "dirichlet closure " + to_algebraic(dirichlet_closure(qq, pp)));
  c.expect(cart.size() == 56 * 42, "cartesian closure position count");
  c.expect(dir.size() == 42 * 30, "dirichlet closure position count");
}

void evaluation(Check& c) {
  c.expect(eval(representable(FinSet::range(3)), FinSet::range(2)).size() == 8, "|y^3(2)| = 8");
  c.expect(eval(px(), FinSet::range(1)).size() == 6, "p(1) = 6");
  c.expect(eval(px(), FinSet()).size() == 2, "p(0) = 2");
  c.expect(eval_count(px(), 1) == 6 && eval_count(px(), 0) == 2, "eval_count");
}

void hom_264(Check& c) {
  FinPoly q = poly_from_cardinalities({5, 0});
  c.expect(hom_count(px(), q) == 264, "hom_count = " + hom_count(px(), q).str());
  c.expect(hom_enumerate(px(), q).size() == 264, "hom_enumerate length");
  // One factor per position of p: lenses out of that representable summand.
  std::vector<std::size_t> factors;
  std::size_t product = 1;
  for (std::size_t i = 0; i < px().size(); ++i) {
    std::size_t f = hom_enumerate(representable(px().dirs(i)), q).size();
    factors.push_back(f);
    product *= f;
  }
  std::vector<std::size_t> displayed{ipow(2, 5) + 1, ipow(1, 5) + 1, ipow(1, 5) + 1,
                                     ipow(1, 5) + 1, ipow(0, 5) + 1, ipow(0, 5) + 1};
  c.expect(factors == displayed, "factor structure");
  c.expect(product == 264, "factor product");
}

void moore(Check& c) {
  FinSet s = FinSet::range(2, "S"), a({"a0", "a1"}, "A"), b({"b0", "b1"}, "B");
  std::vector<MooreMachine> machines;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t u = 0; u < 16; ++u) {
      std::vector<std::vector<std::size_t>> table(2, std::vector<std::size_t>(2));
      for (std::size_t k = 0; k < 4; ++k) table[k / 2][k % 2] = (u >> k) & 1;
      machines.push_back(MooreMachine::make(s, a, b, {r & 1, (r >> 1) & 1}, table));
    }
  std::vector<Lens> lenses = hom_enumerate(monomial(s, s), monomial(b, a));
  c.expect(machines.size() == 64, "machine count");
  c.expect(lenses.size() == 64, "lens count " + show(lenses.size()));
  std::set<std::vector<std::size_t>> images;
  auto key = [](const Lens& f) {
    std::vector<std::size_t> k(f.on_pos());
    for (std::size_t i = 0; i < f.dom().size(); ++i) k.insert(k.end(), f.on_dir(i).begin(), f.on_dir(i).end());
    return k;
  };
  for (const auto& m : machines) {
    Lens f = moore_to_lens(m);
    images.insert(key(f));
    c.expect(lens_to_moore(f, m.states[m.initial]) == m, "lens_to_moore . moore_to_lens");
  }
  std::set<std::vector<std::size_t>> homs;
  for (const auto& f : lenses) {
    homs.insert(key(relayout(f, monomial(s, s), monomial(b, a))));
    c.expect(moore_to_lens(lens_to_moore(f)) == f, "moore_to_lens . lens_to_moore");
  }
  c.expect(images.size() == 64, "moore_to_lens injective");
  c.expect(images == homs, "image is the whole hom-set");
}

void comonoids(Check& c) {
  std::vector<FinCat> cats = category_catalog(3, 6);
  c.expect(cats.size() == 3227, "catalog size " + show(cats.size()));
  for (const auto& k : cats) {
    c.expect(check_category(k).ok(), "catalog entry is a category");
    Comonoid m = category_to_comonoid(k);
    c.expect(check_comonoid_laws(m).ok(), "comonoid laws");
    FinCat back = comonoid_to_category(m);
    c.expect(check_category(back).ok(), "recovered category laws");
    c.expect(isomorphic(back, k), "category round trip");
    Comonoid again = category_to_comonoid(back);
    c.expect(again.counit == m.counit && again.root == m.root && again.next == m.next && again.back == m.back,
             "comonoid round trip");
  }
  for (std::size_t n = 0; n <= 3; ++n) {
    FinSet s = FinSet::range(n);
    Comonoid m = contractible(s);
    c.expect(check_comonoid_laws(m).ok(), "contractible laws");
    FinCat k = comonoid_to_category(m);
    c.expect(k.num_morphisms() == n * n, "contractible morphisms " + show(k.num_morphisms()));
    c.expect(isomorphic(k, contractible_category(s)), "contractible category");
  }
}

void adjunctions(Check& c) {
  std::vector<FinPoly> polys = small_polys(2, 2);
  for (std::size_t n = 0; n <= 2; ++n)
    for (const auto& p : polys)
      for (const auto& q : polys) {
        AdjunctionReport r = adjunction_suite(FinSet::range(n), p, q);
        c.expect(r.ok(), "adjunction suite " + to_algebraic(p) + ", " + to_algebraic(q));
        for (const auto& ch : r.checks) c.expect(ch.lhs == ch.rhs && ch.bijective, ch.name);
      }
  for (const auto& p : polys)
    for (const auto& q : polys)
      for (const auto& r : polys) {
        CartesianCurry cc(p, q, r);
        c.expect(hom_count(cc.source(), r) == hom_count(p, cc.target()), "cartesian currying cardinality");
        for_each_lens(cc.source(), r, [&](const Lens& f) {
          c.expect(cc.uncurry(cc.curry(f)) == f, "uncurry . curry (x)");
          return true;
        });
        for_each_lens(p, cc.target(), [&](const Lens& g) {
          c.expect(cc.curry(cc.uncurry(g)) == g, "curry . uncurry (x)");
          return true;
        });
        DirichletCurry dc(p, q, r);
        c.expect(hom_count(dc.source(), r) == hom_count(p, dc.target()), "dirichlet currying cardinality");
        for_each_lens(dc.source(), r, [&](const Lens& f) {
          c.expect(dc.uncurry(dc.curry(f)) == f, "uncurry . curry (tensor)");
          return true;
        });
        for_each_lens(p, dc.target(), [&](const Lens& g) {
          c.expect(dc.curry(dc.uncurry(g)) == g, "curry . uncurry (tensor)");
          return true;
        });
      }
}

// Universal property of `lim` over the diagram against one test object:
// the cones with apex t are exactly the composites with maps t -> apex, and
// each cone has a single such map, the mediating lens.
void universal(Check& c, const std::string& what, const FinPoly& t, const Cone& lim,
               const std::vector<std::vector<Lens>>& cones) {
  auto key = [](const std::vector<Lens>& legs) {
    std::vector<std::size_t> k;
    for (const auto& f : legs) {
      k.insert(k.end(), f.on_pos().begin(), f.on_pos().end());
      for (std::size_t i = 0; i < f.dom().size(); ++i) k.insert(k.end(), f.on_dir(i).begin(), f.on_dir(i).end());
      k.push_back(SIZE_MAX);
    }
    return k;
  };
  std::vector<Lens> maps = hom_enumerate(t, lim.apex);
  std::vector<std::vector<std::size_t>> induced;
  for (const auto& m : maps) {
    std::vector<Lens> legs;
    for (const auto& leg : lim.legs) legs.push_back(lens_compose(leg, m));
    induced.push_back(key(legs));
  }
  std::set<std::vector<std::size_t>> cone_keys;
  for (const auto& cone : cones) {
    auto k = key(cone);
    cone_keys.insert(k);
    std::vector<const Lens*> hits;
    for (std::size_t i = 0; i < maps.size(); ++i)
      if (induced[i] == k) hits.push_back(&maps[i]);
    c.expect(hits.size() == 1, what + ": mediator count " + show(hits.size()));
    if (hits.size() == 1) c.expect(mediating_lens(lim, Cone{t, cone}) == *hits[0], what + ": mediating_lens");
  }
  for (const auto& k : induced) c.expect(cone_keys.count(k) == 1, what + ": composite is not a cone");
}

void limits(Check& c) {
  const std::vector<FinPoly> tests{one(), y(), sum(y(), one()), representable(FinSet::range(2))};
  std::vector<FinPoly> polys = small_polys(2, 2);
  for (const auto& p : polys)
    for (const auto& q : polys) {
      Cone prod = binary_product(p, q);
      for (const auto& t : tests) {
        std::vector<std::vector<Lens>> cones;
        for (const auto& a : hom_enumerate(t, p))
          for (const auto& b : hom_enumerate(t, q)) cones.push_back({a, b});
        universal(c, "product", t, prod, cones);
      }
    }
  for (const auto& p : polys)
    for (const auto& q : polys) {
      std::vector<Lens> parallel = hom_enumerate(p, q);
      for (const auto& f : parallel)
        for (const auto& g : parallel) {
          Cone eq = equalizer(f, g);
          c.expect(eq.legs.size() == 1 && lens_compose(f, eq.legs[0]) == lens_compose(g, eq.legs[0]),
                   "equalizer commutes");
          for (const auto& t : tests) {
            std::vector<std::vector<Lens>> cones;
            for (const auto& h : hom_enumerate(t, p))
              if (lens_compose(f, h) == lens_compose(g, h)) cones.push_back({h});
            universal(c, "equalizer", t, eq, cones);
          }
        }
    }
  for (const auto& p : polys)
    for (const auto& q : polys)
      for (const auto& r : polys)
        for (const auto& f : hom_enumerate(p, r))
          for (const auto& g : hom_enumerate(q, r)) {
            Cone pb = pullback(f, g);
            c.expect(lens_compose(f, pb.legs[0]) == lens_compose(g, pb.legs[1]), "pullback commutes");
            for (const auto& t : tests) {
              std::vector<std::vector<Lens>> cones;
              for (const auto& a : hom_enumerate(t, p))
                for (const auto& b : hom_enumerate(t, q))
                  if (lens_compose(f, a) == lens_compose(g, b)) cones.push_back({a, b});
              universal(c, "pullback", t, pb, cones);
            }
          }
}

void factorizations(Check& c) {
  std::vector<FinPoly> polys = small_polys(2, 2);
  std::size_t n = 0;
  for (const auto& p : polys)
    for (const auto& q : polys)
      for_each_lens(p, q, [&](const Lens& f) {
        ++n;
        auto [vert, cart] = factor_vert_cart(f);
        c.expect(is_vertical(vert) && is_cartesian(cart), "vert/cart predicates");
        c.expect(lens_compose(cart, vert) == f, "cart . vert = f");
        auto [epi, mono] = factor_epi_mono(f);
        c.expect(is_epi(epi) && is_epi_by_cancellation(epi), "epi predicate");
        c.expect(is_mono(mono), "mono predicate");
        c.expect(lens_compose(mono, epi) == f, "mono . epi = f");
        return true;
      });
  c.expect(n > 0, "no lenses enumerated");
}

std::string samples_dir() { return POLYDYN_SAMPLES_DIR; }

WiringSpec load(const std::string& name) { return parse(slurp(samples_dir() + "/" + name)); }

void wiring(Check& c) {
  {
    WiringSpec spec = load("control.wd");
    Lens w = compile_wiring(spec);
    FinSet a({"a0", "a1"}), b({"b0", "b1"}), cc({"c0", "c1"});
    FinPoly inner = tensor(monomial(b, cc), monomial(cc, set_product(a, b)));
    FinPoly outer = monomial(cc, a);
    Lens::PosMap pos;
    Lens::DirMap dir;
    for (const auto& bv : b)
      for (const auto& cv : cc) {
        std::string at = tuple_label({bv, cv});
        pos[at] = cv;  // projection BC -> C
        for (const auto& av : a) dir[at][av] = tuple_label({cv, tuple_label({av, bv})});  // BCA -> CAB
      }
    Lens hand = Lens::from_labels(inner, outer, pos, dir);
    c.expect(w == hand, "control wiring");
  }
  {
    WiringSpec spec = load("supplier.wd");
    Lens w = compile_wiring(spec);
    FinSet m({"1", "2"}), ws({"w1", "w2"}), unit = FinSet::singleton();
    FinPoly inner = tensor_all({monomial(m, ws), monomial(ws, unit), monomial(ws, unit)});
    Lens::PosMap pos;
    Lens::DirMap dir;
    for (const auto& mv : m)
      for (const auto& w1 : ws)
        for (const auto& w2 : ws) {
          std::string at = tuple_label({mv, w1, w2});
          pos[at] = "*";
          dir[at]["*"] = tuple_label({mv == "1" ? w1 : w2, "*", "*"});  // evaluation 2W^2 -> W
        }
    c.expect(w == Lens::from_labels(inner, y(), pos, dir), "supplier wiring");
  }
  {
    WiringSpec spec = load("attach.wd");
    Lens w = compile_wiring(spec);
    FinSet m({"1", "2"}), xs({"x0", "x1", "x2"}), unit = FinSet::singleton();
    FinPoly inner = tensor_all({monomial(m, unit), monomial(xs, unit), monomial(unit, xs)});
    Lens::PosMap pos;
    Lens::DirMap dir;
    for (const auto& mv : m)
      for (const auto& x : xs) {
        std::string at = tuple_label({mv, x, "*"});
        pos[at] = "*";
        dir[at]["*"] = tuple_label({"*", "*", mv == "1" ? "x0" : x});  // (1,x) -> x0, (2,x) -> x
      }
    c.expect(w == Lens::from_labels(inner, y(), pos, dir), "attach wiring");
  }
}

void simulation(Check& c) {
  {
    auto [sys, init] = compile_system(load("control.wd"));
    // Hand-coupled recurrence: the plant emits c = p, the controller emits
    // b = k; then p' = p xor a xor b and k' = c.
    for (std::size_t len = 0; len <= 5; ++len)
      for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
        std::vector<std::string> inputs;
        for (std::size_t t = 0; t < len; ++t) inputs.push_back((bits >> t) & 1 ? "a1" : "a0");
        Trace tr = run_open(sys, init, inputs);
        std::size_t k = 0, p = 0;
        auto state = [&] { return tuple_label({"k" + show(k), "p" + show(p)}); };
        bool ok = tr.steps.size() == len;
        for (std::size_t t = 0; ok && t < len; ++t) {
          ok = tr.steps[t].state == state() && tr.steps[t].position == "c" + show(p) &&
               tr.steps[t].direction == inputs[t];
          std::size_t a = (bits >> t) & 1, b = k;
          k = p;
          p = p ^ a ^ b;
        }
        ok = ok && tr.final_state == state() && tr.final_position == "c" + show(p) && trace_valid(sys, tr);
        c.expect(ok, "control trace for input stream of length " + show(len));
      }
  }
  {
    auto [sys, init] = compile_system(load("supplier.wd"));
    Trace tr = run_closed(sys, init, 12);
    c.expect(tr.steps.size() == 12, "supplier steps");
    // A Company state m<k>_w<v> holds its current mode k and the widget v it last received.
    auto company = [](const std::string& s) { return parse_label(s)[0].render(); };
    std::vector<std::string> states;
    for (const auto& st : tr.steps) states.push_back(company(st.state));
    states.push_back(company(tr.final_state));
    std::size_t switches = 0;
    for (std::size_t t = 0; t + 1 < states.size(); ++t) {
      char mode = states[t][1], received = states[t + 1][4];
      c.expect(received == mode, "widget at step " + show(t + 1) + " comes from supplier " + mode);
      if (t > 0) {
        bool mode_changed = states[t][1] != states[t - 1][1];
        bool source_changed = states[t + 1][4] != states[t][4];
        c.expect(mode_changed == source_changed, "source switches with the mode");
        switches += source_changed;
      }
    }
    c.expect(switches > 0, "supplier never switched");
  }
}

void cofree(Check& c) {
  auto run = [&](const FinPoly& p, const std::vector<std::size_t>& expected) {
    CofreeTruncation t = cofree_truncation(p, 4);
    std::vector<std::size_t> sizes;
    for (const auto& s : t.stages) sizes.push_back(s.size());
    c.expect(sizes == expected, "cofree counts for " + to_algebraic(p));
    for (std::size_t k = 0; k + 1 < t.stages.size(); ++k)
      c.expect(t.stages[k + 1].size() == eval_count(p, t.stages[k].size()), "|c_{k+1}(1)| = |p(c_k(1))|");
  };
  run(poly_from_cardinalities({1, 1}), {1, 2, 4, 8, 16});
  run(poly_from_cardinalities({1, 0}), {1, 2, 3, 4, 5});
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  status = pclose(pipe);
  return out;
}

void determinism(Check& c) {
  const std::string cmd =
      std::string("\"") + POLYDYN_CLI + "\" laws --suite all --size-bound 3 --samples 200 --seed 42";
  int s1 = 0, s2 = 0;
  std::string a = run_capture(cmd, s1), b = run_capture(cmd, s2);
  c.expect(s1 == 0 && s2 == 0, "laws exit status " + std::to_string(s1) + ", " + std::to_string(s2));
  c.expect(!a.empty() && a == b, "outputs differ");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"algebraic identities and closure expansions", identities},
      {"evaluation counts", evaluation},
      {"hom-set of 264 lenses", hom_264},
      {"Moore machines as lenses", moore},
      {"comonoids and categories", comonoids},
      {"adjunctions and currying", adjunctions},
      {"limits", limits},
      {"factorizations", factorizations},
      {"wiring golden files", wiring},
      {"closed-loop simulation", simulation},
      {"cofree truncation", cofree},
      {"laws determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << (i + 1) << ": " << (c.failures.empty() ? "PASS" : "FAIL") << "  " << criteria[i].first
         << " (" << secs << " s)";
    std::cout << line.str() << "\n";
    for (const auto& f : c.failures) std::cout << "    " << f << "\n";
    failed += !c.failures.empty();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
