#include "polydyn/laws.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "polydyn/adjunctions.hpp"
#include "polydyn/algebra.hpp"
#include "polydyn/category.hpp"
#include "polydyn/comonoid.hpp"
#include "polydyn/dynamics.hpp"
#include "polydyn/error.hpp"
#include "polydyn/factor.hpp"
#include "polydyn/fibration.hpp"
#include "polydyn/hom.hpp"
#include "polydyn/json_io.hpp"
#include "polydyn/label.hpp"
#include "polydyn/limits.hpp"

namespace polydyn {

namespace {

using Rng = std::mt19937_64;
using Failure = std::optional<std::string>;

#define LAW(cond)                                   \
  do {                                              \
    if (!(cond)) return std::string("failed: " #cond); \
  } while (0)

struct Ctx {
  Rng rng;
  std::size_t k;  // size bound
};

struct Property {
  const char* suite;
  const char* name;
  std::size_t arity;  // random polynomial inputs
  std::size_t pos_cap;
  std::size_t dir_cap;
  std::function<Failure(const std::vector<FinPoly>&, Ctx&)> check;
};

// ---------------------------------------------------------------------------
// Generators

std::size_t pick(Rng& r, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(r);
}

FinPoly random_poly(Rng& r, std::size_t max_pos, std::size_t max_dir) {
  std::vector<std::size_t> cards(pick(r, 0, max_pos));
  for (auto& c : cards) c = pick(r, 0, max_dir);
  return poly_from_cardinalities(cards);
}

FinSet named_set(const char* prefix, std::size_t n) {
  std::vector<std::string> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(prefix + std::to_string(i));
  return FinSet(std::move(xs));
}

std::vector<std::size_t> random_map(Rng& r, std::size_t dom, std::size_t cod) {
  std::vector<std::size_t> m(dom);
  for (auto& x : m) x = pick(r, 0, cod - 1);
  return m;
}

MooreMachine random_machine(Rng& r, std::size_t ns, std::size_t na, std::size_t nb) {
  FinSet s = named_set("s", ns), a = named_set("a", na), b = named_set("b", nb);
  std::vector<std::vector<std::size_t>> table(na);
  for (auto& row : table) row = random_map(r, ns, ns);
  return MooreMachine::make(s, a, b, random_map(r, ns, nb), table, pick(r, 0, ns - 1));
}

MooreMachine random_machine_on(Rng& r, const FinSet& s, const FinSet& a, const FinSet& b) {
  std::vector<std::vector<std::size_t>> table(a.size());
  for (auto& row : table) row = random_map(r, s.size(), s.size());
  return MooreMachine::make(s, a, b, random_map(r, s.size(), b.size()), table, pick(r, 0, s.size() - 1));
}

std::vector<std::string> random_word(Rng& r, const FinSet& a, std::size_t max_len) {
  std::vector<std::string> w(pick(r, 0, max_len));
  for (auto& x : w) x = a[pick(r, 0, a.size() - 1)];
  return w;
}

// A relabeled reordering of p, isomorphic to it.
FinPoly shuffled(const FinPoly& p, Rng& r) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), r);
  std::vector<Position> ps;
  for (std::size_t i : order) {
    std::vector<std::string> dirs;
    for (const auto& d : p.dirs(i)) dirs.push_back("e" + d);
    std::shuffle(dirs.begin(), dirs.end(), r);
    ps.push_back({"q" + p.label(i), FinSet(dirs)});
  }
  return FinPoly(std::move(ps));
}

std::vector<std::size_t> lens_key(const Lens& f) {
  std::vector<std::size_t> key = f.on_pos();
  for (const auto& row : f.on_dir_table()) {
    key.push_back(SIZE_MAX);
    key.insert(key.end(), row.begin(), row.end());
  }
  return key;
}

BigInt big_pow(std::size_t b, std::size_t e) {
  BigInt r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

// ---------------------------------------------------------------------------
// Independent expansion oracle: a polynomial as direction count -> multiplicity.

using Profile = std::map<std::size_t, BigInt>;

Profile profile(const FinPoly& p) {
  Profile out;
  for (const auto& pos : p) out[pos.dirs.size()] += 1;
  return out;
}

Profile profile_mul(const Profile& a, const Profile& b) {
  Profile out;
  for (const auto& [k, c] : a)
    for (const auto& [l, d] : b) out[k + l] += c * d;
  return out;
}

BigInt binomial(std::size_t n, std::size_t k) {
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// prod_i q o (|p_i| + y), or prod_i q o (|p_i| y) when dirichlet.
Profile closure_oracle(const FinPoly& q, const FinPoly& p, bool dirichlet) {
  Profile out{{0, 1}};
  for (const auto& pi : p) {
    std::size_t a = pi.dirs.size();
    Profile factor;
    for (const auto& qj : q) {
      std::size_t n = qj.dirs.size();
      if (dirichlet) {
        factor[n] += big_pow(a, n);
      } else {
        for (std::size_t k = 0; k <= n; ++k) factor[k] += binomial(n, k) * big_pow(a, n - k);
      }
    }
    out = profile_mul(out, factor);
  }
  return out;
}

bool same_profile(Profile a, Profile b) {
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(b, [](const auto& kv) { return kv.second == 0; });
  return a == b;
}

// ---------------------------------------------------------------------------
// Small-category oracles

FinCat coproduct_category(const FinCat& a, const FinCat& b) {
  std::vector<std::string> objs;
  for (const auto& o : a.objects()) objs.push_back(inj_label(0, o));
  for (const auto& o : b.objects()) objs.push_back(inj_label(1, o));
  std::vector<FinCat::Morphism> ms;
  for (const auto& m : a.morphisms()) ms.push_back({inj_label(0, m.label), m.dom, m.cod});
  for (const auto& m : b.morphisms()) ms.push_back({inj_label(1, m.label), m.dom + a.num_objects(), m.cod + a.num_objects()});
  std::vector<std::size_t> id;
  for (std::size_t x = 0; x < a.num_objects(); ++x) id.push_back(a.identity(x));
  for (std::size_t x = 0; x < b.num_objects(); ++x) id.push_back(b.identity(x) + a.num_morphisms());
  std::size_t n = ms.size(), na = a.num_morphisms();
  std::vector<std::size_t> table(n * n, FinCat::kNone);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      if (g < na && f < na && a.compose(g, f) != FinCat::kNone) table[g * n + f] = a.compose(g, f);
      if (g >= na && f >= na && b.compose(g - na, f - na) != FinCat::kNone)
        table[g * n + f] = b.compose(g - na, f - na) + na;
    }
  return FinCat(FinSet(objs), ms, id, table);
}

FinCat product_category(const FinCat& a, const FinCat& b) {
  std::vector<std::string> objs;
  for (const auto& x : a.objects())
    for (const auto& y : b.objects()) objs.push_back(tuple_label({x, y}));
  std::size_t nb = b.num_objects(), mb = b.num_morphisms();
  std::vector<FinCat::Morphism> ms;
  for (const auto& f : a.morphisms())
    for (const auto& g : b.morphisms()) ms.push_back({tuple_label({f.label, g.label}), f.dom * nb + g.dom, f.cod * nb + g.cod});
  std::vector<std::size_t> id;
  for (std::size_t x = 0; x < a.num_objects(); ++x)
    for (std::size_t y = 0; y < nb; ++y) id.push_back(a.identity(x) * mb + b.identity(y));
  std::size_t n = ms.size();
  std::vector<std::size_t> table(n * n, FinCat::kNone);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      std::size_t c1 = a.compose(g / mb, f / mb), c2 = b.compose(g % mb, f % mb);
      if (c1 != FinCat::kNone && c2 != FinCat::kNone) table[g * n + f] = c1 * mb + c2;
    }
  return FinCat(FinSet(objs), ms, id, table);
}

const std::vector<FinCat>& catalog_for(std::size_t k) {
  static std::map<std::size_t, std::vector<FinCat>> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, category_catalog(std::min<std::size_t>(k, 3), k + 2)).first;
  return it->second;
}

const FinCat& random_category(Rng& r, std::size_t k, std::size_t max_morphisms) {
  const auto& all = catalog_for(k);
  std::vector<const FinCat*> fit;
  for (const auto& c : all)
    if (c.num_morphisms() <= max_morphisms) fit.push_back(&c);
  return *fit[pick(r, 0, fit.size() - 1)];
}

bool same_comonoid(const Comonoid& a, const Comonoid& b) {
  return a.carrier == b.carrier && a.counit == b.counit && a.root == b.root && a.next == b.next && a.back == b.back;
}

std::vector<std::size_t> kernel(const std::vector<std::string>& labels) {
  std::map<std::string, std::size_t> ids;
  std::vector<std::size_t> out;
  for (const auto& l : labels) out.push_back(ids.emplace(l, ids.size()).first->second);
  return out;
}

// ---------------------------------------------------------------------------
// poly-core

Failure eval_cardinality(const std::vector<FinPoly>& in, Ctx& c) {
  const FinPoly& p = in[0];
  std::size_t n = pick(c.rng, 0, c.k);
  BigInt expect = 0;
  for (const auto& pos : p) expect += big_pow(n, pos.dirs.size());
  LAW(BigInt(eval(p, FinSet::range(n)).size()) == expect);
  LAW(BigInt(eval_count(p, n)) == expect);
  return {};
}

Failure lens_unit(const std::vector<FinPoly>& in, Ctx& c) {
  const FinPoly &p = in[0], &q = in[1];
  LAW(is_vertical(lens_id(p)) && is_cartesian(lens_id(p)));
  auto f = random_lens(p, q, c.rng);
  if (!f) return {};
  LAW(lens_compose(lens_id(q), *f) == *f);
  LAW(lens_compose(*f, lens_id(p)) == *f);
  return {};
}

Failure lens_assoc(const std::vector<FinPoly>& in, Ctx& c) {
  auto f = random_lens(in[0], in[1], c.rng);
  auto g = random_lens(in[1], in[2], c.rng);
  auto h = random_lens(in[2], in[3], c.rng);
  if (!f || !g || !h) return {};
  LAW(lens_compose(*h, lens_compose(*g, *f)) == lens_compose(lens_compose(*h, *g), *f));
  return {};
}

Failure canonical(const std::vector<FinPoly>& in, Ctx& c) {
  const FinPoly& p = in[0];
  FinPoly q = pick(c.rng, 0, 1) ? shuffled(p, c.rng) : random_poly(c.rng, std::min<std::size_t>(c.k, 3), std::min<std::size_t>(c.k, 2));
  LAW(canonical_form(canonical_form(p)) == canonical_form(p));
  bool invertible = false;
  for_each_lens(p, q, [&](const Lens& f) {
    invertible = is_invertible(f);
    return !invertible;
  });
  LAW((canonical_form(p) == canonical_form(q)) == invertible);
  return {};
}

Failure epi_cancellation(const std::vector<FinPoly>& in, Ctx& c) {
  LAW(is_epi(from_initial(in[1])) == in[1].empty());
  LAW(is_epi_by_cancellation(from_initial(in[1])) == in[1].empty());
  auto f = random_lens(in[0], in[1], c.rng);
  if (!f) return {};
  LAW(is_epi(*f) == is_epi_by_cancellation(*f));
  return {};
}

Failure set_limits(const std::vector<FinPoly>&, Ctx& c) {
  std::size_t na = pick(c.rng, 0, c.k), nb = pick(c.rng, 0, c.k), nc = pick(c.rng, 1, c.k);
  FinSet a = named_set("a", na), b = named_set("b", nb), cc = named_set("c", nc);
  SetFn f(a, cc, random_map(c.rng, na, nc)), g(b, cc, random_map(c.rng, nb, nc));
  Pullback pb = pullback_set(f, g);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) pairs += f(i) == g(j);
  LAW(pb.apex.size() == pairs);
  LAW(compose(f, pb.left) == compose(g, pb.right));

  // Coequalizer against a union-find count of classes.
  std::size_t nd = pick(c.rng, 1, c.k);
  FinSet d = named_set("d", nd);
  SetFn u(a, d, random_map(c.rng, na, nd)), v(a, d, random_map(c.rng, na, nd));
  Coequalizer co = coequalizer_set(u, v);
  std::vector<std::size_t> parent(nd);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (std::size_t i = 0; i < na; ++i) parent[find(u(i))] = find(v(i));
  std::set<std::size_t> roots;
  for (std::size_t x = 0; x < nd; ++x) roots.insert(find(x));
  LAW(co.quotient.size() == roots.size());
  LAW(compose(co.projection, u) == compose(co.projection, v));
  LAW(co.projection.surjective());
  return {};
}

Failure json_round_trip(const std::vector<FinPoly>& in, Ctx& c) {
  LAW(poly_from_json(poly_to_json(in[0])) == in[0]);
  FinPoly cf = canonical_form(in[0]);
  LAW(dump(poly_to_json(poly_from_json(poly_to_json(cf)))) == dump(poly_to_json(cf)));
  auto f = random_lens(in[0], in[1], c.rng);
  if (f) LAW(lens_from_json(lens_to_json(*f)) == *f);
  return {};
}

// ---------------------------------------------------------------------------
// poly-algebra

Failure check_iso(const Iso& iso, const FinPoly& dom, const FinPoly& cod) {
  LAW(iso.forward.dom() == dom && iso.forward.cod() == cod);
  LAW(iso.backward.dom() == cod && iso.backward.cod() == dom);
  LAW(lens_compose(iso.backward, iso.forward) == lens_id(dom));
  LAW(lens_compose(iso.forward, iso.backward) == lens_id(cod));
  return {};
}

#define CHECK_ISO(...)                          \
  do {                                          \
    if (auto e = check_iso(__VA_ARGS__)) return e; \
  } while (0)

Failure sum_coherence(const std::vector<FinPoly>& in, Ctx&) {
  const FinPoly &p = in[0], &q = in[1], &r = in[2];
  CHECK_ISO(sum_assoc(p, q, r), sum(sum(p, q), r), sum(p, sum(q, r)));
  CHECK_ISO(sum_left_unit(p), sum(zero(), p), p);
  CHECK_ISO(sum_right_unit(p), sum(p, zero()), p);
  CHECK_ISO(sum_symmetry(p, q), sum(p, q), sum(q, p));
  LAW(canonical_form(sum(sum(p, q), r)) == canonical_form(sum(p, sum(q, r))));
  return {};
}

Failure product_coherence(const std::vector<FinPoly>& in, Ctx&) {
  const FinPoly &p = in[0], &q = in[1], &r = in[2];
  CHECK_ISO(product_assoc(p, q, r), product(product(p, q), r), product(p, product(q, r)));
  CHECK_ISO(product_left_unit(p), product(one(), p), p);
  CHECK_ISO(product_right_unit(p), product(p, one()), p);
  CHECK_ISO(product_symmetry(p, q), product(p, q), product(q, p));
  LAW(canonical_form(product(product(p, q), r)) == canonical_form(product(p, product(q, r))));
  return {};
}

Failure tensor_coherence(const std::vector<FinPoly>& in, Ctx&) {
  const FinPoly &p = in[0], &q = in[1], &r = in[2];
  CHECK_ISO(tensor_assoc(p, q, r), tensor(tensor(p, q), r), tensor(p, tensor(q, r)));
  CHECK_ISO(tensor_left_unit(p), tensor(y(), p), p);
  CHECK_ISO(tensor_right_unit(p), tensor(p, y()), p);
  CHECK_ISO(tensor_symmetry(p, q), tensor(p, q), tensor(q, p));
  LAW(canonical_form(tensor(p, sum(q, r))) == canonical_form(sum(tensor(p, q), tensor(p, r))));
  return {};
}

Failure compose_coherence(const std::vector<FinPoly>& in, Ctx&) {
  const FinPoly &p = in[0], &q = in[1], &r = in[2];
  CHECK_ISO(compose_assoc(p, q, r), compose(compose(p, q), r), compose(p, compose(q, r)));
  CHECK_ISO(compose_left_unit(p), compose(y(), p), p);
  CHECK_ISO(compose_right_unit(p), compose(p, y()), p);
  return {};
}

Failure structure_formulas(const std::vector<FinPoly>& in, Ctx&) {
  const FinPoly &p = in[0], &q = in[1];
  FinPoly pr = product(p, q), te = tensor(p, q);
  LAW(sum(p, q).size() == p.size() + q.size());
  LAW(pr.size() == p.size() * q.size() && te.size() == pr.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      LAW(pr.dirs(i * q.size() + j).size() == p.dirs(i).size() + q.dirs(j).size());
      LAW(te.dirs(i * q.size() + j).size() == p.dirs(i).size() * q.dirs(j).size());
    }
  BigInt positions = 0;
  for (const auto& pos : p) positions += big_pow(q.size(), pos.dirs.size());
  LAW(BigInt(compose(p, q).size()) == positions);
  return {};
}

Failure compose_eval(const std::vector<FinPoly>& in, Ctx& c) {
  FinSet x = FinSet::range(pick(c.rng, 0, 2));
  LAW(eval(compose(in[0], in[1]), x).size() == eval(in[0], eval(in[1], x)).size());
  LAW(compose(in[0], constant(x)).size() == eval(in[0], x).size());
  return {};
}

Failure hom_counting(const std::vector<FinPoly>& in, Ctx& c) {
  const FinPoly &p = in[0], &q = in[1];
  LAW(hom_count(p, q) == BigInt(hom_enumerate(p, q).size()));
  LAW(hom_count(p, one()) == 1);
  std::size_t a = pick(c.rng, 0, c.k), b = pick(c.rng, 0, c.k);
  LAW(hom_count(representable(FinSet::range(a)), representable(FinSet::range(b))) == big_pow(a, b));
  return {};
}

Failure closures(const std::vector<FinPoly>& in, Ctx&) {
  const FinPoly &p = in[0], &q = in[1];
  LAW(same_profile(profile(cartesian_closure(q, p)), closure_oracle(q, p, false)));
  LAW(same_profile(profile(dirichlet_closure(p, q)), closure_oracle(q, p, true)));
  LAW(isomorphic(cartesian_closure(q, one()), q));
  LAW(isomorphic(cartesian_closure(q, zero()), one()));
  LAW(isomorphic(dirichlet_closure(y(), q), q));
  return {};
}

Failure currying(const std::vector<FinPoly>& in, Ctx& c) {
  const FinPoly &p = in[0], &q = in[1], &r = in[2];
  FinPoly rq = cartesian_closure(r, q), qr = dirichlet_closure(q, r);
  LAW(hom_count(product(p, q), r) == hom_count(p, rq));
  LAW(hom_count(tensor(p, q), r) == hom_count(p, qr));
  if (auto f = random_lens(product(p, q), r, c.rng)) {
    Lens g = curry_cartesian(p, q, *f);
    LAW(g.dom() == p && g.cod() == rq);
    LAW(uncurry_cartesian(p, q, r, g) == *f);
  }
  if (auto g = random_lens(p, rq, c.rng)) LAW(curry_cartesian(p, q, uncurry_cartesian(p, q, r, *g)) == *g);
  if (auto f = random_lens(tensor(p, q), r, c.rng)) {
    Lens g = curry_dirichlet(p, q, *f);
    LAW(g.dom() == p && g.cod() == qr);
    LAW(uncurry_dirichlet(p, q, r, g) == *f);
  }
  if (auto g = random_lens(p, qr, c.rng)) LAW(curry_dirichlet(p, q, uncurry_dirichlet(p, q, r, *g)) == *g);
  return {};
}

Failure duoidal_law(const std::vector<FinPoly>& in, Ctx& c) {
  const FinPoly &p1 = in[0], &p2 = in[1], &q1 = in[2], &q2 = in[3];
  Lens d = duoidal(p1, p2, q1, q2);
  LAW(d.dom() == tensor(compose(p1, p2), compose(q1, q2)));
  LAW(d.cod() == compose(tensor(p1, q1), tensor(p2, q2)));
  LAW(is_invertible(duoidal(p1, y(), q1, y())));
  FinPoly p1b = random_poly(c.rng, 2, 2);
  if (auto a = random_lens(p1, p1b, c.rng)) {
    Lens lhs = lens_compose(duoidal(p1b, p2, q1, q2), tensor_lens(compose_lens(*a, lens_id(p2)), lens_id(compose(q1, q2))));
    Lens rhs = lens_compose(compose_lens(tensor_lens(*a, lens_id(q1)), lens_id(tensor(p2, q2))), d);
    LAW(lhs == rhs);
  }
  return {};
}

Failure distributivity(const std::vector<FinPoly>& in, Ctx& c) {
  const FinPoly &p = in[0], &q = in[1], &r = in[2], &s = in[3];
  CHECK_ISO(distribute_left(p, q, r, s), compose(sum(product(p, q), r), s),
            sum(product(compose(p, s), compose(q, s)), compose(r, s)));
  std::vector<std::vector<FinPoly>> family(pick(c.rng, 0, 2));
  BigInt choices = 1;
  for (auto& row : family) {
    row.resize(pick(c.rng, 0, 2));
    BigInt sum_a = 0;
    for (auto& x : row) {
      x = random_poly(c.rng, 2, 1);
      sum_a += x.size();
    }
    choices *= sum_a;
  }
  Iso cd = complete_distributivity_instance(family);
  LAW(lens_compose(cd.backward, cd.forward) == lens_id(cd.forward.dom()));
  LAW(lens_compose(cd.forward, cd.backward) == lens_id(cd.forward.cod()));
  LAW(BigInt(cd.forward.cod().size()) == choices);
  return {};
}

// Whether lenses t -> apex correspond one-to-one with the cones from t, given
// as keys of their legs.
bool bijective_on_cones(const FinPoly& t, const Cone& lim, const std::set<std::vector<std::size_t>>& cones) {
  std::set<std::vector<std::size_t>> hit;
  bool ok = true;
  for_each_lens(t, lim.apex, [&](const Lens& m) {
    std::vector<std::size_t> key;
    for (const auto& leg : lim.legs) {
      auto part = lens_key(lens_compose(leg, m));
      key.insert(key.end(), part.begin(), part.end());
      key.push_back(SIZE_MAX - 1);
    }
    if (!cones.count(key) || !hit.insert(key).second) ok = false;
    return ok;
  });
  return ok && hit.size() == cones.size();
}

std::vector<std::size_t> cone_key(const std::vector<Lens>& legs) {
  std::vector<std::size_t> key;
  for (const auto& leg : legs) {
    auto part = lens_key(leg);
    key.insert(key.end(), part.begin(), part.end());
    key.push_back(SIZE_MAX - 1);
  }
  return key;
}

std::vector<FinPoly> cone_tests() {
  return {one(), y(), sum(y(), one()), representable(FinSet::range(2))};
}

Failure limits(const std::vector<FinPoly>& in, Ctx& c) {
  const FinPoly &p = in[0], &q = in[1];
  Cone prod = binary_product(p, q);
  LAW(prod.apex == product(p, q));
  for (const auto& t : cone_tests()) {
    std::set<std::vector<std::size_t>> cones;
    auto as = hom_enumerate(t, p), bs = hom_enumerate(t, q);
    for (const auto& a : as)
      for (const auto& b : bs) cones.insert(cone_key({a, b}));
    LAW(bijective_on_cones(t, prod, cones));
    if (!as.empty() && !bs.empty()) {
      const Lens& a = as[pick(c.rng, 0, as.size() - 1)];
      const Lens& b = bs[pick(c.rng, 0, bs.size() - 1)];
      Lens m = mediating_lens(prod, Cone{t, {a, b}});
      LAW(lens_compose(prod.legs[0], m) == a && lens_compose(prod.legs[1], m) == b);
    }
  }

  // Equalizer of a pair p => q that often agrees somewhere.
  auto f = random_lens(p, q, c.rng);
  if (f) {
    Lens g = *f;
    if (pick(c.rng, 0, 1)) {
      auto h = random_lens(p, q, c.rng);
      if (p.size() > 0) {
        std::vector<std::size_t> pos = f->on_pos();
        std::vector<std::vector<std::size_t>> dir = f->on_dir_table();
        std::size_t i = pick(c.rng, 0, p.size() - 1);
        pos[i] = h->on_pos(i);
        dir[i] = h->on_dir(i);
        g = Lens(p, q, pos, dir);
      }
    }
    Cone eq = equalizer(*f, g);
    LAW(eq.legs.size() == 1);
    LAW(is_cone(Diagram{{p, q}, {{0, 1, *f}, {0, 1, g}}}, Cone{eq.apex, {eq.legs[0], lens_compose(*f, eq.legs[0])}}));
    for (const auto& t : cone_tests()) {
      std::set<std::vector<std::size_t>> cones;
      for (const auto& h : hom_enumerate(t, p))
        if (lens_compose(*f, h) == lens_compose(g, h)) cones.insert(cone_key({h}));
      LAW(bijective_on_cones(t, eq, cones));
    }
  }

  // Pullback over a third object.
  FinPoly r = random_poly(c.rng, 2, 2);
  auto u = random_lens(p, r, c.rng);
  auto v = random_lens(q, r, c.rng);
  if (u && v) {
    Cone pb = pullback(*u, *v);
    for (const auto& t : cone_tests()) {
      std::set<std::vector<std::size_t>> cones;
      auto as = hom_enumerate(t, p), bs = hom_enumerate(t, q);
      for (const auto& a : as)
        for (const auto& b : bs)
          if (lens_compose(*u, a) == lens_compose(*v, b)) cones.insert(cone_key({a, b}));
      LAW(bijective_on_cones(t, pb, cones));
    }
  }
  return {};
}

Failure factorization(const std::vector<FinPoly>& in, Ctx& c) {
  auto f = random_lens(in[0], in[1], c.rng);
  if (!f) return {};
  auto [vert, cart] = factor_vert_cart(*f);
  LAW(is_vertical(vert) && is_cartesian(cart));
  LAW(lens_compose(cart, vert) == *f);
  auto [epi, mono] = factor_epi_mono(*f);
  LAW(is_epi(epi) && is_epi_by_cancellation(epi));
  LAW(is_mono(mono));
  LAW(lens_compose(mono, epi) == *f);
  return {};
}

BigInt vertical_count(const FinPoly& a, const FinPoly& b) {
  if (!(a.positions() == b.positions())) return -1;
  BigInt n = 1;
  for (std::size_t i = 0; i < a.size(); ++i) n *= big_pow(a.dirs(i).size(), b.dirs(b.index_of(a.label(i))).size());
  return n;
}

Failure fibration(const std::vector<FinPoly>&, Ctx& c) {
  std::size_t na = pick(c.rng, 0, c.k), nb = pick(c.rng, na ? 1 : 0, c.k);
  FinSet a = named_set("a", na), b = named_set("b", nb);
  SetFn f(a, b, random_map(c.rng, na, nb));
  auto over = [&](const FinSet& base) {
    std::vector<Position> ps;
    for (const auto& x : base) ps.push_back({x, FinSet::range(pick(c.rng, 0, 2))});
    return FinPoly(std::move(ps));
  };
  FinPoly p = over(a), q = over(b);
  FinPoly left = base_pushforward(f, p, Pushforward::left);
  FinPoly right = base_pushforward(f, p, Pushforward::right);
  FinPoly pulled = base_change(f, q);
  LAW(left.positions() == b && right.positions() == b && pulled.positions() == a);
  LAW(vertical_count(left, q) == vertical_count(p, pulled));
  LAW(vertical_count(pulled, p) == vertical_count(q, right));
  SetFn id = SetFn::identity(a);
  LAW(isomorphic(base_pushforward(id, p, Pushforward::left), p));
  LAW(isomorphic(base_pushforward(id, p, Pushforward::right), p));
  LAW(isomorphic(base_change(id, p), p));
  return {};
}

Failure adjunctions(const std::vector<FinPoly>& in, Ctx& c) {
  FinSet a = named_set("x", pick(c.rng, 0, 2));
  AdjunctionReport rep = adjunction_suite(a, in[0], in[1]);
  for (const auto& chk : rep.checks)
    if (chk.lhs != chk.rhs || !chk.bijective) return "failed: " + chk.name;
  LAW(BigInt(global_sections(in[0]).size()) == hom_count(in[0], y()));
  return {};
}

// ---------------------------------------------------------------------------
// comonoid-cat

Failure category_comonoid(const std::vector<FinPoly>&, Ctx& c) {
  const FinCat& k = random_category(c.rng, c.k, SIZE_MAX);
  Comonoid m = category_to_comonoid(k);
  LAW(check_comonoid_laws(m).ok());
  LAW(m.carrier.size() == k.num_objects());
  for (std::size_t x = 0; x < k.num_objects(); ++x) LAW(m.carrier.dirs(x).size() == k.out(x).size());
  FinCat back = comonoid_to_category(m);
  LAW(check_category(back).ok());
  LAW(isomorphic(back, k));
  return {};
}

Failure comonoid_morphisms(const std::vector<FinPoly>&, Ctx& c) {
  const FinCat& a = random_category(c.rng, c.k, 3);
  const FinCat& b = random_category(c.rng, c.k, 3);
  Comonoid ca = category_to_comonoid(a), cb = category_to_comonoid(b);
  std::vector<Lens> lenses;
  for (int n = 0; n < 8; ++n)
    if (auto f = random_lens(ca.carrier, cb.carrier, c.rng)) lenses.push_back(*f);
  lenses.push_back(lens_id(ca.carrier));
  for (const auto& f : lenses) {
    if (!(f.cod() == cb.carrier)) {
      LAW(is_comonoid_morphism(ca, ca, f));
      LAW(check_cofunctor(lens_to_cofunctor(ca, ca, f)).ok());
      continue;
    }
    LAW(is_comonoid_morphism(ca, cb, f) == check_cofunctor(lens_to_cofunctor(ca, cb, f)).ok());
  }
  return {};
}

Failure cofunctor_mutation(const std::vector<FinPoly>&, Ctx& c) {
  const FinCat& k = random_category(c.rng, c.k, SIZE_MAX);
  Cofunctor f = identity_cofunctor(k);
  LAW(check_cofunctor(f).ok());
  Comonoid m = category_to_comonoid(k);
  std::size_t x = pick(c.rng, 0, k.num_objects() - 1);
  if (k.out(x).size() < 2) return {};
  std::size_t slot = pick(c.rng, 0, k.out(x).size() - 1);
  std::size_t old = f.pull[x][slot];
  std::size_t other = pick(c.rng, 0, k.out(x).size() - 2);
  if (k.out(x)[other] == old) other = k.out(x).size() - 1;
  f.pull[x][slot] = k.out(x)[other];
  bool passes = check_cofunctor(f).ok();
  if (slot == k.out_index(k.identity(x))) LAW(!passes);
  LAW(passes == is_comonoid_morphism(m, m, cofunctor_to_lens(m, m, f)));
  return {};
}

Failure contractible_law(const std::vector<FinPoly>&, Ctx& c) {
  FinSet s = named_set("s", pick(c.rng, 1, c.k));
  Comonoid m = contractible(s);
  LAW(check_comonoid_laws(m).ok());
  FinCat k = comonoid_to_category(m);
  LAW(k.num_morphisms() == s.size() * s.size());
  LAW(isomorphic(k, contractible_category(s)));
  return {};
}

Failure sum_tensor(const std::vector<FinPoly>&, Ctx& c) {
  const FinCat& a = random_category(c.rng, c.k, 3);
  const FinCat& b = random_category(c.rng, c.k, 3);
  Comonoid ca = category_to_comonoid(a), cb = category_to_comonoid(b);
  Comonoid s = comonoid_sum(ca, cb), t = comonoid_tensor(ca, cb);
  LAW(check_comonoid_laws(s).ok() && check_comonoid_laws(t).ok());
  LAW(isomorphic(comonoid_to_category(s), coproduct_category(a, b)));
  LAW(isomorphic(comonoid_to_category(t), product_category(a, b)));
  LAW(isomorphic(comonoid_to_category(comonoid_tensor(ca, trivial_comonoid())), a));
  if (a.num_morphisms() <= 2 && b.num_morphisms() <= 2) {
    Lens via_duoidal = lens_compose(duoidal(ca.carrier, ca.carrier, cb.carrier, cb.carrier),
                                    tensor_lens(ca.comult_lens(), cb.comult_lens()));
    LAW(t.comult_lens() == via_duoidal);
    LAW(t.counit_lens() == lens_compose(tensor_left_unit(y()).forward, tensor_lens(ca.counit_lens(), cb.counit_lens())));
  }
  return {};
}

Failure cofree(const std::vector<FinPoly>& in, Ctx&) {
  const FinPoly& p = in[0];
  std::size_t depth = 0, size = 1;
  while (depth < 4) {
    std::size_t next = eval_count(p, size);
    if (next > 2000) break;
    size = next;
    ++depth;
  }
  CofreeTruncation ct = cofree_truncation(p, depth);
  LAW(ct.stages.size() == depth + 1 && ct.projections.size() == depth);
  LAW(ct.stages[0].size() == 1);
  for (std::size_t k = 0; k < depth; ++k) {
    LAW(ct.stages[k + 1].size() == eval_count(p, ct.stages[k].size()));
    LAW(ct.projections[k].dom() == ct.stages[k + 1] && ct.projections[k].cod() == ct.stages[k]);
  }
  return {};
}

Failure nstep(const std::vector<FinPoly>&, Ctx& c) {
  std::size_t k = std::min<std::size_t>(c.k, 3);
  MooreMachine m = random_machine(c.rng, pick(c.rng, 1, k), pick(c.rng, 1, 2), pick(c.rng, 1, 2));
  MDDS sys = moore_system(m);
  std::size_t ns = m.states.size();
  std::vector<std::vector<std::size_t>> kernels;
  for (std::size_t n = 0; n <= ns + 1; ++n) kernels.push_back(kernel(nstep_labels(sys.state, sys.dynamics, n)));
  LAW(std::all_of(kernels[0].begin(), kernels[0].end(), [](std::size_t x) { return x == 0; }));
  auto l1 = nstep_labels(sys.state, sys.dynamics, 1);
  for (std::size_t s = 0; s < ns; ++s) LAW(l1[s] == sys.interface.label(sys.dynamics.on_pos(s)));
  for (std::size_t n = 1; n < kernels.size(); ++n)
    for (std::size_t s = 0; s < ns; ++s)
      for (std::size_t t = 0; t < ns; ++t)
        if (kernels[n][s] == kernels[n][t]) LAW(kernels[n - 1][s] == kernels[n - 1][t]);
  LAW(kernels[ns] == kernels[ns + 1]);
  return {};
}

Failure serialization(const std::vector<FinPoly>&, Ctx& c) {
  const FinCat& k = random_category(c.rng, c.k, SIZE_MAX);
  FinCat back = category_from_json(category_to_json(k));
  LAW(canonical_key(back) == canonical_key(k));
  LAW(dump(category_to_json(back)) == dump(category_to_json(k)));
  Comonoid m = category_to_comonoid(k);
  LAW(same_comonoid(comonoid_from_json(comonoid_to_json(m)), m));
  return {};
}

// ---------------------------------------------------------------------------
// dynamics

Failure moore_lens(const std::vector<FinPoly>&, Ctx& c) {
  std::size_t k = std::min<std::size_t>(c.k, 2);
  std::size_t ns = pick(c.rng, 1, k), na = pick(c.rng, 1, k), nb = pick(c.rng, 1, k);
  MooreMachine m = random_machine(c.rng, ns, na, nb);
  LAW(lens_to_moore(moore_to_lens(m), m.states[m.initial]) == m);
  FinPoly dom = monomial(m.states, m.states), cod = monomial(m.outputs, m.inputs);
  auto f = random_lens(dom, cod, c.rng);
  LAW(f && moore_to_lens(lens_to_moore(*f)) == *f);
  LAW(hom_count(dom, cod) == big_pow(nb, ns) * big_pow(ns, na * ns));
  return {};
}

Failure run_agreement(const std::vector<FinPoly>&, Ctx& c) {
  MooreMachine m = random_machine(c.rng, pick(c.rng, 1, c.k), pick(c.rng, 1, 2), pick(c.rng, 1, 2));
  auto word = random_word(c.rng, m.inputs, 5);
  Trace t1 = run_moore(m, word);
  MDDS sys = moore_system(m);
  Trace t2 = run_open(sys, m.states[m.initial], word);
  LAW(t1.steps.size() == word.size() && t2.steps.size() == word.size());
  std::size_t s = m.initial;
  for (std::size_t n = 0; n < word.size(); ++n) {
    LAW(t1.steps[n].state == m.states[s] && t2.steps[n].state == m.states[s]);
    LAW(t1.steps[n].position == m.outputs[m.readout(s)] && t2.steps[n].position == t1.steps[n].position);
    Step st = step(sys, m.states[s], word[n]);
    s = m.next(m.inputs.index_of(word[n]), s);
    LAW(st.next_state == m.states[s]);
  }
  LAW(t1.final_state == m.states[s] && t2.final_state == m.states[s]);
  LAW(trace_valid(sys, t2));
  FinCat k = comonoid_to_category(sys.state);
  std::size_t from = m.initial, to = s;
  auto unique = std::count_if(k.morphisms().begin(), k.morphisms().end(),
                              [&](const FinCat::Morphism& x) { return x.dom == from && x.cod == to; });
  LAW(unique == 1);
  LAW(k.morphism(k.morphism_index(t2.history)).dom == from && k.morphism(k.morphism_index(t2.history)).cod == to);
  LAW(trace_history(sys, m.states[m.initial], word) == t2.history);
  return {};
}

Failure unroll_law(const std::vector<FinPoly>&, Ctx& c) {
  std::size_t k = std::min<std::size_t>(c.k, 3);
  MooreMachine m = random_machine(c.rng, pick(c.rng, 1, k), pick(c.rng, 1, 2), pick(c.rng, 1, 2));
  MDDS sys = moore_system(m);
  for (std::size_t n = 0; n <= 3; ++n) {
    auto labels = nstep_labels(sys.state, sys.dynamics, n);
    for (std::size_t s = 0; s < m.states.size(); ++s) LAW(unroll(sys, m.states[s], n).label() == labels[s]);
  }
  return {};
}

// The controller B y^C beside the plant C y^(A x B), wired to C y^A.
Lens control_wiring(const FinSet& a, const FinSet& b, const FinSet& cset) {
  FinPoly ctrl = monomial(b, cset), plant = monomial(cset, set_product(a, b));
  return Lens::from_rules(
      tensor(ctrl, plant), monomial(cset, a),
      [&](std::size_t i) {
        Label l = parse_label(tensor(ctrl, plant).label(i));
        return l[1].render();
      },
      [&](std::size_t i, const std::string& x) {
        Label l = parse_label(tensor(ctrl, plant).label(i));
        std::string bv = l[0].render(), cv = l[1].render();
        return tuple_label({cv, tuple_label({x, bv})});
      });
}

Failure closed_loop(const std::vector<FinPoly>&, Ctx& c) {
  FinSet a = named_set("a", 2), b = named_set("b", 2), cs = named_set("c", 2);
  MooreMachine ctrl = random_machine_on(c.rng, named_set("k", pick(c.rng, 1, 2)), cs, b);
  MooreMachine plant = random_machine_on(c.rng, named_set("s", pick(c.rng, 1, 2)), set_product(a, b), cs);
  MDDS sys = apply_wiring(control_wiring(a, b, cs), juxtapose(moore_system(ctrl), moore_system(plant)));
  auto word = random_word(c.rng, a, 5);
  std::size_t sc = ctrl.initial, sp = plant.initial;
  Trace t = run_open(sys, tuple_label({ctrl.states[sc], plant.states[sp]}), word);
  LAW(trace_valid(sys, t));
  for (std::size_t n = 0; n < word.size(); ++n) {
    LAW(t.steps[n].state == tuple_label({ctrl.states[sc], plant.states[sp]}));
    LAW(t.steps[n].position == cs[plant.readout(sp)]);
    std::string ab = tuple_label({word[n], b[ctrl.readout(sc)]});
    std::size_t nc = ctrl.next(plant.readout(sp), sc);
    std::size_t np = plant.next(plant.inputs.index_of(ab), sp);
    sc = nc;
    sp = np;
  }
  LAW(t.final_state == tuple_label({ctrl.states[sc], plant.states[sp]}));
  return {};
}

Failure overlay_law(const std::vector<FinPoly>& in, Ctx& c) {
  const FinPoly &p = in[0], &q = in[1];
  FinSet s = named_set("s", pick(c.rng, 1, 2));
  FinPoly carrier = monomial(s, s);
  auto f = random_lens(carrier, p, c.rng);
  auto g = random_lens(carrier, q, c.rng);
  if (!f || !g) return {};
  Lens h = overlay(*f, *g);
  LAW(lens_compose(proj_left(p, q), h) == *f && lens_compose(proj_right(p, q), h) == *g);
  if (hom_count(carrier, product(p, q)) <= 5000) {
    std::size_t matches = 0;
    for_each_lens(carrier, product(p, q), [&](const Lens& k) {
      matches += lens_compose(proj_left(p, q), k) == *f && lens_compose(proj_right(p, q), k) == *g;
      return true;
    });
    LAW(matches == 1);
  }
  return {};
}

Failure juxtapose_law(const std::vector<FinPoly>&, Ctx& c) {
  MooreMachine m = random_machine(c.rng, pick(c.rng, 1, c.k), pick(c.rng, 1, 2), pick(c.rng, 1, 2));
  MDDS sys = moore_system(m);
  MDDS j = juxtapose(sys, MDDS(trivial_comonoid(), lens_id(y())));
  LAW(isomorphic(j.interface, sys.interface));
  LAW(j.state.carrier.size() == sys.state.carrier.size());
  auto word = random_word(c.rng, m.inputs, 5);
  std::vector<std::string> paired;
  for (const auto& x : word) paired.push_back(tuple_label({x, "*"}));
  Trace t1 = run_open(sys, m.states[m.initial], word);
  Trace t2 = run_open(j, tuple_label({m.states[m.initial], "*"}), paired);
  for (std::size_t n = 0; n < word.size(); ++n) LAW(t2.steps[n].position == tuple_label({t1.steps[n].position, "*"}));
  return {};
}

#undef LAW
#undef CHECK_ISO

// ---------------------------------------------------------------------------
// Registry and runner

const std::vector<Property>& registry() {
  static const std::vector<Property> props = {
      {"poly-core", "eval-cardinality", 1, 4, 3, eval_cardinality},
      {"poly-core", "lens-unit", 2, 3, 2, lens_unit},
      {"poly-core", "lens-associativity", 4, 3, 2, lens_assoc},
      {"poly-core", "canonical-form", 1, 3, 2, canonical},
      {"poly-core", "epi-cancellation", 2, 2, 2, epi_cancellation},
      {"poly-core", "set-limits", 0, 0, 0, set_limits},
      {"poly-core", "json-round-trip", 2, 3, 3, json_round_trip},
      {"poly-algebra", "sum-coherence", 3, 3, 3, sum_coherence},
      {"poly-algebra", "product-coherence", 3, 3, 3, product_coherence},
      {"poly-algebra", "tensor-coherence", 3, 3, 2, tensor_coherence},
      {"poly-algebra", "compose-coherence", 3, 2, 2, compose_coherence},
      {"poly-algebra", "structure-formulas", 2, 3, 3, structure_formulas},
      {"poly-algebra", "compose-eval", 2, 3, 2, compose_eval},
      {"poly-algebra", "hom-count", 2, 3, 2, hom_counting},
      {"poly-algebra", "closures", 2, 2, 2, closures},
      {"poly-algebra", "currying", 3, 2, 2, currying},
      {"poly-algebra", "duoidal", 4, 2, 2, duoidal_law},
      {"poly-algebra", "distributivity", 4, 2, 2, distributivity},
      {"poly-algebra", "limits", 2, 2, 2, limits},
      {"poly-algebra", "factorization", 2, 3, 2, factorization},
      {"poly-algebra", "fibration", 0, 0, 0, fibration},
      {"poly-algebra", "adjunctions", 2, 2, 2, adjunctions},
      {"comonoid-cat", "category-comonoid", 0, 0, 0, category_comonoid},
      {"comonoid-cat", "comonoid-morphism", 0, 0, 0, comonoid_morphisms},
      {"comonoid-cat", "cofunctor-mutation", 0, 0, 0, cofunctor_mutation},
      {"comonoid-cat", "contractible", 0, 0, 0, contractible_law},
      {"comonoid-cat", "sum-tensor", 0, 0, 0, sum_tensor},
      {"comonoid-cat", "cofree-truncation", 1, 3, 3, cofree},
      {"comonoid-cat", "bisimilarity", 0, 0, 0, nstep},
      {"comonoid-cat", "json-round-trip", 0, 0, 0, serialization},
      {"dynamics", "moore-lens", 0, 0, 0, moore_lens},
      {"dynamics", "run-agreement", 0, 0, 0, run_agreement},
      {"dynamics", "unroll", 0, 0, 0, unroll_law},
      {"dynamics", "closed-loop", 0, 0, 0, closed_loop},
      {"dynamics", "overlay", 2, 2, 2, overlay_law},
      {"dynamics", "juxtapose", 0, 0, 0, juxtapose_law},
  };
  return props;
}

Rng sample_rng(std::uint64_t seed, std::size_t prop, std::size_t sample, std::uint32_t salt) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(prop), std::uint32_t(sample), salt};
  return Rng(seq);
}

Failure run_check(const Property& prop, const std::vector<FinPoly>& in, Rng rng, std::size_t k) {
  Ctx ctx{std::move(rng), k};
  try {
    return prop.check(in, ctx);
  } catch (const std::exception& e) {
    return std::string("threw: ") + e.what();
  }
}

FinPoly without_position(const FinPoly& p, std::size_t i) {
  std::vector<Position> ps(p.begin(), p.end());
  ps.erase(ps.begin() + static_cast<std::ptrdiff_t>(i));
  return FinPoly(std::move(ps));
}

FinPoly without_direction(const FinPoly& p, std::size_t i) {
  std::vector<Position> ps(p.begin(), p.end());
  std::vector<std::string> dirs = ps[i].dirs.elements();
  dirs.pop_back();
  ps[i].dirs = FinSet(dirs);
  return FinPoly(std::move(ps));
}

// Deletes positions, then directions, while the property keeps failing.
std::pair<std::vector<FinPoly>, std::string> shrink(const Property& prop, std::vector<FinPoly> in, const Rng& rng,
                                                    std::size_t k, std::string message) {
  for (int phase = 0; phase < 2; ++phase) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t a = 0; a < in.size() && !progress; ++a)
        for (std::size_t i = 0; i < in[a].size() && !progress; ++i) {
          if (phase == 1 && in[a].dirs(i).empty()) continue;
          auto candidate = in;
          candidate[a] = phase == 0 ? without_position(in[a], i) : without_direction(in[a], i);
          if (auto f = run_check(prop, candidate, rng, k)) {
            in = std::move(candidate);
            message = *f;
            progress = true;
          }
        }
    }
  }
  return {std::move(in), std::move(message)};
}

}  // namespace

nlohmann::json LawsReport::to_json() const {
  nlohmann::json props = nlohmann::json::array();
  for (const auto& p : properties)
    props.push_back({{"suite", p.suite}, {"name", p.name}, {"passed", p.passed}, {"failed", p.failed}});
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : failures)
    fails.push_back({{"property", f.property}, {"sample", f.sample}, {"inputs", f.inputs}, {"message", f.message}});
  return {{"suite", suite}, {"samples", samples}, {"size_bound", size_bound}, {"seed", seed}, {"ok", ok()},
          {"properties", props}, {"failures", fails}};
}

std::vector<std::string> law_suites() { return {"poly-core", "poly-algebra", "comonoid-cat", "dynamics"}; }

std::vector<std::string> law_properties(const std::string& suite) {
  std::vector<std::string> out;
  for (const auto& p : registry())
    if (suite == "all" || suite == p.suite) out.push_back(std::string(p.suite) + "/" + p.name);
  return out;
}

LawsReport run_laws(const LawsOptions& opt) {
  auto suites = law_suites();
  if (opt.suite != "all" && std::find(suites.begin(), suites.end(), opt.suite) == suites.end())
    throw Error("unknown suite " + opt.suite);
  if (opt.size_bound == 0) throw Error("size bound must be positive");
  LawsReport rep{opt.suite, opt.samples, opt.size_bound, opt.seed, {}, {}};
  const auto& props = registry();
  for (std::size_t pi = 0; pi < props.size(); ++pi) {
    const Property& prop = props[pi];
    if (opt.suite != "all" && opt.suite != prop.suite) continue;
    PropertyResult res{prop.suite, prop.name, 0, 0};
    std::size_t max_pos = std::min(opt.size_bound, prop.pos_cap), max_dir = std::min(opt.size_bound, prop.dir_cap);
    for (std::size_t s = 0; s < opt.samples; ++s) {
      Rng gen = sample_rng(opt.seed, pi, s, 0);
      std::vector<FinPoly> in;
      for (std::size_t a = 0; a < prop.arity; ++a) in.push_back(random_poly(gen, max_pos, max_dir));
      Rng check_rng = sample_rng(opt.seed, pi, s, 1);
      auto f = run_check(prop, in, check_rng, opt.size_bound);
      if (!f) {
        ++res.passed;
        continue;
      }
      ++res.failed;
      if (res.failed == 1) {
        auto [small, msg] = shrink(prop, in, check_rng, opt.size_bound, *f);
        LawFailure lf{std::string(prop.suite) + "/" + prop.name, s, {}, msg};
        for (const auto& p : small) lf.inputs.push_back(to_algebraic(p));
        rep.failures.push_back(std::move(lf));
      }
    }
    rep.properties.push_back(res);
  }
  return rep;
}

}  // namespace polydyn
