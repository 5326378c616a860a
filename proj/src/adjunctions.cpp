#include "polydyn/adjunctions.hpp"

#include <set>
#include <utility>

#include "polydyn/algebra.hpp"
#include "polydyn/label.hpp"

namespace polydyn {

namespace {

using Key = std::vector<std::size_t>;

Key lens_key(const Lens& f) {
  Key k = f.on_pos();
  for (const auto& row : f.on_dir_table()) {
    k.push_back(row.size());
    k.insert(k.end(), row.begin(), row.end());
  }
  return k;
}

BigInt power(const BigInt& base, std::size_t exp) {
  BigInt r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return r;
}

// Enumerates hom(dom, cod), transposes each lens and checks the transpose is
// injective with image size `rhs`.
AdjunctionCheck check(std::string name, const FinPoly& dom, const FinPoly& cod, BigInt rhs,
                      const std::function<Key(const Lens&)>& transpose) {
  AdjunctionCheck c{std::move(name), 0, std::move(rhs), false};
  std::set<Key> image;
  bool injective = true;
  for_each_lens(dom, cod, [&](const Lens& f) {
    ++c.lhs;
    injective = image.insert(transpose(f)).second && injective;
    return true;
  });
  c.bijective = injective && c.lhs == c.rhs;
  return c;
}

}  // namespace

FinSet global_sections(const FinPoly& p) {
  std::vector<std::string> out;
  std::vector<std::size_t> idx(p.size(), 0);
  for (const auto& pos : p)
    if (pos.dirs.empty()) return FinSet();
  while (true) {
    std::vector<std::pair<std::string, std::string>> entries;
    for (std::size_t i = 0; i < p.size(); ++i) entries.emplace_back(p.label(i), p.dirs(i)[idx[i]]);
    out.push_back(map_label(entries));
    std::size_t k = p.size();
    while (k > 0 && ++idx[k - 1] == p.dirs(k - 1).size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return FinSet(std::move(out));
}

FinPoly scalar_product(const FinSet& a, const FinPoly& p) { return product(p, constant(a)); }

bool AdjunctionReport::ok() const {
  for (const auto& c : checks)
    if (!c.bijective) return false;
  return true;
}

nlohmann::json AdjunctionReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name}, {"lhs", c.lhs.str()}, {"rhs", c.rhs.str()}, {"bijective", c.bijective}});
  return {{"checks", arr}, {"ok", ok()}};
}

AdjunctionReport adjunction_suite(const FinSet& a, const FinPoly& p, const FinPoly& q) {
  AdjunctionReport r;
  const std::size_t na = a.size();
  std::size_t p0 = 0;
  for (const auto& pos : p) p0 += pos.dirs.empty() ? 1 : 0;
  FinSet gamma = global_sections(p);

  r.checks.push_back(check("Ay -| p(1)", linear(a), p, power(p.size(), na),
                           [](const Lens& f) { return f.on_pos(); }));
  r.checks.push_back(check("p(1) -| A", p, constant(a), power(na, p.size()),
                           [](const Lens& f) { return f.on_pos(); }));
  r.checks.push_back(check("A -| p(0)", constant(a), p, power(p0, na),
                           [](const Lens& f) { return f.on_pos(); }));
  // A lens p -> y^A is, for each a, a section i |-> f#_i(a).
  r.checks.push_back(check("Gamma -| y^A", p, representable(a), power(gamma.size(), na), [](const Lens& f) {
    Key k;
    for (std::size_t x = 0; f.dom().size() > 0 && x < f.on_dir(0).size(); ++x)
      for (std::size_t i = 0; i < f.dom().size(); ++i) k.push_back(f.on_dir(i, x));
    return k;
  }));
  r.checks.push_back(check("Gamma p = Poly(p,y)", p, y(), BigInt(gamma.size()), [&](const Lens& f) {
    std::vector<std::pair<std::string, std::string>> entries;
    for (std::size_t i = 0; i < p.size(); ++i) entries.emplace_back(p.label(i), p.dirs(i)[f.on_dir(i, 0)]);
    return Key{gamma.index_of(map_label(entries))};
  }));

  FinPoly ap = scalar_product(a, p);
  FinPoly qa = cartesian_closure(q, constant(a));
  FinPoly ca = constant(a);
  bool round_trip = true;
  AdjunctionCheck curry = check("Poly(Ap,q) = Poly(p,q^A)", ap, q, hom_count(p, qa), [&](const Lens& f) {
    Lens g = curry_cartesian(p, ca, f);
    round_trip = round_trip && uncurry_cartesian(p, ca, q, g) == f;
    return lens_key(g);
  });
  curry.bijective = curry.bijective && round_trip;
  r.checks.push_back(curry);
  std::vector<Lens> pq = hom_enumerate(p, q);
  r.checks.push_back(check("Poly(Ap,q) = Set(A,Poly(p,q))", ap, q, power(pq.size(), na), [&](const Lens& f) {
    Key k;
    for (std::size_t x = 0; x < na; ++x) {
      Lens restricted = Lens::from_rules(
          p, q, [&](std::size_t i) { return f.pos_image(tuple_label({p.label(i), a[x]})); },
          [&](std::size_t i, const std::string& e) {
            return parse_label(f.dir_back(tuple_label({p.label(i), a[x]}), e)).payload().render();
          });
      Key rk = lens_key(restricted);
      k.insert(k.end(), rk.begin(), rk.end());
    }
    return k;
  }));
  return r;
}

}  // namespace polydyn
