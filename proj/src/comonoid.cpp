#include "polydyn/comonoid.hpp"

#include <functional>
#include <unordered_set>

#include "polydyn/error.hpp"
#include "polydyn/json_io.hpp"
#include "polydyn/label.hpp"

namespace polydyn {

Lens Comonoid::counit_lens() const {
  std::vector<std::vector<std::size_t>> dirs;
  for (auto e : counit) dirs.push_back({e});
  return Lens(carrier, y(), std::vector<std::size_t>(carrier.size(), 0), std::move(dirs));
}

Lens Comonoid::comult_lens(std::size_t cap) const {
  const FinPoly& c = carrier;
  return Lens::from_rules(
      c, compose(c, c, cap),
      [&](std::size_t i) {
        std::vector<std::pair<std::string, std::string>> entries;
        const FinSet& ds = c.dirs(root[i]);
        for (std::size_t d = 0; d < ds.size(); ++d) entries.emplace_back(ds[d], c.label(next[i][d]));
        return tuple_label({c.label(root[i]), map_label(entries)});
      },
      [&](std::size_t i, const std::string& dir) {
        Label l = parse_label(dir);
        std::size_t d = c.dirs(root[i]).index_of(l[0].render());
        std::size_t e = c.dirs(next[i][d]).index_of(l[1].render());
        return c.dirs(i)[back[i][d][e]];
      });
}

Comonoid Comonoid::from_lenses(const Lens& counit, const Lens& comult) {
  const FinPoly& c = counit.dom();
  if (!(counit.cod() == y())) throw ShapeError("counit must land in y");
  if (!(comult.dom() == c)) throw ShapeError("counit and comultiplication have different carriers");
  if (!(comult.cod() == compose(c, c))) throw ShapeError("comultiplication must land in C o C");
  Comonoid out{c, {}, {}, {}, {}};
  Lens eps = relayout(counit, c, y());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.counit.push_back(eps.on_dir(i, 0));
    Label pos = parse_label(comult.pos_image(c.label(i)));
    std::size_t r = c.index_of(pos[0].render());
    out.root.push_back(r);
    std::vector<std::size_t> nx;
    std::vector<std::vector<std::size_t>> bk;
    for (const auto& d : c.dirs(r)) {
      std::size_t j = c.index_of(pos[1].at(d).render());
      nx.push_back(j);
      std::vector<std::size_t> row;
      for (const auto& e : c.dirs(j))
        row.push_back(c.dirs(i).index_of(comult.dir_back(c.label(i), tuple_label({d, e}))));
      bk.push_back(std::move(row));
    }
    out.next.push_back(std::move(nx));
    out.back.push_back(std::move(bk));
  }
  return out;
}

namespace {

bool well_shaped(const Comonoid& c, Report& r) {
  const FinPoly& p = c.carrier;
  const std::size_t n = p.size();
  if (c.counit.size() != n || c.root.size() != n || c.next.size() != n || c.back.size() != n) {
    r.violations.push_back("shape: structure maps not indexed by the carrier positions");
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& at = p.label(i);
    if (c.counit[i] >= p.dirs(i).size()) {
      r.violations.push_back("shape: counit has no direction at " + at);
      return false;
    }
    if (c.root[i] >= n || c.next[i].size() != p.dirs(c.root[i]).size() || c.back[i].size() != c.next[i].size()) {
      r.violations.push_back("shape: comultiplication malformed at " + at);
      return false;
    }
    for (std::size_t d = 0; d < c.next[i].size(); ++d) {
      std::size_t j = c.next[i][d];
      if (j >= n || c.back[i][d].size() != p.dirs(j).size()) {
        r.violations.push_back("shape: comultiplication malformed at " + at);
        return false;
      }
      for (auto v : c.back[i][d])
        if (v >= p.dirs(i).size()) {
          r.violations.push_back("shape: comultiplication malformed at " + at);
          return false;
        }
    }
  }
  return true;
}

}  // namespace

Report check_comonoid_laws(const Comonoid& c) {
  Report r;
  if (!well_shaped(c, r)) return r;
  const FinPoly& p = c.carrier;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::string& at = p.label(i);
    const std::size_t rt = c.root[i];
    // (eps o id) . delta = unitor
    std::size_t u = c.counit[rt];
    if (c.next[i][u] != i) {
      r.violations.push_back("left counit at " + at + ": position");
    } else {
      for (std::size_t e = 0; e < p.dirs(i).size(); ++e)
        if (c.back[i][u][e] != e) r.violations.push_back("left counit at " + at + ": direction " + p.dirs(i)[e]);
    }
    // (id o eps) . delta = unitor
    if (rt != i) {
      r.violations.push_back("right counit at " + at + ": position");
    } else {
      for (std::size_t d = 0; d < p.dirs(i).size(); ++d)
        if (c.back[i][d][c.counit[c.next[i][d]]] != d)
          r.violations.push_back("right counit at " + at + ": direction " + p.dirs(i)[d]);
    }
    // assoc . (delta o id) . delta = (id o delta) . delta, compared as depth-3 trees
    if (c.root[rt] != rt) {
      r.violations.push_back("coassociativity at " + at + ": root");
      continue;
    }
    for (std::size_t d = 0; d < p.dirs(rt).size(); ++d) {
      std::size_t j = c.next[i][d];
      if (c.next[rt][d] != c.root[j]) {
        r.violations.push_back("coassociativity at " + at + ": level 1 under " + p.dirs(rt)[d]);
        continue;
      }
      for (std::size_t d2 = 0; d2 < p.dirs(c.root[j]).size(); ++d2) {
        std::size_t via = c.back[rt][d][d2];
        if (c.next[i][via] != c.next[j][d2]) {
          r.violations.push_back("coassociativity at " + at + ": level 2 under " + p.dirs(rt)[d]);
          continue;
        }
        for (std::size_t e = 0; e < p.dirs(c.next[j][d2]).size(); ++e)
          if (c.back[i][via][e] != c.back[i][d][c.back[j][d2][e]])
            r.violations.push_back("coassociativity at " + at + ": directions under " + p.dirs(rt)[d]);
      }
    }
  }
  return r;
}

FinCat comonoid_to_category(const Comonoid& c) {
  Report r = check_comonoid_laws(c);
  if (!r.ok()) throw ShapeError("not a comonoid: " + r.violations.front());
  const FinPoly& p = c.carrier;
  std::unordered_set<std::string> seen;
  bool unique = true;
  std::vector<std::size_t> start;
  std::size_t total = 0;
  for (const auto& pos : p) {
    start.push_back(total);
    total += pos.dirs.size();
    for (const auto& d : pos.dirs) unique = seen.insert(d).second && unique;
  }
  std::vector<FinCat::Morphism> ms;
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < p.size(); ++i) {
    ids.push_back(start[i] + c.counit[i]);
    for (std::size_t d = 0; d < p.dirs(i).size(); ++d)
      ms.push_back({unique ? p.dirs(i)[d] : tuple_label({p.label(i), p.dirs(i)[d]}), i, c.next[i][d]});
  }
  std::vector<std::size_t> table(total * total, FinCat::kNone);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t d = 0; d < p.dirs(i).size(); ++d) {
      std::size_t j = c.next[i][d];
      for (std::size_t e = 0; e < p.dirs(j).size(); ++e)
        table[(start[j] + e) * total + start[i] + d] = start[i] + c.back[i][d][e];
    }
  return FinCat(p.positions(), ms, ids, table);
}

Comonoid category_to_comonoid(const FinCat& k) {
  Report r = check_category(k);
  if (!r.ok()) throw ShapeError("not a category: " + r.violations.front());
  Comonoid c;
  std::vector<Position> positions;
  for (std::size_t x = 0; x < k.num_objects(); ++x) {
    std::vector<std::string> dirs;
    for (std::size_t m : k.out(x)) dirs.push_back(k.morphism(m).label);
    positions.push_back({k.objects()[x], FinSet(std::move(dirs))});
    c.counit.push_back(k.out_index(k.identity(x)));
    c.root.push_back(x);
    std::vector<std::size_t> nx;
    std::vector<std::vector<std::size_t>> bk;
    for (std::size_t f : k.out(x)) {
      std::size_t y = k.morphism(f).cod;
      nx.push_back(y);
      std::vector<std::size_t> row;
      for (std::size_t g : k.out(y)) row.push_back(k.out_index(k.compose(g, f)));
      bk.push_back(std::move(row));
    }
    c.next.push_back(std::move(nx));
    c.back.push_back(std::move(bk));
  }
  c.carrier = FinPoly(std::move(positions));
  return c;
}

Comonoid contractible(const FinSet& s) {
  Comonoid c;
  c.carrier = monomial(s, s);
  const std::size_t n = s.size();
  std::vector<std::size_t> all(n);
  for (std::size_t t = 0; t < n; ++t) all[t] = t;
  for (std::size_t a = 0; a < n; ++a) {
    c.counit.push_back(a);
    c.root.push_back(a);
    c.next.push_back(all);
    c.back.push_back(std::vector<std::vector<std::size_t>>(n, all));
  }
  return c;
}

Comonoid trivial_comonoid() { return {y(), {0}, {0}, {{0}}, {{{0}}}}; }

Comonoid comonoid_sum(const Comonoid& c, const Comonoid& d) {
  Comonoid out = c;
  out.carrier = sum(c.carrier, d.carrier);
  const std::size_t off = c.carrier.size();
  for (std::size_t j = 0; j < d.carrier.size(); ++j) {
    out.counit.push_back(d.counit[j]);
    out.root.push_back(d.root[j] + off);
    std::vector<std::size_t> nx;
    for (auto v : d.next[j]) nx.push_back(v + off);
    out.next.push_back(std::move(nx));
    out.back.push_back(d.back[j]);
  }
  return out;
}

Comonoid comonoid_tensor(const Comonoid& c, const Comonoid& d) { return comonoid_tensor_all({c, d}); }

Comonoid comonoid_tensor_all(const std::vector<Comonoid>& cs) {
  const std::size_t n = cs.size();
  std::vector<FinPoly> carriers;
  for (const auto& c : cs) carriers.push_back(c.carrier);
  Comonoid out;
  out.carrier = tensor_all(carriers);

  // Mixed-radix codes, first factor slowest, matching tensor_all.
  auto pos_code = [&](const std::vector<std::size_t>& idx) {
    std::size_t v = 0;
    for (std::size_t k = 0; k < n; ++k) v = v * carriers[k].size() + idx[k];
    return v;
  };
  auto dir_code = [&](const std::vector<std::size_t>& at, const std::vector<std::size_t>& dirs) {
    std::size_t v = 0;
    for (std::size_t k = 0; k < n; ++k) v = v * carriers[k].dirs(at[k]).size() + dirs[k];
    return v;
  };
  // Calls fn on every direction tuple at the position tuple `at`.
  auto each_dir = [&](const std::vector<std::size_t>& at, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> radix;
    for (std::size_t k = 0; k < n; ++k) radix.push_back(carriers[k].dirs(at[k]).size());
    for (auto r : radix)
      if (r == 0) return;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      fn(idx);
      std::size_t k = n;
      while (k > 0 && ++idx[k - 1] == radix[k - 1]) idx[--k] = 0;
      if (k == 0) return;
    }
  };

  std::vector<std::size_t> radix;
  for (const auto& p : carriers) radix.push_back(p.size());
  for (const auto& p : carriers)
    if (p.empty()) return out;
  std::vector<std::size_t> i(n, 0);
  while (true) {
    std::vector<std::size_t> u(n), r(n);
    for (std::size_t k = 0; k < n; ++k) {
      u[k] = cs[k].counit[i[k]];
      r[k] = cs[k].root[i[k]];
    }
    out.counit.push_back(dir_code(i, u));
    out.root.push_back(pos_code(r));
    std::vector<std::size_t> nx;
    std::vector<std::vector<std::size_t>> bk;
    each_dir(r, [&](const std::vector<std::size_t>& a) {
      std::vector<std::size_t> j(n);
      for (std::size_t k = 0; k < n; ++k) j[k] = cs[k].next[i[k]][a[k]];
      nx.push_back(pos_code(j));
      std::vector<std::size_t> row;
      each_dir(j, [&](const std::vector<std::size_t>& b) {
        std::vector<std::size_t> v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = cs[k].back[i[k]][a[k]][b[k]];
        row.push_back(dir_code(i, v));
      });
      bk.push_back(std::move(row));
    });
    out.next.push_back(std::move(nx));
    out.back.push_back(std::move(bk));
    std::size_t k = n;
    while (k > 0 && ++i[k - 1] == radix[k - 1]) i[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

bool is_comonoid_morphism(const Comonoid& c, const Comonoid& d, const Lens& f0) {
  if (!(f0.dom() == c.carrier) || !(f0.cod() == d.carrier)) throw ShapeError("lens does not run between the carriers");
  Lens f = relayout(f0, c.carrier, d.carrier);
  for (std::size_t i = 0; i < c.carrier.size(); ++i) {
    std::size_t fi = f.on_pos(i);
    if (f.on_dir(i, d.counit[fi]) != c.counit[i]) return false;
    std::size_t r = c.root[i];
    if (d.root[fi] != f.on_pos(r)) return false;
    for (std::size_t a = 0; a < d.next[fi].size(); ++a) {
      std::size_t pulled = f.on_dir(r, a);
      std::size_t j = c.next[i][pulled];
      if (d.next[fi][a] != f.on_pos(j)) return false;
      for (std::size_t b = 0; b < d.back[fi][a].size(); ++b)
        if (f.on_dir(i, d.back[fi][a][b]) != c.back[i][pulled][f.on_dir(j, b)]) return false;
    }
  }
  return true;
}

Cofunctor lens_to_cofunctor(const Comonoid& c, const Comonoid& d, const Lens& f0) {
  Lens f = relayout(f0, c.carrier, d.carrier);
  Cofunctor out{comonoid_to_category(c), comonoid_to_category(d), f.on_pos(), {}};
  for (std::size_t x = 0; x < c.carrier.size(); ++x) {
    std::vector<std::size_t> row;
    for (auto dir : f.on_dir(x)) row.push_back(out.src.out(x)[dir]);
    out.pull.push_back(std::move(row));
  }
  return out;
}

Lens cofunctor_to_lens(const Comonoid& c, const Comonoid& d, const Cofunctor& f) {
  std::vector<std::vector<std::size_t>> dirs;
  for (const auto& row : f.pull) {
    std::vector<std::size_t> r;
    for (auto m : row) r.push_back(f.src.out_index(m));
    dirs.push_back(std::move(r));
  }
  return Lens(c.carrier, d.carrier, f.on_obj, std::move(dirs));
}

CofreeTruncation cofree_truncation(const FinPoly& p, std::size_t depth, std::size_t cap) {
  CofreeTruncation out;
  out.stages.push_back(one());
  for (std::size_t k = 0; k < depth; ++k) {
    out.stages.push_back(product_all({y(), compose(p, out.stages.back(), cap)}, cap));
    if (k == 0)
      out.projections.push_back(to_terminal(out.stages[1]));
    else
      out.projections.push_back(product_lens(lens_id(y()), compose_lens(lens_id(p), out.projections.back())));
  }
  return out;
}

std::vector<std::string> nstep_labels(const Comonoid& c, const Lens& f0, std::size_t n) {
  if (!(f0.dom() == c.carrier)) throw ShapeError("dynamics lens must start at the carrier");
  Lens f = relayout(f0, c.carrier, f0.cod());
  const FinPoly& p = f.cod();
  const std::size_t ns = c.carrier.size();
  std::vector<std::string> cur(ns, "*");
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::string> nxt(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      const std::size_t j = f.on_pos(s);
      if (k == 1) {
        nxt[s] = p.label(j);
        continue;
      }
      std::vector<std::pair<std::string, std::string>> entries;
      for (std::size_t d = 0; d < p.dirs(j).size(); ++d)
        entries.emplace_back(p.dirs(j)[d], cur[c.next[s][f.on_dir(s, d)]]);
      nxt[s] = tuple_label({p.label(j), map_label(entries)});
    }
    cur = std::move(nxt);
  }
  return cur;
}

SetFn nstep_behavior(const Comonoid& c, const Lens& f, std::size_t n, std::size_t cap) {
  FinSet cod = compose_power(f.cod(), n, cap).positions();
  std::vector<std::string> labels = nstep_labels(c, f, n);
  std::vector<std::size_t> map;
  for (const auto& l : labels) map.push_back(cod.index_of(l));
  return SetFn(c.carrier.positions(), cod, std::move(map));
}

nlohmann::json comonoid_to_json(const Comonoid& c) {
  return {{"carrier", poly_to_json(c.carrier)},
          {"counit", lens_to_json(c.counit_lens())},
          {"comult", lens_to_json(c.comult_lens())}};
}

Comonoid comonoid_from_json(const nlohmann::json& j) {
  try {
    return Comonoid::from_lenses(lens_from_json(j.at("counit")), lens_from_json(j.at("comult")));
  } catch (const nlohmann::json::exception& e) {
    throw ShapeError(std::string("malformed comonoid JSON: ") + e.what());
  }
}

}  // namespace polydyn
