#include "polydyn/category.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "polydyn/error.hpp"
#include "polydyn/label.hpp"

namespace polydyn {

FinCat::FinCat(FinSet objects, std::vector<Morphism> morphisms, std::vector<std::size_t> identity,
               std::vector<std::size_t> table)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identity_(std::move(identity)),
      table_(std::move(table)) {
  const std::size_t n = morphisms_.size();
  std::vector<std::string> labels;
  for (const auto& m : morphisms_) {
    if (m.dom >= objects_.size() || m.cod >= objects_.size())
      throw ShapeError("morphism " + m.label + " has an endpoint outside the objects");
    labels.push_back(m.label);
  }
  FinSet check_unique(labels);
  if (identity_.size() != objects_.size()) throw ShapeError("one identity per object required");
  for (std::size_t x = 0; x < identity_.size(); ++x)
    if (identity_[x] >= n || morphisms_[identity_[x]].dom != x || morphisms_[identity_[x]].cod != x)
      throw ShapeError("identity of " + objects_[x] + " is not an endomorphism of it");
  if (table_.size() != n * n) throw ShapeError("composition table has the wrong size");
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      bool composable = morphisms_[f].cod == morphisms_[g].dom;
      std::size_t h = table_[g * n + f];
      if (composable && h >= n)
        throw ShapeError("composite " + morphisms_[g].label + " o " + morphisms_[f].label + " is missing");
      if (!composable && h != kNone)
        throw ShapeError("composite " + morphisms_[g].label + " o " + morphisms_[f].label +
                         " is defined on a non-composable pair");
    }
  out_.assign(objects_.size(), {});
  out_index_.assign(n, 0);
  for (std::size_t m = 0; m < n; ++m) {
    out_index_[m] = out_[morphisms_[m].dom].size();
    out_[morphisms_[m].dom].push_back(m);
  }
}

std::size_t FinCat::morphism_index(std::string_view label) const {
  for (std::size_t m = 0; m < morphisms_.size(); ++m)
    if (morphisms_[m].label == label) return m;
  throw LabelError("unknown morphism " + std::string(label));
}

Report check_category(const FinCat& k) {
  Report r;
  const auto& ms = k.morphisms();
  auto name = [&](std::size_t m) { return ms[m].label; };
  for (std::size_t f = 0; f < ms.size(); ++f) {
    if (k.compose(f, k.identity(ms[f].dom)) != f) r.violations.push_back("right identity: " + name(f) + " o id");
    if (k.compose(k.identity(ms[f].cod), f) != f) r.violations.push_back("left identity: id o " + name(f));
  }
  for (std::size_t f = 0; f < ms.size(); ++f)
    for (std::size_t g : k.out(ms[f].cod)) {
      std::size_t h = k.compose(g, f);
      if (ms[h].dom != ms[f].dom || ms[h].cod != ms[g].cod)
        r.violations.push_back("typing: " + name(g) + " o " + name(f) + " = " + name(h));
    }
  if (!r.ok()) return r;
  for (std::size_t f = 0; f < ms.size(); ++f)
    for (std::size_t g : k.out(ms[f].cod))
      for (std::size_t h : k.out(ms[g].cod))
        if (k.compose(k.compose(h, g), f) != k.compose(h, k.compose(g, f)))
          r.violations.push_back("associativity: " + name(h) + ", " + name(g) + ", " + name(f));
  return r;
}

// ---------------------------------------------------------------------------
// Canonical keys

namespace {

// A borrowed view with the FinCat accessors used by the key computation.
struct RawCat {
  std::size_t no;
  const std::vector<FinCat::Morphism>& ms;
  const std::vector<std::size_t>& ids;
  const std::vector<std::size_t>& table;

  std::size_t num_objects() const { return no; }
  std::size_t num_morphisms() const { return ms.size(); }
  const FinCat::Morphism& morphism(std::size_t m) const { return ms[m]; }
  std::size_t identity(std::size_t x) const { return ids[x]; }
  std::size_t compose(std::size_t g, std::size_t f) const { return table[g * ms.size() + f]; }
};

template <class Cat>
struct KeySearch {
  const Cat& k;
  std::vector<std::size_t> best;
  bool have = false;

  // Builds the code for one relabeling, abandoning it once it exceeds the best.
  void consider(const std::vector<std::size_t>& obj_new, const std::vector<std::size_t>& order) {
    const std::size_t n = order.size();
    std::vector<std::size_t> new_of(n);
    for (std::size_t i = 0; i < n; ++i) new_of[order[i]] = i;
    std::size_t pos = 0;
    bool less = !have;
    auto emit = [&](std::size_t v) {
      if (!less) {
        if (v > best[pos]) return false;
        if (v < best[pos]) less = true;
      }
      if (less) {
        if (pos < best.size())
          best[pos] = v;
        else
          best.push_back(v);
      }
      ++pos;
      return true;
    };
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t f = 0; f < n; ++f) {
        std::size_t og = order[g], of = order[f];
        if (k.morphism(of).cod != k.morphism(og).dom) continue;
        if (!emit(new_of[k.compose(og, of)])) return;
      }
    (void)obj_new;
    have = true;
  }
};

}  // namespace

namespace {

// Isomorphism-invariant data of a morphism, used to restrict relabelings.
template <class Cat>
std::vector<std::size_t> signature(const Cat& k, std::size_t m) {
  const std::size_t n = k.num_morphisms();
  std::size_t fix_right = 0, fix_left = 0, absorb_right = 0, absorb_left = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (k.morphism(f).cod == k.morphism(m).dom) {
      std::size_t c = k.compose(m, f);
      fix_right += c == m;
      absorb_right += c == f;
    }
    if (k.morphism(f).dom == k.morphism(m).cod) {
      std::size_t c = k.compose(f, m);
      fix_left += c == m;
      absorb_left += c == f;
    }
  }
  std::vector<std::size_t> sig{fix_right, fix_left, absorb_right, absorb_left};
  if (k.morphism(m).dom == k.morphism(m).cod) {
    // Index and period of the powers of m.
    std::vector<std::size_t> powers{m};
    while (true) {
      std::size_t next = k.compose(m, powers.back());
      auto it = std::find(powers.begin(), powers.end(), next);
      if (it != powers.end()) {
        sig.push_back(static_cast<std::size_t>(it - powers.begin()));
        sig.push_back(powers.size());
        break;
      }
      powers.push_back(next);
    }
  }
  return sig;
}

template <class Cat>
std::vector<std::size_t> canonical_key_of(const Cat& k) {
  const std::size_t no = k.num_objects();
  const std::size_t nm = k.num_morphisms();
  std::vector<std::vector<std::size_t>> sig(nm);
  for (std::size_t m = 0; m < nm; ++m) sig[m] = signature(k, m);
  std::vector<std::size_t> perm(no);
  std::iota(perm.begin(), perm.end(), 0);

  std::vector<std::size_t> best_prefix;
  std::vector<std::size_t> best;
  bool have = false;
  do {
    // perm[new] = old object
    std::vector<std::size_t> obj_new(no);
    for (std::size_t i = 0; i < no; ++i) obj_new[perm[i]] = i;
    std::vector<std::size_t> prefix{no, nm};
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t x = 0; x < no; ++x)
      for (std::size_t y = 0; y < no; ++y) {
        std::vector<std::size_t> g;
        for (std::size_t m = 0; m < nm; ++m)
          if (k.morphism(m).dom == perm[x] && k.morphism(m).cod == perm[y] && m != k.identity(perm[x])) g.push_back(m);
        prefix.push_back(g.size());
        // Split the hom-set into runs of equal signature, in signature order.
        std::stable_sort(g.begin(), g.end(), [&](std::size_t a, std::size_t b) { return sig[a] < sig[b]; });
        std::size_t start = 0;
        for (std::size_t i = 1; i <= g.size(); ++i)
          if (i == g.size() || sig[g[i]] != sig[g[start]]) {
            for (auto v : sig[g[start]]) prefix.push_back(v);
            prefix.push_back(i - start);
            groups.emplace_back(g.begin() + start, g.begin() + i);
            start = i;
          }
      }
    if (have && prefix > best_prefix) continue;
    KeySearch<Cat> search{k, {}, false};
    if (have && prefix == best_prefix) {
      search.best = best;
      search.have = true;
    }
    // Odometer over permutations of each hom-set.
    std::function<void(std::size_t)> rec = [&](std::size_t gi) {
      if (gi == groups.size()) {
        std::vector<std::size_t> order;
        for (std::size_t x = 0; x < no; ++x) order.push_back(k.identity(perm[x]));
        for (const auto& g : groups) order.insert(order.end(), g.begin(), g.end());
        search.consider(obj_new, order);
        return;
      }
      std::sort(groups[gi].begin(), groups[gi].end());
      do rec(gi + 1);
      while (std::next_permutation(groups[gi].begin(), groups[gi].end()));
    };
    rec(0);
    if (!have || prefix < best_prefix || search.best < best) {
      best_prefix = prefix;
      best = search.best;
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<std::size_t> key = best_prefix;
  key.insert(key.end(), best.begin(), best.end());
  return key;
}

}  // namespace

std::vector<std::size_t> canonical_key(const FinCat& k) { return canonical_key_of(k); }

bool isomorphic(const FinCat& a, const FinCat& b) {
  if (a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms()) return false;
  return canonical_key(a) == canonical_key(b);
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

std::string object_name(std::size_t x) { return std::string(1, static_cast<char>('A' + x)); }

void tables_for(const std::vector<std::vector<std::size_t>>& hom, std::set<std::vector<std::size_t>>& seen,
                std::vector<FinCat>& out) {
  const std::size_t no = hom.size();
  std::vector<std::string> objs;
  for (std::size_t x = 0; x < no; ++x) objs.push_back(object_name(x));
  std::vector<FinCat::Morphism> ms;
  std::vector<std::size_t> ids;
  for (std::size_t x = 0; x < no; ++x) {
    ids.push_back(ms.size());
    ms.push_back({"id" + objs[x], x, x});
  }
  std::size_t counter = 0;
  for (std::size_t x = 0; x < no; ++x)
    for (std::size_t y = 0; y < no; ++y)
      for (std::size_t c = (x == y ? 1 : 0); c < hom[x][y]; ++c) ms.push_back({"f" + std::to_string(++counter), x, y});
  const std::size_t n = ms.size();

  std::vector<std::vector<std::size_t>> homset(no * no);
  for (std::size_t m = 0; m < n; ++m) homset[ms[m].dom * no + ms[m].cod].push_back(m);

  constexpr std::size_t none = FinCat::kNone;
  std::vector<std::size_t> table(n * n, none);
  auto at = [&](std::size_t g, std::size_t f) -> std::size_t& { return table[g * n + f]; };
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) {
      if (ms[f].cod != ms[g].dom) continue;
      if (g == ids[ms[g].dom])
        at(g, f) = f;
      else if (f == ids[ms[f].dom])
        at(g, f) = g;
      else
        cells.push_back({g, f});
    }
  // Grow the table one morphism at a time so associativity prunes early.
  std::stable_sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    return std::max(a.first, a.second) < std::max(b.first, b.second);
  });

  // Checks every associativity instance that involves the cell (g,f) and is fully determined.
  auto consistent = [&](std::size_t g, std::size_t f) {
    std::size_t gf = at(g, f);
    for (std::size_t e = 0; e < n; ++e) {  // (g f) e = g (f e)
      if (ms[e].cod != ms[f].dom) continue;
      std::size_t fe = at(f, e), l = at(gf, e);
      if (fe == none || l == none) continue;
      std::size_t r = at(g, fe);
      if (r != none && r != l) return false;
    }
    for (std::size_t a = 0; a < n; ++a) {  // (a g) f = a (g f)
      if (ms[a].dom != ms[g].cod) continue;
      std::size_t ag = at(a, g), r = at(a, gf);
      if (ag == none || r == none) continue;
      std::size_t l = at(ag, f);
      if (l != none && l != r) return false;
    }
    for (std::size_t a = 0; a < n; ++a)  // cell as (a b) e with a b = g, e = f
      for (std::size_t b = 0; b < n; ++b) {
        if (ms[b].cod != ms[a].dom || at(a, b) != g) continue;
        std::size_t be = at(b, f);
        if (be == none) continue;
        std::size_t r = at(a, be);
        if (r != none && r != gf) return false;
      }
    for (std::size_t b = 0; b < n; ++b)  // cell as a (b e) with a = g, b e = f
      for (std::size_t e = 0; e < n; ++e) {
        if (ms[e].cod != ms[b].dom || at(b, e) != f) continue;
        std::size_t ab = at(g, b);
        if (ab == none) continue;
        std::size_t l = at(ab, e);
        if (l != none && l != gf) return false;
      }
    return true;
  };

  std::function<void(std::size_t)> fill = [&](std::size_t c) {
    if (c == cells.size()) {
      if (seen.insert(canonical_key_of(RawCat{no, ms, ids, table})).second)
        out.emplace_back(FinSet(objs), ms, ids, table);
      return;
    }
    auto [g, f] = cells[c];
    for (std::size_t h : homset[ms[f].dom * no + ms[g].cod]) {
      at(g, f) = h;
      if (consistent(g, f)) fill(c + 1);
    }
    at(g, f) = none;
  };
  fill(0);
}

}  // namespace

std::vector<FinCat> category_catalog(std::size_t max_objects, std::size_t max_morphisms) {
  std::vector<FinCat> out;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t no = 1; no <= max_objects; ++no) {
    if (max_morphisms < no) break;
    std::vector<std::vector<std::size_t>> hom(no, std::vector<std::size_t>(no, 0));
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t x = 0; x < no; ++x)
      for (std::size_t y = 0; y < no; ++y) cells.push_back({x, y});
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t c, std::size_t total) {
      if (c == cells.size()) {
        // Composable pairs need a nonempty hom-set for their composite.
        for (std::size_t x = 0; x < no; ++x)
          for (std::size_t y = 0; y < no; ++y)
            for (std::size_t z = 0; z < no; ++z)
              if (hom[x][y] && hom[y][z] && !hom[x][z]) return;
        tables_for(hom, seen, out);
        return;
      }
      auto [x, y] = cells[c];
      std::size_t lo = x == y ? 1 : 0;
      for (std::size_t h = lo; total + h <= max_morphisms; ++h) {
        hom[x][y] = h;
        choose(c + 1, total + h);
      }
      hom[x][y] = 0;
    };
    choose(0, 0);
  }
  return out;
}

FinCat monoid_category(const std::vector<std::string>& elements, const std::vector<std::vector<std::size_t>>& mul) {
  const std::size_t n = elements.size();
  std::vector<FinCat::Morphism> ms;
  for (const auto& e : elements) ms.push_back({e, 0, 0});
  std::vector<std::size_t> table(n * n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) table[g * n + f] = mul[g][f];
  return FinCat(FinSet({"*"}), ms, {0}, table);
}

FinCat discrete_category(const FinSet& objects) {
  std::vector<FinCat::Morphism> ms;
  std::vector<std::size_t> ids;
  const std::size_t n = objects.size();
  for (std::size_t x = 0; x < n; ++x) {
    ids.push_back(x);
    ms.push_back({"id" + objects[x], x, x});
  }
  std::vector<std::size_t> table(n * n, FinCat::kNone);
  for (std::size_t x = 0; x < n; ++x) table[x * n + x] = x;
  return FinCat(objects, ms, ids, table);
}

FinCat contractible_category(const FinSet& objects) {
  const std::size_t s = objects.size();
  std::vector<FinCat::Morphism> ms;
  std::vector<std::size_t> ids;
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) {
      if (a == b) ids.push_back(ms.size());
      ms.push_back({tuple_label({objects[a], objects[b]}), a, b});
    }
  const std::size_t n = ms.size();
  std::vector<std::size_t> table(n * n, FinCat::kNone);
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g)
      if (ms[f].cod == ms[g].dom) table[g * n + f] = ms[f].dom * s + ms[g].cod;
  return FinCat(objects, ms, ids, table);
}

// ---------------------------------------------------------------------------
// Cofunctors

std::size_t Cofunctor::lift(std::size_t c, std::size_t g) const { return pull[c][tgt.out_index(g)]; }

Cofunctor identity_cofunctor(const FinCat& k) {
  Cofunctor f{k, k, {}, {}};
  for (std::size_t x = 0; x < k.num_objects(); ++x) {
    f.on_obj.push_back(x);
    f.pull.push_back(k.out(x));
  }
  return f;
}

Report check_cofunctor(const Cofunctor& f) {
  Report r;
  const FinCat& c = f.src;
  const FinCat& d = f.tgt;
  if (f.on_obj.size() != c.num_objects() || f.pull.size() != c.num_objects()) {
    r.violations.push_back("shape: on-objects or lifts not indexed by the source objects");
    return r;
  }
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    if (f.on_obj[x] >= d.num_objects() || f.pull[x].size() != d.out(f.on_obj[x]).size()) {
      r.violations.push_back("shape: lifts at " + c.objects()[x] + " do not match the target");
      return r;
    }
    for (std::size_t m : f.pull[x])
      if (m >= c.num_morphisms() || c.morphism(m).dom != x) {
        r.violations.push_back("typing: a lift at " + c.objects()[x] + " does not start there");
        return r;
      }
  }
  auto obj = [&](std::size_t x) { return c.objects()[x]; };
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    std::size_t fx = f.on_obj[x];
    if (f.lift(x, d.identity(fx)) != c.identity(x)) r.violations.push_back("law i at " + obj(x));
    for (std::size_t g : d.out(fx)) {
      std::size_t lifted = f.lift(x, g);
      std::size_t x2 = c.morphism(lifted).cod;
      if (f.on_obj[x2] != d.morphism(g).cod) {
        r.violations.push_back("law ii at " + obj(x) + " for " + d.morphism(g).label);
        continue;
      }
      for (std::size_t g2 : d.out(d.morphism(g).cod)) {
        std::size_t lhs = c.compose(f.lift(x2, g2), lifted);
        if (lhs != f.lift(x, d.compose(g2, g)))
          r.violations.push_back("law iii at " + obj(x) + " for " + d.morphism(g2).label + " after " +
                                 d.morphism(g).label);
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json category_to_json(const FinCat& k) {
  nlohmann::json objs = k.objects().elements();
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : k.morphisms())
    ms.push_back({{"label", m.label}, {"dom", k.objects()[m.dom]}, {"cod", k.objects()[m.cod]}});
  nlohmann::json ids = nlohmann::json::object();
  for (std::size_t x = 0; x < k.num_objects(); ++x) ids[k.objects()[x]] = k.morphism(k.identity(x)).label;
  nlohmann::json comp = nlohmann::json::array();
  for (std::size_t f = 0; f < k.num_morphisms(); ++f)
    for (std::size_t g : k.out(k.morphism(f).cod))
      comp.push_back({k.morphism(g).label, k.morphism(f).label, k.morphism(k.compose(g, f)).label});
  return {{"objects", objs}, {"morphisms", ms}, {"identities", ids}, {"compose", comp}};
}

FinCat category_from_json(const nlohmann::json& j) {
  try {
    FinSet objs(j.at("objects").get<std::vector<std::string>>());
    std::vector<FinCat::Morphism> ms;
    std::vector<std::string> labels;
    for (const auto& m : j.at("morphisms")) {
      ms.push_back({m.at("label").get<std::string>(), objs.index_of(m.at("dom").get<std::string>()),
                    objs.index_of(m.at("cod").get<std::string>())});
      labels.push_back(ms.back().label);
    }
    FinSet mset(labels);
    std::vector<std::size_t> ids;
    for (const auto& o : objs) ids.push_back(mset.index_of(j.at("identities").at(o).get<std::string>()));
    const std::size_t n = ms.size();
    std::vector<std::size_t> table(n * n, FinCat::kNone);
    for (const auto& row : j.at("compose")) {
      std::size_t g = mset.index_of(row.at(0).get<std::string>());
      std::size_t f = mset.index_of(row.at(1).get<std::string>());
      table[g * n + f] = mset.index_of(row.at(2).get<std::string>());
    }
    return FinCat(objs, ms, ids, table);
  } catch (const nlohmann::json::exception& e) {
    throw ShapeError(std::string("malformed category JSON: ") + e.what());
  }
}

}  // namespace polydyn
