#include <array>
#include <map>

#include "polydyn/algebra.hpp"
#include "polydyn/error.hpp"
#include "polydyn/label.hpp"

namespace polydyn {

namespace {

constexpr std::size_t kFree = SIZE_MAX;  // a direction of r sent to the y summand

// Index tables shared by both closures. Positions of the closure are tuples of
// components (k, phi) with k a position of r and phi a function on r_k.
struct Common {
  FinPoly p, q, r, source, target;
  std::vector<std::vector<std::size_t>> src;         // [i][j] -> source position
  std::vector<std::pair<std::size_t, std::size_t>> pair;  // source position -> (i, j)
  std::vector<std::vector<std::size_t>> comp_pos;    // [P][j] -> position of r
  std::vector<std::vector<std::vector<std::size_t>>> comp_phi;  // [P][j][e]
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> dirs;  // [P][dir] -> (j, e)
  std::vector<std::vector<std::vector<std::size_t>>> dir_index;  // [P][j][e] -> dir, or kFree
  std::map<std::vector<std::size_t>, std::size_t> index;         // flattened components -> P

  // `phi_of(j, value)` reads the index of a component value over q_j.
  template <class PhiOf>
  void build(PhiOf phi_of) {
    src.assign(p.size(), std::vector<std::size_t>(q.size()));
    pair.resize(source.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) {
        std::size_t s = source.index_of(tuple_label({p.label(i), q.label(j)}));
        src[i][j] = s;
        pair[s] = {i, j};
      }
    const std::size_t n = target.size();
    comp_pos.resize(n);
    comp_phi.resize(n);
    dirs.resize(n);
    dir_index.resize(n);
    for (std::size_t P = 0; P < n; ++P) {
      Label l = parse_label(target.label(P));
      std::vector<std::size_t> key;
      for (std::size_t j = 0; j < q.size(); ++j) {
        const Label& c = l[j];
        std::size_t k = r.index_of(c[0].render());
        std::vector<std::size_t> phi;
        for (const auto& e : r.dirs(k)) phi.push_back(phi_of(j, c[1].at(e)));
        key.push_back(k);
        key.insert(key.end(), phi.begin(), phi.end());
        comp_pos[P].push_back(k);
        comp_phi[P].push_back(std::move(phi));
        dir_index[P].emplace_back(r.dirs(k).size(), kFree);
      }
      const FinSet& ds = target.dirs(P);
      for (std::size_t d = 0; d < ds.size(); ++d) {
        Label dl = parse_label(ds[d]);
        std::size_t j = dl.tag;
        std::size_t e = r.dirs(comp_pos[P][j]).index_of(dl.payload()[0].render());
        dirs[P].push_back({j, e});
        dir_index[P][j][e] = d;
      }
      index.emplace(std::move(key), P);
    }
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Cartesian

struct CartesianCurry::Tables : Common {
  // [source position][dir] -> (0, direction of p_i) or (1, direction of q_j)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> side;
  std::vector<std::array<std::vector<std::size_t>, 2>> back;  // inverse of side
};

CartesianCurry::CartesianCurry(const FinPoly& p, const FinPoly& q, const FinPoly& r) {
  auto t = std::make_shared<Tables>();
  t->p = p;
  t->q = q;
  t->r = r;
  t->source = product(p, q);
  t->target = cartesian_closure(r, q);
  t->build([&](std::size_t j, const Label& v) {
    return v.tag == 1 ? kFree : q.dirs(j).index_of(v.payload().render());
  });
  t->side.resize(t->source.size());
  t->back.resize(t->source.size());
  for (std::size_t s = 0; s < t->source.size(); ++s) {
    auto [i, j] = t->pair[s];
    t->back[s][0].resize(p.dirs(i).size());
    t->back[s][1].resize(q.dirs(j).size());
    for (const auto& d : t->source.dirs(s)) {
      Label l = parse_label(d);
      const FinSet& from = l.tag == 0 ? p.dirs(i) : q.dirs(j);
      std::size_t idx = from.index_of(l.payload().render());
      t->back[s][l.tag][idx] = t->side[s].size();
      t->side[s].push_back({l.tag, idx});
    }
  }
  t_ = std::move(t);
}

const FinPoly& CartesianCurry::source() const { return t_->source; }
const FinPoly& CartesianCurry::target() const { return t_->target; }

Lens CartesianCurry::curry(const Lens& f) const {
  const Tables& t = *t_;
  if (!(f.dom() == t.source) || !(f.cod() == t.r)) throw ShapeError("curry_cartesian expects a lens p x q -> r");
  Lens g = relayout(f, t.source, t.r);
  std::vector<std::size_t> on_pos(t.p.size());
  std::vector<std::vector<std::size_t>> on_dir(t.p.size());
  std::vector<std::size_t> key;
  for (std::size_t i = 0; i < t.p.size(); ++i) {
    key.clear();
    for (std::size_t j = 0; j < t.q.size(); ++j) {
      std::size_t s = t.src[i][j];
      key.push_back(g.on_pos(s));
      for (std::size_t d : g.on_dir(s)) {
        auto [side, idx] = t.side[s][d];
        key.push_back(side == 0 ? kFree : idx);
      }
    }
    std::size_t P = t.index.at(key);
    on_pos[i] = P;
    for (auto [j, e] : t.dirs[P]) {
      std::size_t s = t.src[i][j];
      on_dir[i].push_back(t.side[s][g.on_dir(s, e)].second);
    }
  }
  return Lens(t.p, t.target, std::move(on_pos), std::move(on_dir));
}

Lens CartesianCurry::uncurry(const Lens& g0) const {
  const Tables& t = *t_;
  if (!(g0.dom() == t.p) || !(g0.cod() == t.target)) throw ShapeError("uncurry_cartesian expects a lens p -> r^q");
  Lens g = relayout(g0, t.p, t.target);
  std::vector<std::size_t> on_pos(t.source.size());
  std::vector<std::vector<std::size_t>> on_dir(t.source.size());
  for (std::size_t s = 0; s < t.source.size(); ++s) {
    auto [i, j] = t.pair[s];
    std::size_t P = g.on_pos(i);
    on_pos[s] = t.comp_pos[P][j];
    const auto& phi = t.comp_phi[P][j];
    for (std::size_t e = 0; e < phi.size(); ++e)
      on_dir[s].push_back(phi[e] == kFree ? t.back[s][0][g.on_dir(i, t.dir_index[P][j][e])] : t.back[s][1][phi[e]]);
  }
  return Lens(t.source, t.r, std::move(on_pos), std::move(on_dir));
}

// ---------------------------------------------------------------------------
// Dirichlet

struct DirichletCurry::Tables : Common {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> split;  // [source][dir] -> (d, d')
  std::vector<std::vector<std::size_t>> join;                           // [source][d * |q_j| + d'] -> dir
};

DirichletCurry::DirichletCurry(const FinPoly& p, const FinPoly& q, const FinPoly& r) {
  auto t = std::make_shared<Tables>();
  t->p = p;
  t->q = q;
  t->r = r;
  t->source = tensor(p, q);
  t->target = dirichlet_closure(q, r);
  t->build([&](std::size_t j, const Label& v) { return q.dirs(j).index_of(v.render()); });
  t->split.resize(t->source.size());
  t->join.resize(t->source.size());
  for (std::size_t s = 0; s < t->source.size(); ++s) {
    auto [i, j] = t->pair[s];
    std::size_t nq = q.dirs(j).size();
    t->join[s].resize(p.dirs(i).size() * nq);
    for (const auto& d : t->source.dirs(s)) {
      Label l = parse_label(d);
      std::size_t a = p.dirs(i).index_of(l[0].render()), b = q.dirs(j).index_of(l[1].render());
      t->join[s][a * nq + b] = t->split[s].size();
      t->split[s].push_back({a, b});
    }
  }
  t_ = std::move(t);
}

const FinPoly& DirichletCurry::source() const { return t_->source; }
const FinPoly& DirichletCurry::target() const { return t_->target; }

Lens DirichletCurry::curry(const Lens& f) const {
  const Tables& t = *t_;
  if (!(f.dom() == t.source) || !(f.cod() == t.r)) throw ShapeError("curry_dirichlet expects a lens p (x) q -> r");
  Lens g = relayout(f, t.source, t.r);
  std::vector<std::size_t> on_pos(t.p.size());
  std::vector<std::vector<std::size_t>> on_dir(t.p.size());
  std::vector<std::size_t> key;
  for (std::size_t i = 0; i < t.p.size(); ++i) {
    key.clear();
    for (std::size_t j = 0; j < t.q.size(); ++j) {
      std::size_t s = t.src[i][j];
      key.push_back(g.on_pos(s));
      for (std::size_t d : g.on_dir(s)) key.push_back(t.split[s][d].second);
    }
    std::size_t P = t.index.at(key);
    on_pos[i] = P;
    for (auto [j, e] : t.dirs[P]) {
      std::size_t s = t.src[i][j];
      on_dir[i].push_back(t.split[s][g.on_dir(s, e)].first);
    }
  }
  return Lens(t.p, t.target, std::move(on_pos), std::move(on_dir));
}

Lens DirichletCurry::uncurry(const Lens& g0) const {
  const Tables& t = *t_;
  if (!(g0.dom() == t.p) || !(g0.cod() == t.target)) throw ShapeError("uncurry_dirichlet expects a lens p -> [q,r]");
  Lens g = relayout(g0, t.p, t.target);
  std::vector<std::size_t> on_pos(t.source.size());
  std::vector<std::vector<std::size_t>> on_dir(t.source.size());
  for (std::size_t s = 0; s < t.source.size(); ++s) {
    auto [i, j] = t.pair[s];
    std::size_t P = g.on_pos(i);
    on_pos[s] = t.comp_pos[P][j];
    const auto& phi = t.comp_phi[P][j];
    std::size_t nq = t.q.dirs(j).size();
    for (std::size_t e = 0; e < phi.size(); ++e)
      on_dir[s].push_back(t.join[s][g.on_dir(i, t.dir_index[P][j][e]) * nq + phi[e]]);
  }
  return Lens(t.source, t.r, std::move(on_pos), std::move(on_dir));
}

// ---------------------------------------------------------------------------

Lens curry_cartesian(const FinPoly& p, const FinPoly& q, const Lens& f) { return CartesianCurry(p, q, f.cod()).curry(f); }
Lens uncurry_cartesian(const FinPoly& p, const FinPoly& q, const FinPoly& r, const Lens& g) {
  return CartesianCurry(p, q, r).uncurry(g);
}
Lens curry_dirichlet(const FinPoly& p, const FinPoly& q, const Lens& f) { return DirichletCurry(p, q, f.cod()).curry(f); }
Lens uncurry_dirichlet(const FinPoly& p, const FinPoly& q, const FinPoly& r, const Lens& g) {
  return DirichletCurry(p, q, r).uncurry(g);
}

}  // namespace polydyn
