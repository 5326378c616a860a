#include "polydyn/lens.hpp"

#include "polydyn/error.hpp"

namespace polydyn {

Lens::Lens(FinPoly dom, FinPoly cod, std::vector<std::size_t> on_pos,
           std::vector<std::vector<std::size_t>> on_dir)
    : dom_(std::move(dom)), cod_(std::move(cod)), on_pos_(std::move(on_pos)), on_dir_(std::move(on_dir)) {
  if (on_pos_.size() != dom_.size() || on_dir_.size() != dom_.size())
    throw ShapeError("lens tables must be indexed by the domain positions");
  for (std::size_t i = 0; i < dom_.size(); ++i) {
    if (on_pos_[i] >= cod_.size()) throw ShapeError("lens sends position '" + dom_.label(i) + "' outside its codomain");
    const FinSet& cd = cod_.dirs(on_pos_[i]);
    if (on_dir_[i].size() != cd.size())
      throw ShapeError("lens on-directions at '" + dom_.label(i) + "' does not match the target position");
    for (auto d : on_dir_[i])
      if (d >= dom_.dirs(i).size())
        throw ShapeError("lens on-directions at '" + dom_.label(i) + "' leaves the domain directions");
  }
}

Lens Lens::from_labels(FinPoly dom, FinPoly cod, const PosMap& on_pos, const DirMap& on_dir) {
  return from_rules(
      dom, cod,
      [&](std::size_t i) -> std::string {
        auto it = on_pos.find(dom.label(i));
        if (it == on_pos.end()) throw ShapeError("onPos undefined at '" + dom.label(i) + "'");
        return it->second;
      },
      [&](std::size_t i, const std::string& e) -> std::string {
        auto it = on_dir.find(dom.label(i));
        if (it == on_dir.end()) throw ShapeError("onDir undefined at '" + dom.label(i) + "'");
        auto jt = it->second.find(e);
        if (jt == it->second.end())
          throw ShapeError("onDir at '" + dom.label(i) + "' undefined on '" + e + "'");
        return jt->second;
      });
}

Lens Lens::from_rules(FinPoly dom, FinPoly cod, const std::function<std::string(std::size_t)>& pos,
                      const std::function<std::string(std::size_t, const std::string&)>& dir) {
  std::vector<std::size_t> op(dom.size());
  std::vector<std::vector<std::size_t>> od(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    std::string target = pos(i);
    auto j = cod.find(target);
    if (!j) throw ShapeError("lens target position '" + target + "' is not a position of the codomain");
    op[i] = *j;
    const FinSet& cd = cod.dirs(*j);
    od[i].resize(cd.size());
    for (std::size_t e = 0; e < cd.size(); ++e) {
      std::string back = dir(i, cd[e]);
      auto d = dom.dirs(i).find(back);
      if (!d)
        throw ShapeError("lens sends direction '" + cd[e] + "' to '" + back + "', not a direction at '" +
                         dom.label(i) + "'");
      od[i][e] = *d;
    }
  }
  return Lens(std::move(dom), std::move(cod), std::move(op), std::move(od));
}

const std::string& Lens::pos_image(std::string_view dom_pos) const {
  return cod_.label(on_pos_[dom_.index_of(dom_pos)]);
}

const std::string& Lens::dir_back(std::string_view dom_pos, std::string_view cod_dir) const {
  std::size_t i = dom_.index_of(dom_pos);
  std::size_t e = cod_.dirs(on_pos_[i]).index_of(cod_dir);
  return dom_.dirs(i)[on_dir_[i][e]];
}

SetFn Lens::on_positions() const { return SetFn(dom_.positions(), cod_.positions(), on_pos_); }

SetFn Lens::on_directions(std::size_t i) const {
  return SetFn(cod_.dirs(on_pos_[i]), dom_.dirs(i), on_dir_[i]);
}

bool operator==(const Lens& a, const Lens& b) {
  if (!(a.dom_ == b.dom_) || !(a.cod_ == b.cod_)) return false;
  if (a.dom_.same_layout(b.dom_) && a.cod_.same_layout(b.cod_))
    return a.on_pos_ == b.on_pos_ && a.on_dir_ == b.on_dir_;
  for (std::size_t i = 0; i < a.dom_.size(); ++i) {
    std::size_t bi = b.dom_.index_of(a.dom_.label(i));
    const std::string& target = a.cod_.label(a.on_pos_[i]);
    if (b.cod_.label(b.on_pos_[bi]) != target) return false;
    const FinSet& cd = a.cod_.dirs(a.on_pos_[i]);
    const FinSet& bcd = b.cod_.dirs(b.on_pos_[bi]);
    for (std::size_t e = 0; e < cd.size(); ++e) {
      std::size_t be = bcd.index_of(cd[e]);
      if (a.dom_.dirs(i)[a.on_dir_[i][e]] != b.dom_.dirs(bi)[b.on_dir_[bi][be]]) return false;
    }
  }
  return true;
}

Lens lens_id(const FinPoly& p) {
  std::vector<std::size_t> op(p.size());
  std::vector<std::vector<std::size_t>> od(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    op[i] = i;
    od[i].resize(p.dirs(i).size());
    for (std::size_t d = 0; d < od[i].size(); ++d) od[i][d] = d;
  }
  return Lens(p, p, std::move(op), std::move(od));
}

Lens relayout(const Lens& f, const FinPoly& dom, const FinPoly& cod) {
  if (!(f.dom() == dom) || !(f.cod() == cod)) throw ShapeError("relayout needs strictly equal interfaces");
  if (f.dom().same_layout(dom) && f.cod().same_layout(cod)) return Lens(dom, cod, f.on_pos(), f.on_dir_table());
  return Lens::from_rules(
      dom, cod, [&](std::size_t i) { return f.pos_image(dom.label(i)); },
      [&](std::size_t i, const std::string& e) { return f.dir_back(dom.label(i), e); });
}

Lens lens_compose(const Lens& g, const Lens& f) {
  if (!(f.cod() == g.dom())) throw ShapeError("cannot compose lenses: interface mismatch");
  const Lens gg = g.dom().same_layout(f.cod()) ? g : relayout(g, f.cod(), g.cod());
  std::vector<std::size_t> op(f.dom().size());
  std::vector<std::vector<std::size_t>> od(f.dom().size());
  for (std::size_t i = 0; i < op.size(); ++i) {
    std::size_t mid = f.on_pos(i);
    op[i] = gg.on_pos(mid);
    const auto& gback = gg.on_dir(mid);
    od[i].resize(gback.size());
    for (std::size_t e = 0; e < gback.size(); ++e) od[i][e] = f.on_dir(i, gback[e]);
  }
  return Lens(f.dom(), gg.cod(), std::move(op), std::move(od));
}

bool is_epi(const Lens& f) {
  if (!f.on_positions().surjective()) return false;
  // For each target position, directions there must be separated jointly by
  // the on-directions maps of the positions lying over it.
  const FinPoly& q = f.cod();
  for (std::size_t j = 0; j < q.size(); ++j) {
    std::size_t n = q.dirs(j).size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        bool separated = false;
        for (std::size_t i = 0; i < f.dom().size() && !separated; ++i)
          if (f.on_pos(i) == j && f.on_dir(i, a) != f.on_dir(i, b)) separated = true;
        if (!separated) return false;
      }
    }
  }
  return true;
}

bool is_vertical(const Lens& f) {
  if (!(f.dom().positions() == f.cod().positions())) return false;
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    if (f.cod().label(f.on_pos(i)) != f.dom().label(i)) return false;
  return true;
}

bool is_cartesian(const Lens& f) {
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    if (!f.on_directions(i).bijective()) return false;
  return true;
}

bool is_invertible(const Lens& f) { return f.on_positions().bijective() && is_cartesian(f); }

Lens inverse(const Lens& f) {
  if (!is_invertible(f)) throw ShapeError("lens is not invertible");
  const FinPoly& p = f.dom();
  const FinPoly& q = f.cod();
  std::vector<std::size_t> op(q.size());
  std::vector<std::vector<std::size_t>> od(q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t j = f.on_pos(i);
    op[j] = i;
    od[j].assign(p.dirs(i).size(), 0);
    for (std::size_t e = 0; e < q.dirs(j).size(); ++e) od[j][f.on_dir(i, e)] = e;
  }
  return Lens(q, p, std::move(op), std::move(od));
}

}  // namespace polydyn
