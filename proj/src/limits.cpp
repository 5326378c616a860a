#include "polydyn/limits.hpp"

#include <cstdint>
#include <functional>
#include <string>

#include "polydyn/algebra.hpp"
#include "polydyn/error.hpp"
#include "polydyn/finset.hpp"
#include "polydyn/label.hpp"

namespace polydyn {

void check_diagram(const Diagram& d) {
  for (const auto& a : d.arrows) {
    if (a.src >= d.objects.size() || a.dst >= d.objects.size())
      throw ShapeError("diagram arrow refers to a missing object");
    if (!(a.lens.dom() == d.objects[a.src]) || !(a.lens.cod() == d.objects[a.dst]))
      throw ShapeError("diagram arrow does not match its objects");
  }
  for (const auto& a : d.arrows) {
    for (const auto& b : d.arrows) {
      if (a.dst != b.src) continue;
      Lens ba = lens_compose(b.lens, a.lens);
      bool found = a.src == b.dst && ba == lens_id(d.objects[a.src]);
      for (const auto& c : d.arrows)
        if (!found && c.src == a.src && c.dst == b.dst && c.lens == ba) found = true;
      if (!found) throw ShapeError("non-functorial diagram: a composite of listed arrows is missing");
    }
  }
}

Cone limit(const Diagram& d) {
  check_diagram(d);
  const std::size_t n = d.objects.size();

  // Compatible families of positions, by backtracking with the first object slowest.
  std::vector<std::vector<std::size_t>> families;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (k == n) {
      families.push_back(pick);
      return;
    }
    for (std::size_t i = 0; i < d.objects[k].size(); ++i) {
      pick[k] = i;
      bool ok = true;
      for (const auto& a : d.arrows) {
        std::size_t last = std::max(a.src, a.dst);
        if (last == k && a.lens.on_pos(pick[a.src]) != pick[a.dst]) {
          ok = false;
          break;
        }
      }
      if (ok) extend(k + 1);
    }
  };
  extend(0);

  std::vector<Position> positions;
  // class_of[f][k][e]: class index of direction e of object k at family f
  std::vector<std::vector<std::vector<std::size_t>>> class_of;
  for (const auto& fam : families) {
    std::vector<std::string> parts;
    std::vector<FinSet> dir_sets;
    for (std::size_t k = 0; k < n; ++k) {
      parts.push_back(d.objects[k].label(fam[k]));
      dir_sets.push_back(d.objects[k].dirs(fam[k]));
    }
    FinSet total = set_sum(dir_sets);
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) offset[k + 1] = offset[k] + dir_sets[k].size();

    std::vector<std::string> rel;
    std::vector<std::size_t> lhs, rhs;
    for (std::size_t a = 0; a < d.arrows.size(); ++a) {
      const auto& arr = d.arrows[a];
      std::size_t i = fam[arr.src];
      for (std::size_t e = 0; e < dir_sets[arr.dst].size(); ++e) {
        rel.push_back(tuple_label({std::to_string(a), dir_sets[arr.dst][e]}));
        lhs.push_back(offset[arr.src] + arr.lens.on_dir(i, e));
        rhs.push_back(offset[arr.dst] + e);
      }
    }
    FinSet r(rel);
    Coequalizer coeq = coequalizer_set(SetFn(r, total, lhs), SetFn(r, total, rhs));
    std::vector<std::vector<std::size_t>> cls(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t e = 0; e < dir_sets[k].size(); ++e) cls[k].push_back(coeq.projection(offset[k] + e));
    class_of.push_back(std::move(cls));
    positions.push_back({tuple_label(parts), coeq.quotient});
  }

  Cone out{FinPoly(std::move(positions)), {}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::size_t> on_pos;
    std::vector<std::vector<std::size_t>> on_dir;
    for (std::size_t f = 0; f < families.size(); ++f) {
      on_pos.push_back(families[f][k]);
      on_dir.push_back(class_of[f][k]);
    }
    out.legs.emplace_back(out.apex, d.objects[k], std::move(on_pos), std::move(on_dir));
  }
  return out;
}

bool is_cone(const Diagram& d, const Cone& c) {
  if (c.legs.size() != d.objects.size()) return false;
  for (std::size_t k = 0; k < c.legs.size(); ++k)
    if (!(c.legs[k].dom() == c.apex) || !(c.legs[k].cod() == d.objects[k])) return false;
  for (const auto& a : d.arrows)
    if (!(lens_compose(a.lens, c.legs[a.src]) == c.legs[a.dst])) return false;
  return true;
}

Lens mediating_lens(const Cone& lim, const Cone& c) {
  if (lim.legs.size() != c.legs.size()) throw ShapeError("cones over different diagrams");
  const FinPoly& x = c.apex;
  std::vector<std::size_t> on_pos;
  std::vector<std::vector<std::size_t>> on_dir;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t t = 0;
    for (; t < lim.apex.size(); ++t) {
      bool match = true;
      for (std::size_t k = 0; k < c.legs.size() && match; ++k)
        match = lim.legs[k].cod().label(lim.legs[k].on_pos(t)) == c.legs[k].cod().label(c.legs[k].on_pos(i));
      if (match) break;
    }
    if (t == lim.apex.size()) throw ShapeError("cone does not factor through the limit");
    on_pos.push_back(t);
    // Each class is reached through some leg of the limit; read it back through the same leg of c.
    std::vector<std::size_t> back(lim.apex.dirs(t).size(), SIZE_MAX);
    for (std::size_t k = 0; k < lim.legs.size(); ++k) {
      const Lens& leg = lim.legs[k];
      for (std::size_t e = 0; e < leg.on_dir(t).size(); ++e) {
        std::size_t cls = leg.on_dir(t, e);
        if (back[cls] == SIZE_MAX) back[cls] = c.legs[k].on_dir(i, e);
      }
    }
    on_dir.push_back(std::move(back));
  }
  return Lens(x, lim.apex, std::move(on_pos), std::move(on_dir));
}

namespace {

// Same index layout with new position and direction labels.
Cone relabel(const Cone& c, const std::function<std::string(const Label&)>& pos,
             const std::function<std::string(const Label&)>& dir) {
  std::vector<Position> positions;
  for (const auto& p : c.apex) {
    std::vector<std::string> dirs;
    for (const auto& d : p.dirs) dirs.push_back(dir(parse_label(d)));
    positions.push_back({pos(parse_label(p.label)), FinSet(std::move(dirs))});
  }
  Cone out{FinPoly(std::move(positions)), {}};
  for (const auto& leg : c.legs) out.legs.emplace_back(out.apex, leg.cod(), leg.on_pos(), leg.on_dir_table());
  return out;
}

}  // namespace

Cone terminal() { return {one(), {}}; }

Cone binary_product(const FinPoly& p, const FinPoly& q) {
  return {product(p, q), {proj_left(p, q), proj_right(p, q)}};
}

Cone equalizer(const Lens& f, const Lens& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw ShapeError("equalizer needs parallel lenses");
  Diagram d{{f.dom(), f.cod()}, {{0, 1, f}, {0, 1, g}}};
  Cone c = limit(d);
  Cone out = relabel(
      c, [](const Label& l) { return l[0].render(); }, [](const Label& l) { return l.payload().render(); });
  out.legs.pop_back();
  return out;
}

Cone pullback(const Lens& f, const Lens& g) {
  if (!(f.cod() == g.cod())) throw ShapeError("pullback needs a common codomain");
  Diagram d{{f.dom(), g.dom(), f.cod()}, {{0, 2, f}, {1, 2, g}}};
  Cone c = limit(d);
  Cone out = relabel(
      c, [](const Label& l) { return tuple_label({l[0].render(), l[1].render()}); },
      [](const Label& l) { return l.render(); });
  out.legs.pop_back();
  return out;
}

}  // namespace polydyn
