#include "polydyn/factor.hpp"

#include <map>
#include <string>
#include <vector>

namespace polydyn {

std::pair<Lens, Lens> factor_vert_cart(const Lens& f) {
  const FinPoly& p = f.dom();
  const FinPoly& q = f.cod();
  std::vector<Position> mid;
  for (std::size_t i = 0; i < p.size(); ++i) mid.push_back({p.label(i), q.dirs(f.on_pos(i))});
  FinPoly m(std::move(mid));

  std::vector<std::size_t> ident(p.size());
  std::vector<std::vector<std::size_t>> ident_dirs(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    ident[i] = i;
    for (std::size_t e = 0; e < m.dirs(i).size(); ++e) ident_dirs[i].push_back(e);
  }
  Lens vert(p, m, ident, f.on_dir_table());
  Lens cart(m, q, f.on_pos(), ident_dirs);
  return {vert, cart};
}

std::pair<Lens, Lens> factor_epi_mono(const Lens& f) {
  const FinPoly& p = f.dom();
  const FinPoly& q = f.cod();

  std::vector<std::vector<std::size_t>> fiber(q.size());
  for (std::size_t i = 0; i < p.size(); ++i) fiber[f.on_pos(i)].push_back(i);

  std::vector<Position> mid;
  std::vector<std::size_t> im_index(q.size(), 0), incl;
  std::vector<std::vector<std::size_t>> class_of(q.size());
  std::vector<std::vector<std::size_t>> mono_dirs;
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (fiber[j].empty()) continue;
    // Directions with the same column of on-directions values are identified.
    std::map<std::vector<std::size_t>, std::size_t> seen;
    std::vector<std::string> reps;
    for (std::size_t e = 0; e < q.dirs(j).size(); ++e) {
      std::vector<std::size_t> column;
      for (std::size_t i : fiber[j]) column.push_back(f.on_dir(i, e));
      auto [it, fresh] = seen.emplace(column, reps.size());
      if (fresh) reps.push_back(q.dirs(j)[e]);
      class_of[j].push_back(it->second);
    }
    im_index[j] = mid.size();
    incl.push_back(j);
    mono_dirs.push_back(class_of[j]);
    mid.push_back({q.label(j), FinSet(std::move(reps))});
  }
  FinPoly m(std::move(mid));

  std::vector<std::size_t> epi_pos(p.size());
  std::vector<std::vector<std::size_t>> epi_dirs(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t j = f.on_pos(i);
    epi_pos[i] = im_index[j];
    epi_dirs[i].assign(m.dirs(im_index[j]).size(), 0);
    for (std::size_t e = 0; e < q.dirs(j).size(); ++e) epi_dirs[i][class_of[j][e]] = f.on_dir(i, e);
  }
  Lens epi(p, m, epi_pos, epi_dirs);
  Lens mono(m, q, incl, mono_dirs);
  return {epi, mono};
}

}  // namespace polydyn
