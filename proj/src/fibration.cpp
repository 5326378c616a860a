#include "polydyn/fibration.hpp"

#include <string>
#include <utility>
#include <vector>

#include "polydyn/error.hpp"
#include "polydyn/label.hpp"

namespace polydyn {

FinPoly base_change(const SetFn& f, const FinPoly& q) {
  if (!(q.positions() == f.cod())) throw ShapeError("base change needs q(1) equal to the codomain");
  std::vector<Position> out;
  for (std::size_t a = 0; a < f.dom().size(); ++a) {
    const std::string& b = f.cod()[f(a)];
    out.push_back({f.dom()[a], q.dirs(q.index_of(b))});
  }
  return FinPoly(std::move(out));
}

FinPoly base_pushforward(const SetFn& f, const FinPoly& p, Pushforward kind) {
  if (!(p.positions() == f.dom())) throw ShapeError("pushforward needs p(1) equal to the domain");
  std::vector<Position> out;
  for (std::size_t b = 0; b < f.cod().size(); ++b) {
    std::vector<std::size_t> fiber;
    for (std::size_t a = 0; a < f.dom().size(); ++a)
      if (f(a) == b) fiber.push_back(p.index_of(f.dom()[a]));
    std::vector<std::string> dirs;
    if (kind == Pushforward::right) {
      for (std::size_t i : fiber)
        for (const auto& d : p.dirs(i)) dirs.push_back(tuple_label({p.label(i), d}));
    } else {
      std::vector<std::size_t> idx(fiber.size(), 0);
      bool any = true;
      for (std::size_t i : fiber) any = any && !p.dirs(i).empty();
      while (any) {
        std::vector<std::pair<std::string, std::string>> entries;
        for (std::size_t k = 0; k < fiber.size(); ++k)
          entries.emplace_back(p.label(fiber[k]), p.dirs(fiber[k])[idx[k]]);
        dirs.push_back(map_label(entries));
        std::size_t k = fiber.size();
        while (k > 0) {
          --k;
          if (++idx[k] < p.dirs(fiber[k]).size()) break;
          idx[k] = 0;
          if (k == 0) any = false;
        }
        if (fiber.empty()) any = false;
      }
    }
    out.push_back({f.cod()[b], FinSet(std::move(dirs))});
  }
  return FinPoly(std::move(out));
}

}  // namespace polydyn
