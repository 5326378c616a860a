#include "polydyn/poly.hpp"

#include <algorithm>
#include <map>

#include "polydyn/error.hpp"
#include "polydyn/label.hpp"

namespace polydyn {

FinPoly::FinPoly() : FinPoly(std::vector<Position>{}) {}

FinPoly::FinPoly(std::vector<Position> positions) {
  auto d = std::make_shared<Data>();
  std::vector<std::string> labels;
  labels.reserve(positions.size());
  for (const auto& p : positions) labels.push_back(p.label);
  try {
    d->position_set = FinSet(std::move(labels));
  } catch (const LabelError& e) {
    throw LabelError(std::string("duplicate position label: ") + e.what());
  }
  d->positions = std::move(positions);
  data_ = std::move(d);
}

std::optional<std::size_t> FinPoly::find(std::string_view label) const {
  return data_->position_set.find(label);
}

std::size_t FinPoly::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw LabelError("unknown position '" + std::string(label) + "'");
}

std::size_t FinPoly::total_directions() const {
  std::size_t n = 0;
  for (const auto& p : *this) n += p.dirs.size();
  return n;
}

bool FinPoly::same_layout(const FinPoly& other) const {
  if (data_ == other.data_) return true;
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (label(i) != other.label(i) || !dirs(i).same_order(other.dirs(i))) return false;
  }
  return true;
}

bool operator==(const FinPoly& a, const FinPoly& b) {
  if (a.same_layout(b)) return true;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto j = b.find(a.label(i));
    if (!j || !(a.dirs(i) == b.dirs(*j))) return false;
  }
  return true;
}

FinPoly make_poly(const std::vector<std::pair<std::string, std::vector<std::string>>>& spec) {
  std::vector<Position> ps;
  ps.reserve(spec.size());
  for (const auto& [label, dirs] : spec) ps.push_back({label, FinSet(dirs)});
  return FinPoly(std::move(ps));
}

FinPoly poly_from_cardinalities(const std::vector<std::size_t>& cards) {
  std::vector<Position> ps;
  for (std::size_t i = 0; i < cards.size(); ++i)
    ps.push_back({std::to_string(i), FinSet::range(cards[i])});
  return FinPoly(std::move(ps));
}

FinPoly zero() { return FinPoly(); }
FinPoly one() { return FinPoly({{"*", FinSet()}}); }
FinPoly y() { return FinPoly({{"*", FinSet::singleton()}}); }

FinPoly constant(const FinSet& a) {
  std::vector<Position> ps;
  for (const auto& e : a) ps.push_back({e, FinSet()});
  return FinPoly(std::move(ps));
}

FinPoly linear(const FinSet& a) {
  std::vector<Position> ps;
  FinSet one_dir = FinSet::singleton();
  for (const auto& e : a) ps.push_back({e, one_dir});
  return FinPoly(std::move(ps));
}

FinPoly representable(const FinSet& a) { return FinPoly({{"*", a}}); }

FinPoly monomial(const FinSet& b, const FinSet& a) {
  std::vector<Position> ps;
  for (const auto& e : b) ps.push_back({e, a});
  return FinPoly(std::move(ps));
}

FinSet eval(const FinPoly& p, const FinSet& x) {
  std::vector<std::string> out;
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& pos : p) {
    const FinSet& d = pos.dirs;
    entries.resize(d.size());
    for_each_function(d.size(), x.size(), [&](const std::vector<std::size_t>& f) {
      for (std::size_t k = 0; k < d.size(); ++k) entries[k] = {d[k], x[f[k]]};
      out.push_back(tuple_label({pos.label, map_label(entries)}));
      return true;
    });
  }
  return FinSet(std::move(out));
}

std::size_t eval_count(const FinPoly& p, std::size_t x) {
  std::size_t n = 0;
  for (const auto& pos : p) n += checked_power(x, pos.dirs.size());
  return n;
}

FinPoly canonical_form(const FinPoly& p) {
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (p.dirs(a).size() != p.dirs(b).size()) return p.dirs(a).size() > p.dirs(b).size();
    return p.label(a) < p.label(b);
  });
  std::vector<Position> ps;
  ps.reserve(p.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    ps.push_back({std::to_string(k), FinSet::range(p.dirs(order[k]).size())});
  return FinPoly(std::move(ps));
}

bool isomorphic(const FinPoly& p, const FinPoly& q) { return cardinality_profile(p) == cardinality_profile(q); }

std::vector<std::size_t> cardinality_profile(const FinPoly& p) {
  std::vector<std::size_t> c;
  c.reserve(p.size());
  for (const auto& pos : p) c.push_back(pos.dirs.size());
  std::sort(c.rbegin(), c.rend());
  return c;
}

bool is_monomial(const FinPoly& p) {
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!(p.dirs(i) == p.dirs(0))) return false;
  return true;
}

std::string to_algebraic(const FinPoly& p) {
  if (p.empty()) return "0";
  std::map<std::size_t, std::size_t, std::greater<>> coeff;
  for (const auto& pos : p) ++coeff[pos.dirs.size()];
  std::string out;
  for (const auto& [exp, c] : coeff) {
    if (!out.empty()) out += " + ";
    std::string term;
    if (exp == 0) {
      term = std::to_string(c);
    } else {
      if (c != 1) term = std::to_string(c);
      term += "y";
      if (exp != 1) term += "^" + std::to_string(exp);
    }
    out += term;
  }
  return out;
}

}  // namespace polydyn
