#include "polydyn/finset.hpp"

#include <numeric>
#include <unordered_set>

#include "polydyn/error.hpp"
#include "polydyn/label.hpp"

namespace polydyn {

FinSet::FinSet() : FinSet(std::vector<std::string>{}) {}

FinSet::FinSet(std::vector<std::string> elements, std::string label) {
  auto d = std::make_shared<Data>();
  d->label = std::move(label);
  d->index.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!d->index.emplace(elements[i], i).second)
      throw LabelError("duplicate element label '" + elements[i] + "'" +
                       (d->label.empty() ? "" : " in set " + d->label));
  }
  d->elements = std::move(elements);
  data_ = std::move(d);
}

FinSet FinSet::range(std::size_t n, std::string label) {
  std::vector<std::string> e;
  e.reserve(n);
  for (std::size_t i = 0; i < n; ++i) e.push_back(std::to_string(i));
  return FinSet(std::move(e), std::move(label));
}

FinSet FinSet::singleton(std::string element) { return FinSet({std::move(element)}); }

std::optional<std::size_t> FinSet::find(std::string_view element) const {
  auto it = data_->index.find(std::string(element));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t FinSet::index_of(std::string_view element) const {
  if (auto i = find(element)) return *i;
  throw LabelError("unknown element '" + std::string(element) + "'" +
                   (label().empty() ? "" : " of set " + label()));
}

bool FinSet::same_order(const FinSet& other) const {
  return data_ == other.data_ || data_->elements == other.data_->elements;
}

bool operator==(const FinSet& a, const FinSet& b) {
  if (a.same_order(b)) return true;
  if (a.size() != b.size()) return false;
  for (const auto& e : a)
    if (!b.contains(e)) return false;
  return true;
}

SetFn::SetFn(FinSet dom, FinSet cod, std::vector<std::size_t> mapping)
    : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(mapping)) {
  if (map_.size() != dom_.size())
    throw ShapeError("function mapping has " + std::to_string(map_.size()) +
                     " entries for a domain of size " + std::to_string(dom_.size()));
  for (auto v : map_)
    if (v >= cod_.size()) throw ShapeError("function value outside its codomain");
}

SetFn SetFn::from_labels(FinSet dom, FinSet cod,
                         const std::unordered_map<std::string, std::string>& mapping) {
  std::vector<std::size_t> m(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    auto it = mapping.find(dom[i]);
    if (it == mapping.end()) throw ShapeError("function undefined on '" + dom[i] + "'");
    m[i] = cod.index_of(it->second);
  }
  return SetFn(std::move(dom), std::move(cod), std::move(m));
}

SetFn SetFn::identity(const FinSet& a) {
  std::vector<std::size_t> m(a.size());
  std::iota(m.begin(), m.end(), std::size_t{0});
  return SetFn(a, a, std::move(m));
}

const std::string& SetFn::operator()(std::string_view element) const {
  return cod_[map_[dom_.index_of(element)]];
}

bool SetFn::injective() const {
  std::vector<bool> hit(cod_.size(), false);
  for (auto v : map_) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

bool SetFn::surjective() const {
  std::vector<bool> hit(cod_.size(), false);
  for (auto v : map_) hit[v] = true;
  for (bool h : hit)
    if (!h) return false;
  return true;
}

bool operator==(const SetFn& a, const SetFn& b) {
  if (!(a.dom_ == b.dom_) || !(a.cod_ == b.cod_)) return false;
  for (std::size_t i = 0; i < a.dom_.size(); ++i)
    if (a.cod_[a.map_[i]] != b(a.dom_[i])) return false;
  return true;
}

SetFn compose(const SetFn& g, const SetFn& f) {
  if (!(f.cod() == g.dom())) throw ShapeError("cannot compose functions: codomain/domain mismatch");
  std::vector<std::size_t> m(f.dom().size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::size_t mid = f(i);
    if (!f.cod().same_order(g.dom())) mid = g.dom().index_of(f.cod()[mid]);
    m[i] = g(mid);
  }
  return SetFn(f.dom(), g.cod(), std::move(m));
}

FinSet set_product(const FinSet& a, const FinSet& b) { return set_product(std::vector<FinSet>{a, b}); }

FinSet set_product(const std::vector<FinSet>& factors) {
  std::size_t total = 1;
  for (const auto& f : factors) total *= f.size();
  std::vector<std::string> out;
  out.reserve(total);
  if (total == 0) return FinSet(std::move(out));
  std::vector<std::size_t> idx(factors.size(), 0);
  std::vector<std::string> parts(factors.size());
  while (true) {
    for (std::size_t k = 0; k < factors.size(); ++k) parts[k] = factors[k][idx[k]];
    out.push_back(tuple_label(parts));
    std::size_t k = factors.size();
    while (k > 0) {
      --k;
      if (++idx[k] < factors[k].size()) break;
      idx[k] = 0;
      if (k == 0) return FinSet(std::move(out));
    }
    if (factors.empty()) return FinSet(std::move(out));
  }
}

FinSet set_sum(const std::vector<FinSet>& summands) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < summands.size(); ++k)
    for (const auto& e : summands[k]) out.push_back(inj_label(k, e));
  return FinSet(std::move(out));
}

Pullback pullback_set(const SetFn& f, const SetFn& g) {
  if (!(f.cod() == g.cod())) throw ShapeError("pullback of functions with different codomains");
  std::vector<std::string> elems;
  std::vector<std::size_t> l, r;
  for (std::size_t x = 0; x < f.dom().size(); ++x) {
    const std::string& fx = f.cod()[f(x)];
    for (std::size_t y = 0; y < g.dom().size(); ++y) {
      if (g.cod()[g(y)] != fx) continue;
      elems.push_back(tuple_label({f.dom()[x], g.dom()[y]}));
      l.push_back(x);
      r.push_back(y);
    }
  }
  FinSet apex(std::move(elems));
  return {apex, SetFn(apex, f.dom(), std::move(l)), SetFn(apex, g.dom(), std::move(r))};
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

Coequalizer coequalizer_set(const SetFn& f, const SetFn& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod()))
    throw ShapeError("coequalizer needs parallel functions");
  const FinSet& cod = f.cod();
  std::vector<std::size_t> parent(cod.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t x = 0; x < f.dom().size(); ++x) {
    std::size_t gx = g(g.dom().same_order(f.dom()) ? x : g.dom().index_of(f.dom()[x]));
    if (!g.cod().same_order(cod)) gx = cod.index_of(g.cod()[gx]);
    std::size_t a = find_root(parent, f(x));
    std::size_t b = find_root(parent, gx);
    // keep the smallest index as representative
    if (a < b) parent[b] = a;
    else if (b < a) parent[a] = b;
  }
  std::vector<std::string> classes;
  std::vector<std::size_t> class_of_root(cod.size(), SIZE_MAX);
  std::vector<std::size_t> proj(cod.size());
  for (std::size_t c = 0; c < cod.size(); ++c) {
    std::size_t r = find_root(parent, c);
    if (class_of_root[r] == SIZE_MAX) {
      class_of_root[r] = classes.size();
      classes.push_back(cod[r]);
    }
    proj[c] = class_of_root[r];
  }
  FinSet q(std::move(classes));
  return {q, SetFn(cod, q, std::move(proj))};
}

void for_each_function(std::size_t dom, std::size_t cod,
                       const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> v(dom, 0);
  if (dom == 0) {
    fn(v);
    return;
  }
  if (cod == 0) return;
  while (true) {
    if (!fn(v)) return;
    std::size_t k = dom;
    while (k > 0) {
      --k;
      if (++v[k] < cod) break;
      v[k] = 0;
      if (k == 0) return;
    }
  }
}

std::size_t checked_power(std::size_t base, std::size_t exponent, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && r > cap / base) throw SizeError("size exceeds cap " + std::to_string(cap));
    r *= base;
  }
  return r;
}

}  // namespace polydyn
