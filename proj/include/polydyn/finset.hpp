#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace polydyn {

/// A finite set of labeled elements. Element order matters for serialization
/// and for the deterministic order of derived constructions, never for equality.
class FinSet {
 public:
  FinSet();
  explicit FinSet(std::vector<std::string> elements, std::string label = {});

  /// {"0", ..., "n-1"}
  static FinSet range(std::size_t n, std::string label = {});
  static FinSet singleton(std::string element = "*");

  const std::string& label() const { return data_->label; }
  const std::vector<std::string>& elements() const { return data_->elements; }
  std::size_t size() const { return data_->elements.size(); }
  bool empty() const { return data_->elements.empty(); }
  const std::string& operator[](std::size_t i) const { return data_->elements[i]; }

  std::optional<std::size_t> find(std::string_view element) const;
  /// Throws LabelError when `element` is absent.
  std::size_t index_of(std::string_view element) const;
  bool contains(std::string_view element) const { return find(element).has_value(); }

  auto begin() const { return data_->elements.begin(); }
  auto end() const { return data_->elements.end(); }

  /// Same elements in the same order.
  bool same_order(const FinSet& other) const;

  friend bool operator==(const FinSet& a, const FinSet& b);

 private:
  struct Data {
    std::string label;
    std::vector<std::string> elements;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

/// A total function between finite sets, stored by element index.
class SetFn {
 public:
  SetFn() = default;
  SetFn(FinSet dom, FinSet cod, std::vector<std::size_t> mapping);
  static SetFn from_labels(FinSet dom, FinSet cod,
                           const std::unordered_map<std::string, std::string>& mapping);
  static SetFn identity(const FinSet& a);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  const std::vector<std::size_t>& mapping() const { return map_; }

  std::size_t operator()(std::size_t i) const { return map_[i]; }
  const std::string& operator()(std::string_view element) const;

  bool injective() const;
  bool surjective() const;
  bool bijective() const { return injective() && surjective(); }

  friend bool operator==(const SetFn& a, const SetFn& b);

 private:
  FinSet dom_;
  FinSet cod_;
  std::vector<std::size_t> map_;
};

/// g after f.
SetFn compose(const SetFn& g, const SetFn& f);

/// Cartesian product with tuple labels (a,b), first factor varying slowest.
FinSet set_product(const FinSet& a, const FinSet& b);
FinSet set_product(const std::vector<FinSet>& factors);
/// Disjoint union with injection labels in0(a), in1(b).
FinSet set_sum(const std::vector<FinSet>& summands);

struct Pullback {
  FinSet apex;
  SetFn left;   // apex -> dom(f)
  SetFn right;  // apex -> dom(g)
};
/// Matching pairs {(x,y) | f(x) = g(y)} with their projections.
Pullback pullback_set(const SetFn& f, const SetFn& g);

struct Coequalizer {
  FinSet quotient;
  SetFn projection;  // cod(f) -> quotient
};
/// Quotient of cod(f) by the equivalence closure of f(x) ~ g(x). Each class is
/// labeled by its first member in cod order; classes are ordered by that member.
Coequalizer coequalizer_set(const SetFn& f, const SetFn& g);

/// Calls `fn` with every function [0,dom) -> [0,cod) as an index vector, the
/// last argument varying fastest. Stops early when `fn` returns false.
void for_each_function(std::size_t dom, std::size_t cod,
                       const std::function<bool(const std::vector<std::size_t>&)>& fn);

/// cod^dom with 0^0 = 1; throws SizeError beyond `cap`.
std::size_t checked_power(std::size_t base, std::size_t exponent,
                          std::size_t cap = std::size_t(1) << 40);

}  // namespace polydyn
