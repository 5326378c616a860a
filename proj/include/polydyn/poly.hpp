#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polydyn/finset.hpp"

namespace polydyn {

struct Position {
  std::string label;
  FinSet dirs;
};

/// A polynomial sum_{i in p(1)} y^{p_i} over finite sets: an ordered list of
/// positions, each carrying its finite set of directions. Immutable; copies
/// share storage.
class FinPoly {
 public:
  FinPoly();  // the zero polynomial
  explicit FinPoly(std::vector<Position> positions);

  std::size_t size() const { return data_->positions.size(); }
  bool empty() const { return data_->positions.empty(); }
  const Position& operator[](std::size_t i) const { return data_->positions[i]; }
  const std::string& label(std::size_t i) const { return data_->positions[i].label; }
  const FinSet& dirs(std::size_t i) const { return data_->positions[i].dirs; }

  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;

  /// p(1) as a set.
  const FinSet& positions() const { return data_->position_set; }
  std::size_t total_directions() const;

  auto begin() const { return data_->positions.begin(); }
  auto end() const { return data_->positions.end(); }

  /// Identical position and direction orders (and therefore index-compatible).
  bool same_layout(const FinPoly& other) const;

  /// Strict equality: same position labels, same direction sets per label.
  friend bool operator==(const FinPoly& a, const FinPoly& b);

 private:
  struct Data {
    std::vector<Position> positions;
    FinSet position_set;
  };
  std::shared_ptr<const Data> data_;
};

FinPoly make_poly(const std::vector<std::pair<std::string, std::vector<std::string>>>& spec);
/// Polynomial with positions "0".."k-1" whose i-th position has `cards[i]` directions.
FinPoly poly_from_cardinalities(const std::vector<std::size_t>& cards);

FinPoly zero();
FinPoly one();
/// The identity polynomial: one position "*" with one direction "*".
FinPoly y();

FinPoly constant(const FinSet& a);
FinPoly linear(const FinSet& a);
FinPoly representable(const FinSet& a);
FinPoly monomial(const FinSet& b, const FinSet& a);

/// p(X): pairs (i, f : p_i -> X) labeled (i,{d:x,...}).
FinSet eval(const FinPoly& p, const FinSet& x);
/// |p(X)| computed arithmetically.
std::size_t eval_count(const FinPoly& p, std::size_t x);

/// Positions relabeled "0","1",... sorted by (direction count desc, label);
/// directions relabeled "0".."n-1".
FinPoly canonical_form(const FinPoly& p);
bool isomorphic(const FinPoly& p, const FinPoly& q);

/// Direction counts in decreasing order; determines p up to isomorphism.
std::vector<std::size_t> cardinality_profile(const FinPoly& p);

bool is_monomial(const FinPoly& p);

/// Algebraic rendering up to isomorphism, e.g. "y^2 + 3y + 2".
std::string to_algebraic(const FinPoly& p);

}  // namespace polydyn
