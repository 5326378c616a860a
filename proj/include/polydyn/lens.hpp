#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "polydyn/poly.hpp"

namespace polydyn {

/// A morphism of polynomials dom -> cod: forward on positions, and for each
/// position i of dom, backward from the directions at on_pos(i) to those at i.
class Lens {
 public:
  Lens() = default;
  /// on_dir[i][e] is the direction of dom at i assigned to direction e of cod at on_pos[i].
  Lens(FinPoly dom, FinPoly cod, std::vector<std::size_t> on_pos,
       std::vector<std::vector<std::size_t>> on_dir);

  using PosMap = std::map<std::string, std::string>;
  using DirMap = std::map<std::string, std::map<std::string, std::string>>;
  static Lens from_labels(FinPoly dom, FinPoly cod, const PosMap& on_pos, const DirMap& on_dir);

  /// Builds a lens from label-level rules: `pos(i)` is the label of the image of
  /// dom position i, `dir(i, e)` the label of the dom direction at i for the cod
  /// direction labeled e.
  static Lens from_rules(FinPoly dom, FinPoly cod,
                         const std::function<std::string(std::size_t)>& pos,
                         const std::function<std::string(std::size_t, const std::string&)>& dir);

  const FinPoly& dom() const { return dom_; }
  const FinPoly& cod() const { return cod_; }
  std::size_t on_pos(std::size_t i) const { return on_pos_[i]; }
  std::size_t on_dir(std::size_t i, std::size_t e) const { return on_dir_[i][e]; }
  const std::vector<std::size_t>& on_pos() const { return on_pos_; }
  const std::vector<std::size_t>& on_dir(std::size_t i) const { return on_dir_[i]; }
  const std::vector<std::vector<std::size_t>>& on_dir_table() const { return on_dir_; }

  const std::string& pos_image(std::string_view dom_pos) const;
  const std::string& dir_back(std::string_view dom_pos, std::string_view cod_dir) const;

  /// on-positions as a set function dom(1) -> cod(1)
  SetFn on_positions() const;
  /// component at position i: cod directions at on_pos(i) -> dom directions at i
  SetFn on_directions(std::size_t i) const;

  /// Structural equality by labels (interfaces compared strictly).
  friend bool operator==(const Lens& a, const Lens& b);

 private:
  FinPoly dom_;
  FinPoly cod_;
  std::vector<std::size_t> on_pos_;
  std::vector<std::vector<std::size_t>> on_dir_;
};

Lens lens_id(const FinPoly& p);
/// g after f; requires cod(f) = dom(g).
Lens lens_compose(const Lens& g, const Lens& f);

/// The same lens re-expressed on strictly equal interfaces with other layouts.
Lens relayout(const Lens& f, const FinPoly& dom, const FinPoly& cod);

bool is_epi(const Lens& f);
bool is_vertical(const Lens& f);
bool is_cartesian(const Lens& f);
bool is_invertible(const Lens& f);
/// Two-sided inverse of an invertible lens; throws ShapeError otherwise.
Lens inverse(const Lens& f);

}  // namespace polydyn
