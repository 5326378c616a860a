#pragma once

// Finite categories given by composition tables, cofunctors between them, and
// a generated catalog of small categories up to isomorphism.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polydyn/finset.hpp"
#include "polydyn/report.hpp"

namespace polydyn {

class FinCat {
 public:
  static constexpr std::size_t kNone = SIZE_MAX;

  struct Morphism {
    std::string label;
    std::size_t dom;
    std::size_t cod;
  };

  FinCat() = default;
  /// `table[g * n + f]` is g o f for composable f, g and kNone otherwise, where
  /// n is the number of morphisms. Throws ShapeError when the table is defined
  /// off the composable pairs or missing on them.
  FinCat(FinSet objects, std::vector<Morphism> morphisms, std::vector<std::size_t> identity,
         std::vector<std::size_t> table);

  const FinSet& objects() const { return objects_; }
  const std::vector<Morphism>& morphisms() const { return morphisms_; }
  const Morphism& morphism(std::size_t m) const { return morphisms_[m]; }
  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_morphisms() const { return morphisms_.size(); }
  std::size_t identity(std::size_t x) const { return identity_[x]; }
  std::size_t compose(std::size_t g, std::size_t f) const { return table_[g * morphisms_.size() + f]; }
  /// Morphisms with domain x, in morphism order.
  const std::vector<std::size_t>& out(std::size_t x) const { return out_[x]; }
  /// Position of m within out(dom m).
  std::size_t out_index(std::size_t m) const { return out_index_[m]; }
  std::size_t morphism_index(std::string_view label) const;

 private:
  FinSet objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::size_t> identity_;
  std::vector<std::size_t> table_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::size_t> out_index_;
};

/// Identity and associativity laws, and the typing of composites.
Report check_category(const FinCat& k);

/// Invariant under relabeling; equal exactly for isomorphic categories.
std::vector<std::size_t> canonical_key(const FinCat& k);
bool isomorphic(const FinCat& a, const FinCat& b);

/// Every category with at most `max_objects` objects and at most
/// `max_morphisms` morphisms (identities included), one per isomorphism class.
std::vector<FinCat> category_catalog(std::size_t max_objects, std::size_t max_morphisms);

/// One object whose endomorphisms form the given monoid table (element 0 is the unit).
FinCat monoid_category(const std::vector<std::string>& elements, const std::vector<std::vector<std::size_t>>& mul);
/// Only identities.
FinCat discrete_category(const FinSet& objects);
/// A unique morphism between any two objects, labeled (s,t).
FinCat contractible_category(const FinSet& objects);

struct Cofunctor {
  FinCat src;
  FinCat tgt;
  std::vector<std::size_t> on_obj;
  /// pull[c][k] is the src morphism out of c lifted from the k-th morphism
  /// of tgt out of on_obj[c].
  std::vector<std::vector<std::size_t>> pull;

  std::size_t lift(std::size_t c, std::size_t g) const;
};

Cofunctor identity_cofunctor(const FinCat& k);

/// Laws i (identities), ii (codomains), iii (composites), plus typing of lifts.
Report check_cofunctor(const Cofunctor& f);

// {"objects":[...],"morphisms":[{"label","dom","cod"}],"identities":{obj:mor},"compose":[[g,f,h],...]}
nlohmann::json category_to_json(const FinCat& k);
FinCat category_from_json(const nlohmann::json& j);

}  // namespace polydyn
