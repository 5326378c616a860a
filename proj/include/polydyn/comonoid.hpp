#pragma once

// Comonoids for the composition product, their correspondence with finite
// categories, and the cofree comonoid chain.
//
// The comultiplication C -> C o C is kept in components rather than as a lens
// into the (often very large) polynomial C o C:
//   root[i]        position of C reached first
//   next[i][d]     position for each direction d at root[i]
//   back[i][d][e]  direction at i for each pair (d, e), e a direction at next[i][d]

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "polydyn/algebra.hpp"
#include "polydyn/category.hpp"
#include "polydyn/finset.hpp"
#include "polydyn/lens.hpp"
#include "polydyn/poly.hpp"

namespace polydyn {

struct Comonoid {
  FinPoly carrier;
  std::vector<std::size_t> counit;  // direction chosen at each position
  std::vector<std::size_t> root;
  std::vector<std::vector<std::size_t>> next;
  std::vector<std::vector<std::vector<std::size_t>>> back;

  Lens counit_lens() const;
  /// The comultiplication as a lens carrier -> carrier o carrier.
  Lens comult_lens(std::size_t cap = kDefaultSizeCap) const;

  static Comonoid from_lenses(const Lens& counit, const Lens& comult);
};

/// Counit laws on both sides and coassociativity, instance by instance.
Report check_comonoid_laws(const Comonoid& c);

/// Objects are positions, the morphisms out of i are the directions at i.
/// Morphisms keep their direction labels when these are distinct across
/// positions and are labeled (i,d) otherwise. Throws ShapeError when the laws fail.
FinCat comonoid_to_category(const Comonoid& c);
Comonoid category_to_comonoid(const FinCat& k);

/// S y^S, the comonoid of the contractible groupoid on S.
Comonoid contractible(const FinSet& s);
/// y with its unique structure.
Comonoid trivial_comonoid();
Comonoid comonoid_sum(const Comonoid& c, const Comonoid& d);
Comonoid comonoid_tensor(const Comonoid& c, const Comonoid& d);
/// Carrier tensor_all of the carriers.
Comonoid comonoid_tensor_all(const std::vector<Comonoid>& cs);

/// Whether a lens between carriers commutes with counits and comultiplications.
bool is_comonoid_morphism(const Comonoid& c, const Comonoid& d, const Lens& f);
/// The cofunctor between the associated categories with the same data as f.
Cofunctor lens_to_cofunctor(const Comonoid& c, const Comonoid& d, const Lens& f);
Lens cofunctor_to_lens(const Comonoid& c, const Comonoid& d, const Cofunctor& f);

/// c_0 = 1 and c_{k+1} = y x (p o c_k), with projections c_{k+1} -> c_k.
struct CofreeTruncation {
  std::vector<FinPoly> stages;
  std::vector<Lens> projections;  // projections[k] : stages[k+1] -> stages[k]
};
CofreeTruncation cofree_truncation(const FinPoly& p, std::size_t depth, std::size_t cap = kDefaultSizeCap);

/// Position label in p^{o n} reached by each state through C -> C^{o n} -> p^{o n}.
std::vector<std::string> nstep_labels(const Comonoid& c, const Lens& f, std::size_t n);
/// The same as a function into the positions of p^{o n}.
SetFn nstep_behavior(const Comonoid& c, const Lens& f, std::size_t n, std::size_t cap = kDefaultSizeCap);

// {"carrier":poly,"counit":lens,"comult":lens}
nlohmann::json comonoid_to_json(const Comonoid& c);
Comonoid comonoid_from_json(const nlohmann::json& j);

}  // namespace polydyn
