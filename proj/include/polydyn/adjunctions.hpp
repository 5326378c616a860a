#pragma once

// Adjunctions between Poly, Set and Set^op, checked by explicit bijections on
// small instances.

#include <string>
#include <vector>

#include <json.hpp>

#include "polydyn/finset.hpp"
#include "polydyn/hom.hpp"
#include "polydyn/poly.hpp"

namespace polydyn {

/// Gamma p = prod_i p_i, each section labeled {i:d,...}.
FinSet global_sections(const FinPoly& p);

/// A*p, realized as p x A with A constant.
FinPoly scalar_product(const FinSet& a, const FinPoly& p);

struct AdjunctionCheck {
  std::string name;
  BigInt lhs;  // size of the hom-set on the Poly side
  BigInt rhs;  // size of the transposed hom-set
  bool bijective = false;
};

struct AdjunctionReport {
  std::vector<AdjunctionCheck> checks;
  bool ok() const;
  nlohmann::json to_json() const;
};

/// Checks Ay -| p(1), p(1) -| A, A -| p(0), Gamma -| y^(-), Gamma p = Poly(p,y),
/// and Poly(Ap,q) = Poly(p,q^A) = Set(A,Poly(p,q)).
AdjunctionReport adjunction_suite(const FinSet& a, const FinPoly& p, const FinPoly& q);

}  // namespace polydyn
