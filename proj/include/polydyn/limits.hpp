#pragma once

// Finite limits of polynomials. Positions form the limit of the position
// sets; the directions at a limit position form the colimit of the direction
// sets along the diagram.

#include <cstddef>
#include <vector>

#include "polydyn/lens.hpp"
#include "polydyn/poly.hpp"

namespace polydyn {

/// A finite category mapped into Poly. Identities are implicit; listed arrows
/// must be closed under composition.
struct Diagram {
  struct Arrow {
    std::size_t src;
    std::size_t dst;
    Lens lens;
  };
  std::vector<FinPoly> objects;
  std::vector<Arrow> arrows;
};

struct Cone {
  FinPoly apex;
  std::vector<Lens> legs;  // one per diagram object
};

/// Throws ShapeError when an arrow does not match its objects or the
/// composite of two listed arrows is not listed.
void check_diagram(const Diagram& d);

/// Positions are labeled by tuples of component positions; each direction
/// class by its first member in0(d) / in1(e) / ...
Cone limit(const Diagram& d);

/// Whether the legs commute with every arrow of the diagram.
bool is_cone(const Diagram& d, const Cone& c);

/// The unique lens from the apex of `c` into `lim` commuting with the legs.
Lens mediating_lens(const Cone& lim, const Cone& c);

Cone terminal();
/// p x q with its projections.
Cone binary_product(const FinPoly& p, const FinPoly& q);
/// Positions keep the labels of dom(f); directions are labeled by a member from dom(f).
Cone equalizer(const Lens& f, const Lens& g);
/// Positions (i,j); directions labeled in0(d) or in1(e).
Cone pullback(const Lens& f, const Lens& g);

}  // namespace polydyn
