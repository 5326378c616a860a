#pragma once

// The bifibration p -> p(1): reindexing polynomials along functions of
// position sets.

#include "polydyn/finset.hpp"
#include "polydyn/poly.hpp"

namespace polydyn {

enum class Pushforward { left, right };

/// f*q over A: position a carries the directions of q at f(a).
FinPoly base_change(const SetFn& f, const FinPoly& q);

/// Over B. left: directions at b are the functions choosing one direction per
/// a in the fiber, labeled {a:d,...}. right: directions at b are the pairs
/// (a,d) with a in the fiber.
FinPoly base_pushforward(const SetFn& f, const FinPoly& p, Pushforward kind);

}  // namespace polydyn
