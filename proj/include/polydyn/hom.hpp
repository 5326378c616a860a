#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polydyn/lens.hpp"

namespace polydyn {

using BigInt = boost::multiprecision::cpp_int;

/// |Poly(p,q)| = prod_{i in p(1)} sum_{j in q(1)} |p_i|^{|q_j|}
BigInt hom_count(const FinPoly& p, const FinPoly& q);

/// Visits every lens p -> q in a fixed order: the first domain position varies
/// slowest; for each position the target runs in codomain order and the
/// backward function in odometer order. Stops when `fn` returns false.
void for_each_lens(const FinPoly& p, const FinPoly& q, const std::function<bool(const Lens&)>& fn);

/// All lenses p -> q in the order of for_each_lens; throws SizeError beyond `limit`.
std::vector<Lens> hom_enumerate(const FinPoly& p, const FinPoly& q, std::size_t limit = 1'000'000);

/// A uniformly chosen lens p -> q, or nothing when the hom-set is empty.
std::optional<Lens> random_lens(const FinPoly& p, const FinPoly& q, std::mt19937_64& rng);

/// Whether g . f = h . f implies g = h for all g, h : cod(f) -> t, t among `tests`.
bool right_cancellable(const Lens& f, const std::vector<FinPoly>& tests);
/// Whether f . g = f . h implies g = h for all g, h : t -> dom(f), t among `tests`.
bool left_cancellable(const Lens& f, const std::vector<FinPoly>& tests);

/// Right cancellation against y, y+1, 2y and 2.
bool is_epi_by_cancellation(const Lens& f);
/// Left cancellation against the representables y^n for n up to twice the
/// largest direction set of dom(f); these detect every pair of distinct
/// elements of dom(f)(X).
bool is_mono(const Lens& f);

}  // namespace polydyn
