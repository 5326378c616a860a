// Shared helpers and independent oracles for the test programs.
#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "polydyn/poly.hpp"

namespace polydyn::testing {

/// Every polynomial with at most `max_pos` positions and at most `max_dir`
/// directions at each position, up to isomorphism, including 0.
inline std::vector<FinPoly> small_polys(std::size_t max_pos, std::size_t max_dir) {
  std::vector<FinPoly> out;
  std::vector<std::size_t> cards;
  auto rec = [&](auto&& self, std::size_t lo) -> void {
    out.push_back(poly_from_cardinalities(cards));
    if (cards.size() == max_pos) return;
    for (std::size_t d = lo; d <= max_dir; ++d) {
      cards.push_back(d);
      self(self, d);
      cards.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Coefficient arithmetic: c[k] is the number of positions with k directions.
using Coeffs = std::vector<std::size_t>;

inline Coeffs coeff_add(const Coeffs& a, const Coeffs& b) {
  Coeffs c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return c;
}

inline Coeffs coeff_mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

/// p(x) with p given by coefficients and x itself a coefficient polynomial.
inline Coeffs coeff_substitute(const Coeffs& p, const Coeffs& x) {
  Coeffs out, power{1};
  for (std::size_t k = 0; k < p.size(); ++k) {
    out = coeff_add(out, coeff_mul(Coeffs{p[k]}, power));
    power = coeff_mul(power, x);
  }
  return out;
}

inline FinPoly from_coeffs(const Coeffs& c) {
  std::vector<std::size_t> cards;
  for (std::size_t k = 0; k < c.size(); ++k) cards.insert(cards.end(), c[k], k);
  return poly_from_cardinalities(cards);
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

/// |Poly(p, q)| = prod_i sum_j |p_i|^|q_j|.
inline std::size_t hom_oracle(const FinPoly& p, const FinPoly& q) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t s = 0;
    for (std::size_t j = 0; j < q.size(); ++j) s += ipow(p.dirs(i).size(), q.dirs(j).size());
    total *= s;
  }
  return total;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace polydyn::testing
