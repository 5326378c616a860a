#pragma once

// The four monoidal structures on polynomials, both closures, their action on
// lenses, coherence isomorphisms, the duoidal interchange and the currying
// bijections.
//
// Label conventions for composite constructions:
//   p + q     positions in0(i) / in1(j); directions unchanged
//   p x q     positions (i,j); directions in0(d) / in1(e)
//   p (x) q   positions (i,j); directions (d,e)
//   p o q     positions (i,{d:j,...}); directions (d,e)
// The n-ary forms use n-tuples and in0..in{n-1}.

#include <cstddef>
#include <memory>
#include <vector>

#include "polydyn/lens.hpp"

namespace polydyn {

inline constexpr std::size_t kDefaultSizeCap = 2'000'000;

FinPoly sum(const FinPoly& p, const FinPoly& q);
FinPoly product(const FinPoly& p, const FinPoly& q);
FinPoly tensor(const FinPoly& p, const FinPoly& q);
FinPoly compose(const FinPoly& p, const FinPoly& q, std::size_t cap = kDefaultSizeCap);

FinPoly sum_all(const std::vector<FinPoly>& ps);
FinPoly product_all(const std::vector<FinPoly>& ps, std::size_t cap = kDefaultSizeCap);
FinPoly tensor_all(const std::vector<FinPoly>& ps, std::size_t cap = kDefaultSizeCap);

/// p^{o n}: y for n = 0, p for n = 1, p o p^{o(n-1)} beyond.
FinPoly compose_power(const FinPoly& p, std::size_t n, std::size_t cap = kDefaultSizeCap);

/// q^p = prod_{i in p(1)} q o (p_i + y)
FinPoly cartesian_closure(const FinPoly& q, const FinPoly& p, std::size_t cap = kDefaultSizeCap);
/// [p,q] = prod_{i in p(1)} q o (p_i y)
FinPoly dirichlet_closure(const FinPoly& p, const FinPoly& q, std::size_t cap = kDefaultSizeCap);

// Functoriality on lenses.
Lens sum_lens(const Lens& f, const Lens& g);
Lens product_lens(const Lens& f, const Lens& g);
Lens tensor_lens(const Lens& f, const Lens& g);
Lens tensor_all_lens(const std::vector<Lens>& fs);
/// f o g : dom(f) o dom(g) -> cod(f) o cod(g)
Lens compose_lens(const Lens& f, const Lens& g);

// Universal maps.
Lens copair(const Lens& f, const Lens& g);   // p + q -> r
Lens pairing(const Lens& f, const Lens& g);  // r -> p x q
Lens proj_left(const FinPoly& p, const FinPoly& q);
Lens proj_right(const FinPoly& p, const FinPoly& q);
Lens inj_left(const FinPoly& p, const FinPoly& q);
Lens inj_right(const FinPoly& p, const FinPoly& q);
Lens to_terminal(const FinPoly& p);  // p -> 1
Lens from_initial(const FinPoly& p);  // 0 -> p

struct Iso {
  Lens forward;
  Lens backward;
};

Iso sum_assoc(const FinPoly& p, const FinPoly& q, const FinPoly& r);  // (p+q)+r -> p+(q+r)
Iso sum_left_unit(const FinPoly& p);                                 // 0+p -> p
Iso sum_right_unit(const FinPoly& p);                                // p+0 -> p
Iso sum_symmetry(const FinPoly& p, const FinPoly& q);                 // p+q -> q+p

Iso product_assoc(const FinPoly& p, const FinPoly& q, const FinPoly& r);
Iso product_left_unit(const FinPoly& p);   // 1 x p -> p
Iso product_right_unit(const FinPoly& p);  // p x 1 -> p
Iso product_symmetry(const FinPoly& p, const FinPoly& q);

Iso tensor_assoc(const FinPoly& p, const FinPoly& q, const FinPoly& r);
Iso tensor_left_unit(const FinPoly& p);   // y (x) p -> p
Iso tensor_right_unit(const FinPoly& p);  // p (x) y -> p
Iso tensor_symmetry(const FinPoly& p, const FinPoly& q);

Iso compose_assoc(const FinPoly& p, const FinPoly& q, const FinPoly& r);  // (p o q) o r -> p o (q o r)
Iso compose_left_unit(const FinPoly& p);                                 // y o p -> p
Iso compose_right_unit(const FinPoly& p);                                // p o y -> p

/// (p1 o p2) (x) (q1 o q2) -> (p1 (x) q1) o (p2 (x) q2)
Lens duoidal(const FinPoly& p1, const FinPoly& p2, const FinPoly& q1, const FinPoly& q2);

/// (pq + r) o s  ~  (p o s)(q o s) + (r o s)
Iso distribute_left(const FinPoly& p, const FinPoly& q, const FinPoly& r, const FinPoly& s);

/// prod_a sum_{i in I(a)} p_(a,i)  ~  sum_{i in prod_a I(a)} prod_a p_(a,i(a)),
/// with family[a][i] = p_(a,i).
Iso complete_distributivity_instance(const std::vector<std::vector<FinPoly>>& family);

/// The bijection Poly(p x q, r) ~ Poly(p, r^q) for fixed p, q, r, with the
/// closure and its index tables built once.
class CartesianCurry {
 public:
  CartesianCurry(const FinPoly& p, const FinPoly& q, const FinPoly& r);
  const FinPoly& source() const;  // p x q
  const FinPoly& target() const;  // r^q
  Lens curry(const Lens& f) const;
  Lens uncurry(const Lens& g) const;

  struct Tables;

 private:
  std::shared_ptr<const Tables> t_;
};

/// The bijection Poly(p (x) q, r) ~ Poly(p, [q,r]) for fixed p, q, r.
class DirichletCurry {
 public:
  DirichletCurry(const FinPoly& p, const FinPoly& q, const FinPoly& r);
  const FinPoly& source() const;  // p (x) q
  const FinPoly& target() const;  // [q,r]
  Lens curry(const Lens& f) const;
  Lens uncurry(const Lens& g) const;

  struct Tables;

 private:
  std::shared_ptr<const Tables> t_;
};

Lens curry_cartesian(const FinPoly& p, const FinPoly& q, const Lens& f);
Lens uncurry_cartesian(const FinPoly& p, const FinPoly& q, const FinPoly& r, const Lens& g);
Lens curry_dirichlet(const FinPoly& p, const FinPoly& q, const Lens& f);
Lens uncurry_dirichlet(const FinPoly& p, const FinPoly& q, const FinPoly& r, const Lens& g);

}  // namespace polydyn
