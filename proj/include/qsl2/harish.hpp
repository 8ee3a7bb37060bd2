#pragma once

#include <map>
#include <vector>

#include "qsl2/errors.hpp"
#include "qsl2/pbw.hpp"
#include "qsl2/tlaurent.hpp"

namespace qsl2 {

// Restriction to the commutative b_{n,0} line: b_{n,m} goes to t^-n when
// m = 0 and to 0 otherwise. Only defined on elements with no theta part.
inline TLaurent ab_map(const Element1& e) {
  TLaurent r;
  for (const auto& [m, v] : e.terms) {
    if (m.m1 != 0)
      throw err("NotInCoidealPart", "element has a theta component; restriction undefined");
    if (m.m2 == 0) r.add_term(-m.n, v);
  }
  return r;
}

// Shifted restriction: drop every monomial with a theta factor, restrict,
// then substitute t -> q^-1 t. Sends b_{n,0} to q^n t^-n and the Casimir
// to t + t^-1. On central elements this is an injective algebra map.
inline TLaurent gamma_tilde(const Element1& e) {
  Element1 flat;
  for (const auto& [m, v] : e.terms)
    if (m.m1 == 0) flat.add_term(m, v);
  TLaurent t = ab_map(flat);
  TLaurent r;
  for (const auto& [k, v] : t.c) r.add_term(k, v * RatFunc::q_pow(-k));
  return r;
}

inline bool is_central(const Element1& e) {
  for (Gen g : {Gen::Theta, Gen::X, Gen::Y, Gen::Z}) {
    GenWord w;
    w.letters.push_back(g);
    Element1 gen = normal_form1(w);
    if (!(multiply1(gen, e) == multiply1(e, gen))) return false;
  }
  return true;
}

// Rewrite a t<->t^-1 symmetric Laurent polynomial as a polynomial in
// u = t + t^-1, using p_0 = 2, p_1 = u, p_k = u p_{k-1} - p_{k-2} so that
// p_k(t + t^-1) = t^k + t^-k. Returns ascending coefficients in u.
inline std::vector<RatFunc> symmetric_to_poly(const TLaurent& t) {
  if (!t.symmetric())
    throw err("NotInvariant", "image is not symmetric under t <-> t^-1");
  int top = t.c.empty() ? 0 : std::max(-t.c.begin()->first, t.c.rbegin()->first);
  std::vector<std::vector<RatFunc>> p(top + 1);
  p[0] = {RatFunc::from_int(2)};
  if (top >= 1) p[1] = {RatFunc::zero(), RatFunc::one()};
  for (int k = 2; k <= top; ++k) {
    p[k].assign(k + 1, RatFunc::zero());
    for (int j = 0; j + 1 <= k; ++j) p[k][j + 1] += p[k - 1][j];
    for (int j = 0; j <= k - 2; ++j) p[k][j] -= p[k - 2][j];
  }
  std::vector<RatFunc> out(top + 1, RatFunc::zero());
  for (const auto& [k, v] : t.c) {
    if (k < 0) continue;  // symmetric: the k > 0 term carries its mirror
    if (k == 0) {
      out[0] += v;
    } else {
      for (int j = 0; j <= k; ++j) out[j] += v * p[k][j];
    }
  }
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

struct CenterWitness {
  Element1 element;
  std::vector<RatFunc> casimir_poly;  // ascending coefficients in u = Casimir
};

// Express a central element as a polynomial in the Casimir and verify the
// expression by expanding it back in the PBW basis.
inline CenterWitness center_express(const Element1& e) {
  if (!is_central(e)) throw err("NotCentral", "element does not commute with the generators");
  std::vector<RatFunc> poly = symmetric_to_poly(gamma_tilde(e));
  Element1 acc = Element1::zero();
  Element1 power = Element1::unit();
  const Element1 omega = casimir();
  for (std::size_t j = 0; j < poly.size(); ++j) {
    acc = acc + power.scaled(poly[j]);
    if (j + 1 < poly.size()) power = multiply1(power, omega);
  }
  if (!(acc == e))
    throw err("InternalError", "central element failed to reconstruct from its Casimir polynomial");
  return {e, std::move(poly)};
}

// Scalar by which a central element acts on the module with parameter lam.
inline RatFunc ev_char(const Element1& e, const RatFunc& lam) {
  if (!is_central(e)) throw err("NotCentral", "character only defined on central elements");
  return gamma_tilde(e).eval(lam);
}

}  // namespace qsl2
