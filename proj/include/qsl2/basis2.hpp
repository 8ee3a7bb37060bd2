#pragma once

#include <compare>
#include <map>

#include "qsl2/errors.hpp"
#include "qsl2/pbw.hpp"
#include "qsl2/scalars.hpp"

namespace qsl2 {

// ---------------------------------------------------------------------------
// Second PBW basis: theta^m z^n a^d b^p with d in {0,1}, built from the
// coideal generators. The straightening engine here uses closed-form jump
// rules (powers of z crossed in one step, products against a and b resolved
// by fixed quadratic identities). A structurally different one-step
// recursion lives in indep_oracle.hpp and certifies this engine.
// ---------------------------------------------------------------------------
struct Pbw2Monomial {
  int m = 0;  // theta exponent
  int n = 0;  // z exponent, >= 0
  int d = 0;  // a exponent, 0 or 1
  int p = 0;  // b exponent
  friend auto operator<=>(const Pbw2Monomial&, const Pbw2Monomial&) = default;
};

struct Element2 {
  std::map<Pbw2Monomial, RatFunc> terms;  // invariant: no zero coefficients

  static Element2 zero() { return {}; }
  static Element2 unit() { return monomial({0, 0, 0, 0}, RatFunc::one()); }
  static Element2 monomial(Pbw2Monomial m, RatFunc coeff) {
    Element2 e;
    if (!coeff.is_zero()) e.terms.emplace(m, std::move(coeff));
    return e;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const Pbw2Monomial& m, const RatFunc& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, coeff);
    } else {
      it->second += coeff;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  friend Element2 operator+(const Element2& a, const Element2& b) {
    Element2 r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
  }
  friend Element2 operator-(const Element2& a, const Element2& b) {
    Element2 r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, -c);
    return r;
  }
  Element2 scaled(const RatFunc& k) const {
    Element2 r;
    if (k.is_zero()) return r;
    for (const auto& [m, c] : terms) r.terms.emplace(m, c * k);
    return r;
  }

  friend bool operator==(const Element2& a, const Element2& b) {
    return a.terms == b.terms;
  }
  friend bool operator!=(const Element2& a, const Element2& b) {
    return !(a == b);
  }
};

namespace detail2 {

// x z^n = q^{2n} z^n x + B_n z^n with B_n = q + q^3 + ... + q^{2n-1}
inline RatFunc bjump(int n) {
  HalfLaurent h;
  for (int j = 0; j < n; ++j) h.add_term(2 * (2 * j + 1), GaussRat(1));
  return RatFunc::from_laurent(h);
}

// y z^n = q^{-2n} z^n y + C_n z^n with C_n = -(q^-1 + q^-3 + ... + q^{1-2n})
inline RatFunc cjump(int n) {
  HalfLaurent h;
  for (int j = 0; j < n; ++j) h.add_term(-2 * (2 * j + 1), GaussRat(-1));
  return RatFunc::from_laurent(h);
}

inline RatFunc half() { return RatFunc::from_gauss(GaussRat(Rational(1, 2))); }

}  // namespace detail2

inline Element2 lmul2(Gen g, const Pbw2Monomial& mono);

inline Element2 lmul2(Gen g, const Element2& e) {
  Element2 r;
  for (const auto& [m, c] : e.terms) {
    Element2 part = lmul2(g, m);
    for (const auto& [pm, pc] : part.terms) r.add_term(pm, pc * c);
  }
  return r;
}

inline Element2 prepend_theta2(const Element2& e) {
  Element2 r;
  for (const auto& [m, c] : e.terms)
    r.terms.emplace(Pbw2Monomial{m.m + 1, m.n, m.d, m.p}, c);
  return r;
}

inline Element2 prepend_zn(const Element2& e, int n) {
  Element2 r;
  for (const auto& [m, c] : e.terms)
    r.terms.emplace(Pbw2Monomial{m.m, m.n + n, m.d, m.p}, c);
  return r;
}

// Left multiplication of a basis monomial by one coideal generator.
// Exchange rules past theta (from the coideal presentation):
//   x theta = q^-2 theta x + q^-1 [2] z - q^-1 theta
//   y theta = q^2 theta y - q [2] z + q theta
//   z theta = theta z - y + x
// With m = 0, powers of z are crossed in a single jump (detail2 coefficients)
// and the remaining a/b block is resolved by the quadratic identities
//   x a = (D/2) ab - (D^2/2) b^2 - 2b - 2q^2 z^2,   D = q - q^-1
//   y a = (D/2) ab + (D^2/2) b^2 + 2b + 2q^-2 z^2
//   x b^p = -(1/2) a b^p + (D/2) b^{p+1},  y b^p = (1/2) a b^p + (D/2) b^{p+1}
inline Element2 lmul2(Gen g, const Pbw2Monomial& mono) {
  const RatFunc D = rf_q_minus_qinv();
  switch (g) {
    case Gen::Theta:
      return Element2::monomial({mono.m + 1, mono.n, mono.d, mono.p},
                                RatFunc::one());
    case Gen::lx: {
      if (mono.m > 0) {
        Pbw2Monomial rest{mono.m - 1, mono.n, mono.d, mono.p};
        Element2 r = prepend_theta2(lmul2(Gen::lx, rest)).scaled(RatFunc::q_pow(-2));
        r = r + lmul2(Gen::lz, rest).scaled(RatFunc::q_pow(-1) * qbrace(1));
        r.add_term(mono, -RatFunc::q_pow(-1));
        return r;
      }
      // x a^d b^p, then the z-jump prefix.
      Element2 xr;
      if (mono.d == 1) {
        xr.add_term({0, 0, 1, mono.p + 1}, D * detail2::half());
        xr.add_term({0, 0, 0, mono.p + 2}, -D * D * detail2::half());
        xr.add_term({0, 0, 0, mono.p + 1}, RatFunc::from_int(-2));
        xr.add_term({0, 2, 0, mono.p}, RatFunc::from_int(-2) * RatFunc::q_pow(2));
      } else {
        xr.add_term({0, 0, 1, mono.p}, -detail2::half());
        xr.add_term({0, 0, 0, mono.p + 1}, D * detail2::half());
      }
      Element2 r = prepend_zn(xr, mono.n).scaled(RatFunc::q_pow(2 * mono.n));
      r.add_term(mono, detail2::bjump(mono.n));
      return r;
    }
    case Gen::ly: {
      if (mono.m > 0) {
        Pbw2Monomial rest{mono.m - 1, mono.n, mono.d, mono.p};
        Element2 r = prepend_theta2(lmul2(Gen::ly, rest)).scaled(RatFunc::q_pow(2));
        r = r - lmul2(Gen::lz, rest).scaled(RatFunc::q_pow(1) * qbrace(1));
        r.add_term(mono, RatFunc::q_pow(1));
        return r;
      }
      Element2 yr;
      if (mono.d == 1) {
        yr.add_term({0, 0, 1, mono.p + 1}, D * detail2::half());
        yr.add_term({0, 0, 0, mono.p + 2}, D * D * detail2::half());
        yr.add_term({0, 0, 0, mono.p + 1}, RatFunc::from_int(2));
        yr.add_term({0, 2, 0, mono.p}, RatFunc::from_int(2) * RatFunc::q_pow(-2));
      } else {
        yr.add_term({0, 0, 1, mono.p}, detail2::half());
        yr.add_term({0, 0, 0, mono.p + 1}, D * detail2::half());
      }
      Element2 r = prepend_zn(yr, mono.n).scaled(RatFunc::q_pow(-2 * mono.n));
      r.add_term(mono, detail2::cjump(mono.n));
      return r;
    }
    case Gen::lz: {
      if (mono.m > 0) {
        Pbw2Monomial rest{mono.m - 1, mono.n, mono.d, mono.p};
        return prepend_theta2(lmul2(Gen::lz, rest)) + lmul2(Gen::lx, rest) -
               lmul2(Gen::ly, rest);
      }
      return Element2::monomial({0, mono.n + 1, mono.d, mono.p}, RatFunc::one());
    }
    case Gen::la:
      return lmul2(Gen::ly, mono) - lmul2(Gen::lx, mono);
    case Gen::lb: {
      Element2 e = Element2::monomial(mono, RatFunc::one());
      Element2 ye = lmul2(Gen::ly, e);
      Element2 r = Element2::zero() - lmul2(Gen::lx, ye);
      Element2 zze = lmul2(Gen::lz, lmul2(Gen::lz, e));
      return r - zze.scaled(RatFunc::q_pow(2));
    }
    // The unshifted generators expand affinely: X = 1 + D x, etc.
    case Gen::X: {
      Element2 e = Element2::monomial(mono, RatFunc::one());
      return e + lmul2(Gen::lx, e).scaled(D);
    }
    case Gen::Y: {
      Element2 e = Element2::monomial(mono, RatFunc::one());
      return e + lmul2(Gen::ly, e).scaled(D);
    }
    case Gen::Z:
      return lmul2(Gen::lz, mono).scaled(D);
  }
  throw err("InternalError", "unknown generator");
}

inline Element2 normal_form2(const GenWord& w) {
  Element2 acc = Element2::unit();
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    acc = lmul2(*it, acc);
  return acc.scaled(w.scalar);
}

inline Element2 multiply2(const Element2& a, const Element2& b) {
  Element2 acc;
  for (const auto& [m, c] : a.terms) {
    Element2 tmp = b;
    for (int k = 0; k < m.p; ++k) tmp = lmul2(Gen::lb, tmp);
    if (m.d == 1) tmp = lmul2(Gen::la, tmp);
    for (int k = 0; k < m.n; ++k) tmp = lmul2(Gen::lz, tmp);
    for (int k = 0; k < m.m; ++k) tmp = lmul2(Gen::Theta, tmp);
    acc = acc + tmp.scaled(c);
  }
  return acc;
}

// Basis change in both directions, through the affine substitution
// x = (X-1)/D, y = (Y-1)/D, z = Z/D.
inline Element2 convert_1to2(const Element1& e) {
  Element2 acc;
  for (const auto& [m, c] : e.terms) {
    Element2 tmp = Element2::unit();
    for (int k = 0; k < m.m2; ++k) tmp = lmul2(Gen::Z, tmp);
    Gen w = m.n >= 0 ? Gen::Y : Gen::X;
    for (int k = 0; k < std::abs(m.n); ++k) tmp = lmul2(w, tmp);
    for (int k = 0; k < m.m1; ++k) tmp = lmul2(Gen::Theta, tmp);
    acc = acc + tmp.scaled(c);
  }
  return acc;
}

inline Element1 convert_2to1(const Element2& e) {
  Element1 acc;
  for (const auto& [m, c] : e.terms) {
    Element1 tmp = Element1::unit();
    for (int k = 0; k < m.p; ++k) tmp = lmul1(Gen::lb, tmp);
    if (m.d == 1) tmp = lmul1(Gen::la, tmp);
    for (int k = 0; k < m.n; ++k) tmp = lmul1(Gen::lz, tmp);
    for (int k = 0; k < m.m; ++k) tmp = lmul1(Gen::Theta, tmp);
    acc = acc + tmp.scaled(c);
  }
  return acc;
}

// Membership in the integral form: every coefficient of the second normal
// form must be specializable at every q > 0.
inline bool a_membership(const Element2& e) {
  for (const auto& [m, c] : e.terms)
    if (!pole_free_on_positive_axis(c)) return false;
  return true;
}

inline bool a_membership(const Element1& e) { return a_membership(convert_1to2(e)); }

}  // namespace qsl2
