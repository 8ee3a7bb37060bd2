#pragma once

#include <compare>
#include <map>
#include <vector>

#include "qsl2/errors.hpp"
#include "qsl2/scalars.hpp"

namespace qsl2 {

// Generators. Theta/X/Y/Z generate the full algebra; the lowercase letters
// are the shifted coideal generators x = (X-1)/(q-q^-1), y = (Y-1)/(q-q^-1),
// z = Z/(q-q^-1), a = y-x, b = -xy - q^2 z^2.
enum class Gen { Theta, X, Y, Z, lx, ly, lz, la, lb };

struct GenWord {
  RatFunc scalar = RatFunc::one();
  std::vector<Gen> letters;
};

// ---------------------------------------------------------------------------
// First PBW basis: theta^{m1} W^{(n)} Z^{m2} where W^{(n)} = Y^n for n >= 0
// and X^{-n} for n < 0. b_{n,m} below abbreviates W^{(n)} Z^m.
// ---------------------------------------------------------------------------
struct Pbw1Monomial {
  int m1 = 0;  // theta exponent
  int n = 0;   // signed W index
  int m2 = 0;  // Z exponent
  friend auto operator<=>(const Pbw1Monomial&, const Pbw1Monomial&) = default;
};

struct Element1 {
  std::map<Pbw1Monomial, RatFunc> terms;  // invariant: no zero coefficients

  static Element1 zero() { return {}; }
  static Element1 unit() { return monomial({0, 0, 0}, RatFunc::one()); }
  static Element1 monomial(Pbw1Monomial m, RatFunc coeff) {
    Element1 e;
    if (!coeff.is_zero()) e.terms.emplace(m, std::move(coeff));
    return e;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const Pbw1Monomial& m, const RatFunc& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, coeff);
    } else {
      it->second += coeff;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  friend Element1 operator+(const Element1& a, const Element1& b) {
    Element1 r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
  }
  friend Element1 operator-(const Element1& a, const Element1& b) {
    Element1 r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, -c);
    return r;
  }
  Element1 scaled(const RatFunc& k) const {
    Element1 r;
    if (k.is_zero()) return r;
    for (const auto& [m, c] : terms) r.terms.emplace(m, c * k);
    return r;
  }

  friend bool operator==(const Element1& a, const Element1& b) {
    return a.terms == b.terms;
  }
  friend bool operator!=(const Element1& a, const Element1& b) {
    return !(a == b);
  }
};

// Left multiplication by a single uppercase generator against one monomial.
// The m1 = 0 rules are the straightening laws on b_{n,m}:
//   X b_{n,m} = b_{n-1,m} - q^{4n-2} b_{n-1,m+2}   (n > 0; plain shift else)
//   Y b_{n,m} = b_{n+1,m} - q^{4n+2} b_{n+1,m+2}   (n < 0; plain shift else)
//   Z b_{n,m} = q^{2n} b_{n,m+1}
// For m1 > 0 one theta is peeled with
//   X theta = q^-2 theta X + q^-1 [2] Z
//   Y theta = q^2 theta Y - q [2] Z
//   Z theta = theta Z + X - Y
inline Element1 lmul1(Gen g, const Pbw1Monomial& mono);

inline Element1 lmul1(Gen g, const Element1& e) {
  Element1 r;
  for (const auto& [m, c] : e.terms) {
    Element1 part = lmul1(g, m);
    for (const auto& [pm, pc] : part.terms) r.add_term(pm, pc * c);
  }
  return r;
}

inline Element1 prepend_theta(const Element1& e) {
  Element1 r;
  for (const auto& [m, c] : e.terms)
    r.terms.emplace(Pbw1Monomial{m.m1 + 1, m.n, m.m2}, c);
  return r;
}

inline Element1 lmul1(Gen g, const Pbw1Monomial& mono) {
  switch (g) {
    case Gen::Theta:
      return Element1::monomial({mono.m1 + 1, mono.n, mono.m2}, RatFunc::one());
    case Gen::X: {
      if (mono.m1 > 0) {
        Pbw1Monomial rest{mono.m1 - 1, mono.n, mono.m2};
        Element1 r = prepend_theta(lmul1(Gen::X, rest)).scaled(RatFunc::q_pow(-2));
        Element1 zpart = lmul1(Gen::Z, rest).scaled(RatFunc::q_pow(-1) * qbrace(1));
        return r + zpart;
      }
      Element1 r = Element1::monomial({0, mono.n - 1, mono.m2}, RatFunc::one());
      if (mono.n > 0)
        r.add_term({0, mono.n - 1, mono.m2 + 2}, -RatFunc::q_pow(4 * mono.n - 2));
      return r;
    }
    case Gen::Y: {
      if (mono.m1 > 0) {
        Pbw1Monomial rest{mono.m1 - 1, mono.n, mono.m2};
        Element1 r = prepend_theta(lmul1(Gen::Y, rest)).scaled(RatFunc::q_pow(2));
        Element1 zpart = lmul1(Gen::Z, rest).scaled(-RatFunc::q_pow(1) * qbrace(1));
        return r + zpart;
      }
      Element1 r = Element1::monomial({0, mono.n + 1, mono.m2}, RatFunc::one());
      if (mono.n < 0)
        r.add_term({0, mono.n + 1, mono.m2 + 2}, -RatFunc::q_pow(4 * mono.n + 2));
      return r;
    }
    case Gen::Z: {
      if (mono.m1 > 0) {
        Pbw1Monomial rest{mono.m1 - 1, mono.n, mono.m2};
        return prepend_theta(lmul1(Gen::Z, rest)) + lmul1(Gen::X, rest) -
               lmul1(Gen::Y, rest);
      }
      return Element1::monomial({0, mono.n, mono.m2 + 1},
                                RatFunc::q_pow(2 * mono.n));
    }
    default:
      break;
  }
  // Lowercase letters expand through the uppercase action.
  Element1 e = Element1::monomial(mono, RatFunc::one());
  RatFunc dinv = RatFunc::one() / rf_q_minus_qinv();
  switch (g) {
    case Gen::lx:
      return (lmul1(Gen::X, e) - e).scaled(dinv);
    case Gen::ly:
      return (lmul1(Gen::Y, e) - e).scaled(dinv);
    case Gen::lz:
      return lmul1(Gen::Z, e).scaled(dinv);
    case Gen::la: {
      Element1 x = (lmul1(Gen::X, e) - e).scaled(dinv);
      Element1 y = (lmul1(Gen::Y, e) - e).scaled(dinv);
      return y - x;
    }
    case Gen::lb: {
      // b = -x y - q^2 z^2 as an operator composition
      Element1 ye = (lmul1(Gen::Y, e) - e).scaled(dinv);
      Element1 xye = (lmul1(Gen::X, ye) - ye).scaled(dinv);
      Element1 ze = lmul1(Gen::Z, e).scaled(dinv);
      Element1 zze = lmul1(Gen::Z, ze).scaled(dinv);
      return Element1::zero() - xye - zze.scaled(RatFunc::q_pow(2));
    }
    default:
      throw err("InternalError", "unknown generator");
  }
}

inline Element1 normal_form1(const GenWord& w) {
  Element1 acc = Element1::unit();
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    acc = lmul1(*it, acc);
  return acc.scaled(w.scalar);
}

inline Element1 multiply1(const Element1& a, const Element1& b) {
  Element1 acc;
  for (const auto& [m, c] : a.terms) {
    Element1 tmp = b;
    for (int k = 0; k < m.m2; ++k) tmp = lmul1(Gen::Z, tmp);
    Gen w = m.n >= 0 ? Gen::Y : Gen::X;
    for (int k = 0; k < std::abs(m.n); ++k) tmp = lmul1(w, tmp);
    for (int k = 0; k < m.m1; ++k) tmp = lmul1(Gen::Theta, tmp);
    acc = acc + tmp.scaled(c);
  }
  return acc;
}

// Conjugate-linear antiautomorphism with X* = Y, Y* = X, Z* = Z, theta* = theta.
// Reverses each monomial and conjugates coefficients (s is fixed).
inline Element1 star1(const Element1& e) {
  Element1 acc;
  for (const auto& [m, c] : e.terms) {
    Element1 tmp = Element1::unit();
    for (int k = 0; k < m.m1; ++k) tmp = lmul1(Gen::Theta, tmp);
    Gen w = m.n >= 0 ? Gen::X : Gen::Y;  // (W^{(n)})* = W^{(-n)}
    for (int k = 0; k < std::abs(m.n); ++k) tmp = lmul1(w, tmp);
    for (int k = 0; k < m.m2; ++k) tmp = lmul1(Gen::Z, tmp);
    acc = acc + tmp.scaled(c.star());
  }
  return acc;
}

inline int degree1(const Element1& e) {
  if (e.is_zero()) throw err("ZeroElement", "the zero element has no degree");
  int d = 0;
  for (const auto& [m, _] : e.terms)
    d = std::max(d, m.m1 + std::abs(m.n) + m.m2);
  return d;
}

// Casimir element: q X + q^-1 Y + (q - q^-1) theta Z.
inline Element1 casimir() {
  Element1 e;
  e.add_term({0, -1, 0}, RatFunc::q_pow(1));
  e.add_term({0, 1, 0}, RatFunc::q_pow(-1));
  e.add_term({1, 0, 1}, rf_q_minus_qinv());
  return e;
}

}  // namespace qsl2
