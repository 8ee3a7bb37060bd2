#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qsl2/errors.hpp"
#include "qsl2/gauss.hpp"

namespace qsl2 {

// ---------------------------------------------------------------------------
// Laurent polynomials in s = q^{1/2} over Q(i). Integer exponents of s, so
// half-integer powers of q are representable. Invariant: no zero coefficients
// are stored.
// ---------------------------------------------------------------------------
struct HalfLaurent {
  std::map<int, GaussRat> c;

  static HalfLaurent zero() { return {}; }
  static HalfLaurent one() { return term(0, GaussRat(1)); }
  static HalfLaurent term(int exp, GaussRat coeff) {
    HalfLaurent h;
    if (!coeff.is_zero()) h.c.emplace(exp, std::move(coeff));
    return h;
  }

  bool is_zero() const { return c.empty(); }
  int val() const { return c.begin()->first; }   // requires nonzero
  int deg() const { return c.rbegin()->first; }  // requires nonzero

  bool even_only() const {
    for (const auto& [e, _] : c)
      if (e % 2 != 0) return false;
    return true;
  }

  void add_term(int exp, const GaussRat& coeff) {
    if (coeff.is_zero()) return;
    auto it = c.find(exp);
    if (it == c.end()) {
      c.emplace(exp, coeff);
    } else {
      it->second += coeff;
      if (it->second.is_zero()) c.erase(it);
    }
  }

  friend HalfLaurent operator+(const HalfLaurent& a, const HalfLaurent& b) {
    HalfLaurent r = a;
    for (const auto& [e, v] : b.c) r.add_term(e, v);
    return r;
  }
  friend HalfLaurent operator-(const HalfLaurent& a, const HalfLaurent& b) {
    HalfLaurent r = a;
    for (const auto& [e, v] : b.c) r.add_term(e, -v);
    return r;
  }
  friend HalfLaurent operator-(const HalfLaurent& a) {
    HalfLaurent r;
    for (const auto& [e, v] : a.c) r.c.emplace(e, -v);
    return r;
  }
  friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
    HalfLaurent r;
    for (const auto& [ea, va] : a.c)
      for (const auto& [eb, vb] : b.c) r.add_term(ea + eb, va * vb);
    return r;
  }

  HalfLaurent scaled(const GaussRat& k) const {
    HalfLaurent r;
    if (k.is_zero()) return r;
    for (const auto& [e, v] : c) r.c.emplace(e, v * k);
    return r;
  }
  HalfLaurent shifted(int k) const {
    HalfLaurent r;
    for (const auto& [e, v] : c) r.c.emplace(e + k, v);
    return r;
  }
  HalfLaurent conj_i() const {
    HalfLaurent r;
    for (const auto& [e, v] : c) r.c.emplace(e, v.conj());
    return r;
  }

  GaussRat eval_s(const GaussRat& s0) const {
    GaussRat acc;
    for (const auto& [e, v] : c) acc += v * gpow(s0, e);
    return acc;
  }

  friend bool operator==(const HalfLaurent& a, const HalfLaurent& b) {
    return a.c == b.c;
  }
  friend bool operator!=(const HalfLaurent& a, const HalfLaurent& b) {
    return !(a == b);
  }
};

// ---------------------------------------------------------------------------
// Dense polynomials in s over Q(i), ascending coefficients. Used for
// denominators and gcd work. Invariant: no trailing zero (empty == 0).
// ---------------------------------------------------------------------------
struct GPoly {
  std::vector<GaussRat> a;

  static GPoly zero() { return {}; }
  static GPoly one() { return GPoly{{GaussRat(1)}}; }
  static GPoly from_laurent(const HalfLaurent& h) {
    GPoly p;
    if (h.is_zero()) return p;
    if (h.val() < 0) throw err("InternalError", "negative exponent in GPoly");
    p.a.assign(static_cast<std::size_t>(h.deg()) + 1, GaussRat(0));
    for (const auto& [e, v] : h.c) p.a[static_cast<std::size_t>(e)] = v;
    return p;
  }
  HalfLaurent to_laurent() const {
    HalfLaurent h;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (!a[k].is_zero()) h.c.emplace(static_cast<int>(k), a[k]);
    return h;
  }

  void normalize() {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }
  bool is_zero() const { return a.empty(); }
  bool is_one() const { return a.size() == 1 && a[0].is_one(); }
  int deg() const { return static_cast<int>(a.size()) - 1; }  // -1 for zero
  const GaussRat& lead() const { return a.back(); }

  GPoly conj_i() const {
    GPoly r = *this;
    for (auto& v : r.a) v = v.conj();
    return r;
  }

  GaussRat eval(const GaussRat& x) const {
    GaussRat acc;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend GPoly operator*(const GPoly& p, const GPoly& q) {
    GPoly r;
    if (p.is_zero() || q.is_zero()) return r;
    r.a.assign(p.a.size() + q.a.size() - 1, GaussRat(0));
    for (std::size_t i = 0; i < p.a.size(); ++i)
      for (std::size_t j = 0; j < q.a.size(); ++j) r.a[i + j] += p.a[i] * q.a[j];
    r.normalize();
    return r;
  }
  GPoly scaled(const GaussRat& k) const {
    GPoly r;
    if (k.is_zero()) return r;
    r.a = a;
    for (auto& v : r.a) v *= k;
    return r;
  }

  friend bool operator==(const GPoly& p, const GPoly& q) { return p.a == q.a; }
  friend bool operator!=(const GPoly& p, const GPoly& q) { return !(p == q); }
};

// Remainder of p modulo m over the field Q(i).
inline GPoly gpoly_rem(GPoly p, const GPoly& m) {
  if (m.is_zero()) throw err("InternalError", "polynomial division by zero");
  while (!p.is_zero() && p.deg() >= m.deg()) {
    GaussRat f = p.lead() / m.lead();
    int shift = p.deg() - m.deg();
    for (std::size_t k = 0; k < m.a.size(); ++k)
      p.a[k + static_cast<std::size_t>(shift)] -= f * m.a[k];
    p.normalize();
  }
  return p;
}

inline GPoly gpoly_divexact(const GPoly& p, const GPoly& d) {
  if (d.is_zero()) throw err("InternalError", "polynomial division by zero");
  GPoly q, r = p;
  if (p.is_zero()) return q;
  q.a.assign(static_cast<std::size_t>(p.deg() - d.deg()) + 1, GaussRat(0));
  while (!r.is_zero() && r.deg() >= d.deg()) {
    GaussRat f = r.lead() / d.lead();
    int shift = r.deg() - d.deg();
    q.a[static_cast<std::size_t>(shift)] = f;
    for (std::size_t k = 0; k < d.a.size(); ++k)
      r.a[k + static_cast<std::size_t>(shift)] -= f * d.a[k];
    r.normalize();
  }
  if (!r.is_zero()) throw err("InternalError", "inexact polynomial division");
  q.normalize();
  return q;
}

// Monic gcd.
inline GPoly gpoly_gcd(GPoly p, GPoly q) {
  while (!q.is_zero()) {
    GPoly r = gpoly_rem(std::move(p), q);
    p = std::move(q);
    q = std::move(r);
    if (!q.is_zero()) q = q.scaled(GaussRat(1) / q.lead());
  }
  if (p.is_zero()) return p;
  return p.scaled(GaussRat(1) / p.lead());
}

// ---------------------------------------------------------------------------
// Rational functions in s over Q(i), canonical form:
//   num: Laurent polynomial (carries all s-units),
//   den: monic polynomial with nonzero constant term, coprime to num.
// Equality of canonical forms is equality in the field.
// ---------------------------------------------------------------------------
struct RatFunc {
  HalfLaurent num;
  GPoly den = GPoly::one();

  RatFunc() = default;

  static RatFunc zero() { return {}; }
  static RatFunc one() { return from_laurent(HalfLaurent::one()); }
  static RatFunc from_laurent(HalfLaurent n) {
    RatFunc f;
    f.num = std::move(n);
    return f;
  }
  static RatFunc from_gauss(const GaussRat& g) {
    return from_laurent(HalfLaurent::term(0, g));
  }
  static RatFunc from_int(long n) { return from_gauss(GaussRat(n)); }
  static RatFunc s_pow(int k) {
    return from_laurent(HalfLaurent::term(k, GaussRat(1)));
  }
  static RatFunc q_pow(int k) { return s_pow(2 * k); }

  static RatFunc make(HalfLaurent n, HalfLaurent d) {
    if (d.is_zero()) throw err("DivisionByZero", "zero denominator");
    RatFunc f;
    if (n.is_zero()) return f;
    int dv = d.val();
    GPoly den = GPoly::from_laurent(d.shifted(-dv));
    n = n.shifted(-dv);
    int nv = n.val();
    GPoly np = GPoly::from_laurent(n.shifted(-nv));
    GPoly g = gpoly_gcd(np, den);
    if (g.deg() > 0) {
      np = gpoly_divexact(np, g);
      den = gpoly_divexact(den, g);
    }
    GaussRat lead = den.lead();
    if (!lead.is_one()) {
      den = den.scaled(GaussRat(1) / lead);
      np = np.scaled(GaussRat(1) / lead);
    }
    f.num = np.to_laurent().shifted(nv);
    f.den = std::move(den);
    return f;
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_one() const { return num == HalfLaurent::one() && den.is_one(); }
  bool den_is_one() const { return den.is_one(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return make(a.num * b.den.to_laurent() + b.num * a.den.to_laurent(),
                (a.den * b.den).to_laurent());
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return make(a.num * b.den.to_laurent() - b.num * a.den.to_laurent(),
                (a.den * b.den).to_laurent());
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num = -r.num;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return make(a.num * b.num, (a.den * b.den).to_laurent());
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw err("DivisionByZero", "division by zero");
    return make(a.num * b.den.to_laurent(), a.den.to_laurent() * b.num);
  }
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

  RatFunc pow(int k) const {
    if (k < 0) return one() / pow(-k);
    RatFunc r = one(), base = *this;
    for (int e = k; e > 0; e >>= 1) {
      if (e & 1) r *= base;
      base *= base;
    }
    return r;
  }

  // The *-structure fixes s and conjugates the Gaussian coefficients.
  RatFunc star() const {
    RatFunc r;
    r.num = num.conj_i();
    r.den = den.conj_i();
    return r;
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) {
    return !(a == b);
  }

  bool has_odd_power() const {
    if (!num.even_only()) return true;
    for (std::size_t k = 1; k < den.a.size(); k += 2)
      if (!den.a[k].is_zero()) return true;
    return false;
  }

  // Evaluate at s = s0 (exact). Throws PoleAtPoint if the reduced
  // denominator vanishes.
  GaussRat eval_s(const GaussRat& s0) const {
    GaussRat dv = den.eval(s0);
    if (dv.is_zero()) throw err("PoleAtPoint", "denominator vanishes at the evaluation point");
    return num.eval_s(s0) / dv;
  }

  // Evaluate at q = q0 > 0. Half-integer powers need q0 to be a rational
  // square; otherwise IrrationalSqrt.
  GaussRat eval_q(const Rational& q0) const {
    if (q0 <= 0) throw err("PoleAtPoint", "evaluation point must be positive");
    if (has_odd_power()) {
      auto s0 = rational_sqrt(q0);
      if (!s0)
        throw err("IrrationalSqrt",
                  "half-integer powers of q occur and q0 has no rational square root");
      return eval_s(GaussRat(*s0));
    }
    // Even powers only: substitute q0 for s^2 directly.
    GaussRat dv;
    for (std::size_t k = 0; k < den.a.size(); k += 2)
      dv += den.a[k] * GaussRat(gpow(GaussRat(q0), static_cast<int>(k) / 2).re);
    if (dv.is_zero()) throw err("PoleAtPoint", "denominator vanishes at the evaluation point");
    GaussRat nv;
    for (const auto& [e, v] : num.c) nv += v * gpow(GaussRat(q0), e / 2);
    return nv / dv;
  }
};

// ---------------------------------------------------------------------------
// q-integers and relatives.
//   qint(n)   = (q^n - q^-n)/(q - q^-1) = q^{n-1} + q^{n-3} + ... + q^{1-n}
//   qbrace(n) = q^n + q^-n
// ---------------------------------------------------------------------------
// q - q^-1, the ubiquitous denominator of q-integer ratios.
inline RatFunc rf_q_minus_qinv() {
  return RatFunc::s_pow(2) - RatFunc::s_pow(-2);
}

inline RatFunc qint(int n) {
  if (n == 0) return RatFunc::zero();
  if (n < 0) return -qint(-n);
  HalfLaurent h;
  for (int j = 0; j < n; ++j) h.c.emplace(2 * (n - 1 - 2 * j), GaussRat(1));
  return RatFunc::from_laurent(h);
}

inline RatFunc qbrace(int n) {
  HalfLaurent h;
  h.add_term(2 * n, GaussRat(1));
  h.add_term(-2 * n, GaussRat(1));
  return RatFunc::from_laurent(h);
}

// ---------------------------------------------------------------------------
// Sturm-based pole detection on the positive real axis.
// ---------------------------------------------------------------------------
namespace detail {

using RPoly = std::vector<Rational>;  // ascending, no trailing zero

inline void rnormalize(RPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RPoly rderiv(const RPoly& p) {
  RPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  rnormalize(d);
  return d;
}

inline RPoly rrem(RPoly p, const RPoly& m) {
  while (p.size() >= m.size() && !p.empty()) {
    Rational f = p.back() / m.back();
    std::size_t shift = p.size() - m.size();
    for (std::size_t k = 0; k < m.size(); ++k) p[k + shift] -= f * m[k];
    rnormalize(p);
  }
  return p;
}

inline RPoly rgcd(RPoly p, RPoly q) {
  rnormalize(p);
  rnormalize(q);
  while (!q.empty()) {
    RPoly r = rrem(std::move(p), q);
    p = std::move(q);
    q = std::move(r);
  }
  if (!p.empty()) {
    Rational lead = p.back();
    for (auto& v : p) v /= lead;
  }
  return p;
}

inline int rsign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Number of distinct real roots of p in the open interval (0, inf).
// Requires p(0) != 0 (roots at 0 must be stripped by the caller).
inline int sturm_positive_roots(RPoly p) {
  rnormalize(p);
  if (p.size() <= 1) return 0;
  RPoly sqf_gcd = rgcd(p, rderiv(p));
  if (sqf_gcd.size() > 1) {
    // Divide out repeated factors; Sturm theory wants a squarefree input.
    RPoly q;
    RPoly r = p;
    q.assign(p.size() - sqf_gcd.size() + 1, Rational(0));
    while (r.size() >= sqf_gcd.size() && !r.empty()) {
      Rational f = r.back() / sqf_gcd.back();
      std::size_t shift = r.size() - sqf_gcd.size();
      q[shift] = f;
      for (std::size_t k = 0; k < sqf_gcd.size(); ++k) r[k + shift] -= f * sqf_gcd[k];
      rnormalize(r);
    }
    p = std::move(q);
    rnormalize(p);
    if (p.size() <= 1) return 0;
  }
  std::vector<RPoly> chain{p, rderiv(p)};
  while (!chain.back().empty()) {
    RPoly r = rrem(chain[chain.size() - 2], chain.back());
    for (auto& v : r) v = -v;
    chain.push_back(std::move(r));
  }
  chain.pop_back();
  auto variations = [&](auto sign_of) {
    int v = 0, prev = 0;
    for (const auto& e : chain) {
      int s = sign_of(e);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  };
  int at_zero = variations([](const RPoly& e) {
    for (const auto& coeff : e)
      if (coeff != 0) return rsign(coeff);
    return 0;
  });
  // Sign just right of 0 equals the sign of the lowest nonzero coefficient,
  // which is what the lambda above reports; a chain member vanishing exactly
  // at 0 is handled by that same convention.
  int at_inf = variations([](const RPoly& e) { return e.empty() ? 0 : rsign(e.back()); });
  return at_zero - at_inf;
}

}  // namespace detail

// True iff the canonical denominator has no root q in (0, inf), i.e. the
// function can be specialized at every positive q. Non-real denominators are
// handled through gcd(Re, Im): a real point is a root iff both parts vanish.
inline bool pole_free_on_positive_axis(const RatFunc& f) {
  const GPoly& den = f.den;
  if (den.deg() <= 0) return true;
  detail::RPoly re, im;
  for (const auto& v : den.a) {
    re.push_back(v.re);
    im.push_back(v.im);
  }
  detail::rnormalize(re);
  detail::rnormalize(im);
  detail::RPoly g = im.empty() ? re : detail::rgcd(re, im);
  if (g.size() <= 1) return true;
  // den(0) != 0 ensures g(0) != 0, so no root-at-zero stripping is needed.
  return detail::sturm_positive_roots(g) == 0;
}

}  // namespace qsl2
