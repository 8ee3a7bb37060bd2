#pragma once

#include <vector>

#include "qsl2/errors.hpp"
#include "qsl2/scalars.hpp"

namespace qsl2 {

// Truncated Laurent series in h where q = e^h. c[i] is the exact coefficient
// of h^{val+i}; the window [val, val+len) is the range of exactly known
// coefficients. Invariants: empty c means the series is zero on its window
// (val then 0 by convention); otherwise c.front() != 0.
struct Jet {
  int val = 0;
  std::vector<GaussRat> c;

  bool is_zero() const { return c.empty(); }
  int len() const { return static_cast<int>(c.size()); }
  int end() const { return val + len(); }  // first unknown exponent

  // Coefficient of h^k within the known window, 0 outside support.
  GaussRat at(int k) const {
    if (k < val || k >= end()) return GaussRat(0);
    return c[static_cast<std::size_t>(k - val)];
  }

  void strip() {
    std::size_t lead = 0;
    while (lead < c.size() && c[lead].is_zero()) ++lead;
    if (lead == c.size()) {
      c.clear();
      val = 0;
      return;
    }
    if (lead > 0) {
      c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
      val += static_cast<int>(lead);
    }
  }

  friend bool operator==(const Jet& a, const Jet& b) {
    return a.val == b.val && a.c == b.c;
  }
};

inline Jet jet_zero() { return {}; }

inline Jet jet_const(const GaussRat& a, int order) {
  Jet j;
  if (a.is_zero()) return j;
  j.val = 0;
  j.c.assign(static_cast<std::size_t>(order), GaussRat(0));
  j.c[0] = a;
  return j;
}

// exp(a h) up to order coefficients.
inline Jet jet_exp(const GaussRat& a, int order) {
  Jet j;
  j.val = 0;
  j.c.assign(static_cast<std::size_t>(order), GaussRat(0));
  j.c[0] = GaussRat(1);
  for (int k = 1; k < order; ++k)
    j.c[static_cast<std::size_t>(k)] =
        j.c[static_cast<std::size_t>(k - 1)] * a / GaussRat(k);
  return j;
}

inline Jet jet_truncate(Jet a, int max_len) {
  if (a.len() > max_len) a.c.resize(static_cast<std::size_t>(max_len));
  a.strip();
  return a;
}

inline Jet jet_add(const Jet& a, const Jet& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Jet r;
  r.val = std::min(a.val, b.val);
  int end = std::min(a.end(), b.end());
  if (end <= r.val) throw err("InternalError", "jet windows do not overlap");
  r.c.assign(static_cast<std::size_t>(end - r.val), GaussRat(0));
  for (int k = r.val; k < end; ++k)
    r.c[static_cast<std::size_t>(k - r.val)] = a.at(k) + b.at(k);
  r.strip();
  return r;
}

inline Jet jet_neg(Jet a) {
  for (auto& v : a.c) v = -v;
  return a;
}

inline Jet jet_sub(const Jet& a, const Jet& b) { return jet_add(a, jet_neg(b)); }

inline Jet jet_scale(Jet a, const GaussRat& k) {
  if (k.is_zero()) return jet_zero();
  for (auto& v : a.c) v *= k;
  return a;
}

inline Jet jet_mul(const Jet& a, const Jet& b) {
  if (a.is_zero() || b.is_zero()) return jet_zero();
  Jet r;
  r.val = a.val + b.val;
  int end = std::min(a.val + b.end(), b.val + a.end());
  r.c.assign(static_cast<std::size_t>(end - r.val), GaussRat(0));
  for (int i = 0; i < a.len(); ++i) {
    if (a.c[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < b.len(); ++j) {
      int pos = i + j;
      if (pos >= r.len()) break;
      r.c[static_cast<std::size_t>(pos)] +=
          a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)];
    }
  }
  r.strip();
  return r;
}

// a / b. A divisor whose entire known window vanishes cannot be inverted:
// the quotient has no computable leading term.
inline Jet jet_div(const Jet& a, const Jet& b) {
  if (b.is_zero())
    throw err("DivisorIndistinguishableFromZero",
              "jet divisor vanishes on its entire known window");
  if (a.is_zero()) return jet_zero();
  Jet r;
  r.val = a.val - b.val;
  int len = std::min(a.len(), b.len());
  r.c.assign(static_cast<std::size_t>(len), GaussRat(0));
  // Standard recurrence: r_k = (a_k - sum_{j<k} r_j b_{k-j}) / b_0.
  for (int k = 0; k < len; ++k) {
    GaussRat acc = a.c[static_cast<std::size_t>(k)];
    for (int j = 0; j < k; ++j)
      acc -= r.c[static_cast<std::size_t>(j)] * b.c[static_cast<std::size_t>(k - j)];
    r.c[static_cast<std::size_t>(k)] = acc / b.c[0];
  }
  r.strip();
  return r;
}

// Constant term as a number: the value at h = 0. Negative valuation means
// the series blows up there.
inline GaussRat jet_const_term(const Jet& a) {
  if (a.is_zero()) return GaussRat(0);
  if (a.val < 0)
    throw err("NegativeValuation", "jet has a pole at h = 0");
  return a.at(0);
}

namespace detail {

// Taylor coefficients of a Laurent polynomial in s = e^{h/2}: every term
// c s^k contributes c e^{kh/2}. Computed with padding so that downstream
// cancellation cannot eat into the requested window.
inline Jet jet_of_laurent(const HalfLaurent& h, int work) {
  Jet acc = jet_zero();
  for (const auto& [e, v] : h.c)
    acc = jet_add(acc, jet_scale(jet_exp(GaussRat(Rational(e, 2)), work), v));
  return acc;
}

}  // namespace detail

// Expansion of a rational function in q at q = e^h, exact to `order`
// coefficients. Internal work carries `order` extra guard positions; the
// guard is validated, so a returned jet is exact on its whole window.
inline Jet jet_of(const RatFunc& f, int order) {
  if (f.is_zero()) return jet_zero();
  int work = 2 * order;
  Jet num = detail::jet_of_laurent(f.num, work);
  Jet den = detail::jet_of_laurent(f.den.to_laurent(), work);
  if (num.is_zero()) {
    // The numerator of a nonzero rational function vanished to the full
    // working precision; the guard band was too small.
    throw err("InternalError", "jet working precision exhausted");
  }
  if (num.val > order || den.val > order)
    throw err("InternalError", "jet working precision exhausted");
  Jet q = jet_div(num, den);
  return jet_truncate(q, order);
}

}  // namespace qsl2
