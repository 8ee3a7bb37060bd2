#pragma once

#include <map>

#include "qsl2/scalars.hpp"

namespace qsl2 {

// Laurent polynomials in one auxiliary variable with rational-function
// coefficients. Used both for the image of the center (variable t) and for
// characteristic polynomials (variable X); the container is agnostic.
struct TLaurent {
  std::map<int, RatFunc> c;  // invariant: no zero coefficients

  static TLaurent zero() { return {}; }
  static TLaurent one() { return term(0, RatFunc::one()); }
  static TLaurent var() { return term(1, RatFunc::one()); }
  static TLaurent term(int k, const RatFunc& v) {
    TLaurent t;
    t.add_term(k, v);
    return t;
  }

  void add_term(int k, const RatFunc& v) {
    if (v.is_zero()) return;
    auto it = c.find(k);
    if (it == c.end()) {
      c.emplace(k, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) c.erase(it);
    }
  }

  bool is_zero() const { return c.empty(); }
  int mindeg() const { return c.empty() ? 0 : c.begin()->first; }
  int maxdeg() const { return c.empty() ? 0 : c.rbegin()->first; }

  bool symmetric() const {  // invariant under t <-> t^-1
    for (const auto& [k, v] : c) {
      auto it = c.find(-k);
      if (it == c.end() || !(it->second == v)) return false;
    }
    return true;
  }

  // Evaluate at a rational-function point. Negative exponents require an
  // invertible argument.
  RatFunc eval(const RatFunc& x) const {
    RatFunc r = RatFunc::zero();
    for (const auto& [k, v] : c) r += v * x.pow(k);
    return r;
  }

  friend TLaurent operator+(const TLaurent& a, const TLaurent& b) {
    TLaurent r = a;
    for (const auto& [k, v] : b.c) r.add_term(k, v);
    return r;
  }
  friend TLaurent operator-(const TLaurent& a, const TLaurent& b) {
    TLaurent r = a;
    for (const auto& [k, v] : b.c) r.add_term(k, -v);
    return r;
  }
  friend TLaurent operator*(const TLaurent& a, const TLaurent& b) {
    TLaurent r;
    for (const auto& [ka, va] : a.c)
      for (const auto& [kb, vb] : b.c) r.add_term(ka + kb, va * vb);
    return r;
  }

  TLaurent scaled(const RatFunc& v) const {
    TLaurent r;
    if (v.is_zero()) return r;
    for (const auto& [k, w] : c) r.c.emplace(k, w * v);
    return r;
  }

  friend bool operator==(const TLaurent& a, const TLaurent& b) { return a.c == b.c; }
};

}  // namespace qsl2
