#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsl2/basis2.hpp"
#include "qsl2/pbw.hpp"
#include "qsl2/scalars.hpp"
#include "qsl2/tlaurent.hpp"

namespace qsl2 {

// ---------------------------------------------------------------------------
// Canonical text rendering. Scalar strings are chosen so that the parser in
// expr.hpp reads them back to the same value (left-associative '*' and '/'
// chains, no juxtaposition). The single exception is the half-integer power
// display q^(k/2), which is not in the input grammar and is display-only.
// ---------------------------------------------------------------------------

inline std::string format_rat(const Rational& r) {
  Int n = boost::multiprecision::numerator(r);
  Int d = boost::multiprecision::denominator(r);
  std::string s = n.str();
  if (d != 1) s += "/" + d.str();
  return s;
}

// Pure rationals print bare; pure imaginaries keep the numerator against the
// 'i' ("4i/5"); mixed values go over a common denominator and stay
// parenthesized so the string drops into products unchanged: "(3+4i)/5".
inline std::string format_gauss(const GaussRat& g) {
  if (g.is_zero()) return "0";
  if (g.im == 0) return format_rat(g.re);
  if (g.re == 0) {
    Int n = boost::multiprecision::numerator(g.im);
    Int d = boost::multiprecision::denominator(g.im);
    std::string s;
    if (n == 1) {
      s = "i";
    } else if (n == -1) {
      s = "-i";
    } else {
      s = n.str() + "i";
    }
    if (d != 1) s += "/" + d.str();
    return s;
  }
  Int d = boost::multiprecision::lcm(boost::multiprecision::denominator(g.re),
                                     boost::multiprecision::denominator(g.im));
  Int a = boost::multiprecision::numerator(Rational(g.re * d));
  Int b = boost::multiprecision::numerator(Rational(g.im * d));
  std::string s = "(" + a.str();
  if (b == 1) {
    s += "+i";
  } else if (b == -1) {
    s += "-i";
  } else if (b > 0) {
    s += "+" + b.str() + "i";
  } else {
    s += b.str() + "i";
  }
  s += ")";
  if (d != 1) s += "/" + d.str();
  return s;
}

namespace fmtdetail {

// s^k as a power of q: even exponents are integer powers, odd ones display
// as q^(k/2). Empty string for k = 0.
inline std::string power_str(int k) {
  if (k == 0) return "";
  if (k % 2 == 0) {
    int e = k / 2;
    if (e == 1) return "q";
    return "q^" + std::to_string(e);
  }
  std::string inner = std::to_string(k) + "/2";
  return "q^(" + inner + ")";
}

inline std::string term_str(int k, const GaussRat& c) {
  std::string p = power_str(k);
  if (p.empty()) return format_gauss(c);
  if (c.is_one()) return p;
  if ((-c).is_one()) return "-" + p;
  return format_gauss(c) + "*" + p;
}

// Descending powers, terms joined without spaces: "q^2-1", "q+q^-1".
inline std::string laurent_str(const HalfLaurent& h) {
  if (h.is_zero()) return "0";
  std::string s;
  for (auto it = h.c.rbegin(); it != h.c.rend(); ++it) {
    std::string t = term_str(it->first, it->second);
    if (!s.empty() && t[0] != '-') s += "+";
    s += t;
  }
  return s;
}

// True when the string has a '+' or '-' at paren depth 0 past the first
// character, excluding exponent signs ("q^-1"). Such a string must be
// parenthesized before entering a product.
inline bool has_toplevel_sign(const std::string& s) {
  int depth = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    char ch = s[k];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (k > 0 && depth == 0 && (ch == '+' || ch == '-') && s[k - 1] != '^')
      return true;
  }
  return false;
}

}  // namespace fmtdetail

inline std::string format_ratfunc(const RatFunc& f) {
  if (f.is_zero()) return "0";
  std::string num = fmtdetail::laurent_str(f.num);
  if (f.den_is_one()) return num;
  if (f.num.c.size() > 1) num = "(" + num + ")";
  std::string den = fmtdetail::laurent_str(f.den.to_laurent());
  if (f.den.to_laurent().c.size() > 1) den = "(" + den + ")";
  return num + "/" + den;
}

namespace fmtdetail {

// Renders coeff * tail as (sign, body) with the sign floated out so sums can
// join terms with " + " / " - ". An empty tail is a bare scalar term; inner
// signs are then harmless because flattened sums reassociate.
inline std::pair<bool, std::string> signed_product(const RatFunc& coeff,
                                                   const std::string& tail) {
  if (tail.empty()) {
    std::string s = format_ratfunc(coeff);
    if (!s.empty() && s[0] == '-') return {true, s.substr(1)};
    return {false, s};
  }
  if (coeff.is_one()) return {false, tail};
  if ((-coeff).is_one()) return {true, tail};
  std::string s = format_ratfunc(coeff);
  bool neg = false;
  if (!s.empty() && s[0] == '-' && !has_toplevel_sign(s.substr(1))) {
    neg = true;
    s = s.substr(1);
  } else if (has_toplevel_sign(s)) {
    s = "(" + s + ")";
  }
  return {neg, s + "*" + tail};
}

inline std::string join_terms(const std::vector<std::pair<bool, std::string>>& ts) {
  if (ts.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (k == 0) {
      out = (ts[k].first ? "-" : "") + ts[k].second;
    } else {
      out += (ts[k].first ? " - " : " + ") + ts[k].second;
    }
  }
  return out;
}

inline void append_power(std::string& s, const char* name, int e) {
  if (e == 0) return;
  if (!s.empty()) s += "*";
  s += name;
  if (e != 1) s += "^" + std::to_string(e);
}

}  // namespace fmtdetail

inline std::string format_element1(const Element1& e) {
  std::vector<std::pair<bool, std::string>> ts;
  for (const auto& [m, c] : e.terms) {
    std::string mono;
    fmtdetail::append_power(mono, "theta", m.m1);
    if (m.n > 0) fmtdetail::append_power(mono, "Y", m.n);
    if (m.n < 0) fmtdetail::append_power(mono, "X", -m.n);
    fmtdetail::append_power(mono, "Z", m.m2);
    ts.push_back(fmtdetail::signed_product(c, mono));
  }
  return fmtdetail::join_terms(ts);
}

inline std::string format_element2(const Element2& e) {
  std::vector<std::pair<bool, std::string>> ts;
  for (const auto& [m, c] : e.terms) {
    std::string mono;
    fmtdetail::append_power(mono, "theta", m.m);
    fmtdetail::append_power(mono, "z", m.n);
    fmtdetail::append_power(mono, "a", m.d);
    fmtdetail::append_power(mono, "b", m.p);
    ts.push_back(fmtdetail::signed_product(c, mono));
  }
  return fmtdetail::join_terms(ts);
}

// Display variable 't'; descending powers like the scalar printer.
inline std::string format_tlaurent(const TLaurent& f) {
  std::vector<std::pair<bool, std::string>> ts;
  for (auto it = f.c.rbegin(); it != f.c.rend(); ++it) {
    std::string mono;
    fmtdetail::append_power(mono, "t", it->first);
    ts.push_back(fmtdetail::signed_product(it->second, mono));
  }
  return fmtdetail::join_terms(ts);
}

}  // namespace qsl2
