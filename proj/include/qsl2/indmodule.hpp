#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsl2/pbw.hpp"
#include "qsl2/tlaurent.hpp"

// Principal-series modules in the compact picture: the module is a space of
// K-type vectors zeta_n (n of fixed parity), theta acts diagonally by [n],
// and X, Y, Z act tridiagonally with coefficients recovered per K-type from
// the three transition operators
//
//   T+ zeta_n = (lam q^{1+n} - lam^{-1} q^{-1-n}) zeta_{n+2}
//   T- zeta_n = (lam q^{1-n} - lam^{-1} q^{-1+n}) zeta_{n-2}
//   T0 zeta_n = (lam + lam^{-1}) zeta_n
//
// via the exact linear system
//
//   T+ = q^n X - q^{-n} Y - [2] Z
//   T- = q^{-n} X - q^n Y + [2] Z
//   T0 = q^{-1} X + q Y + (q^n - q^{-n}) Z.
//
// Everything is generic over the scalar domain of the character: lam can be
// a rational function of q, a Gaussian rational paired with a concrete
// rational q0, or a formal Laurent variable (which proves identities for all
// character values at once).

namespace qsl2 {

// ---------------------------------------------------------------------------
// Scalar contexts
// ---------------------------------------------------------------------------

struct SymbolicCtx {
  using S = RatFunc;
  RatFunc lam;

  S q_pow(int k) const { return RatFunc::q_pow(k); }
  S lam_pow(int k) const { return lam.pow(k); }
  S embed(const RatFunc& r) const { return r; }
  S lam_value() const { return lam; }
};

struct ConcreteCtx {
  using S = GaussRat;
  GaussRat lam;
  Rational q0;

  S q_pow(int k) const { return gpow(GaussRat(q0), k); }
  S lam_pow(int k) const { return gpow(lam, k); }
  // May refuse coefficients with odd powers of s when q0 has no rational
  // square root; integer-power workloads never hit that.
  S embed(const RatFunc& r) const { return r.eval_q(q0); }
  S lam_value() const { return lam; }
};

// lam is a free Laurent variable. Scalars are Laurent polynomials in it with
// rational-function coefficients; no division by lam-dependent quantities
// ever happens in the module action, so this stays a ring, not a field.
struct FormalCtx {
  using S = TLaurent;

  S q_pow(int k) const { return TLaurent::term(0, RatFunc::q_pow(k)); }
  S lam_pow(int k) const { return TLaurent::term(k, RatFunc::one()); }
  S embed(const RatFunc& r) const { return TLaurent::term(0, r); }
  S lam_value() const { return TLaurent::var(); }
};

inline SymbolicCtx make_symbolic(RatFunc lam) {
  if (lam.is_zero()) throw err("InvalidParameter", "lambda must be invertible");
  return {std::move(lam)};
}

inline ConcreteCtx make_concrete(GaussRat lam, Rational q0) {
  if (lam.is_zero()) throw err("InvalidParameter", "lambda must be invertible");
  if (q0 <= 0 || q0 == 1)
    throw err("InvalidParameter", "q must be a positive rational other than 1");
  return {std::move(lam), std::move(q0)};
}

// ---------------------------------------------------------------------------
// Characters and K-type vectors
// ---------------------------------------------------------------------------

// Z^eps: the even integers when eps = +1, the odd ones when eps = -1.
inline bool in_parity_class(int eps, int n) { return (n % 2 == 0) == (eps == 1); }

template <class Ctx>
struct CharacterPM {
  int eps = 1;
  Ctx ctx;
};

template <class Ctx>
CharacterPM<Ctx> character(int eps, Ctx ctx) {
  if (eps != 1 && eps != -1) throw err("InvalidParameter", "eps must be +1 or -1");
  return {eps, std::move(ctx)};
}

// Finitely supported vector in the K-type basis. Invariant: no zero entries.
// Parity of the keys is enforced by the operations, not the container.
template <class S>
struct KVector {
  std::map<int, S> entries;

  static KVector unit(int n, const S& one) {
    KVector v;
    v.entries.emplace(n, one);
    return v;
  }

  bool is_zero() const { return entries.empty(); }

  void add_term(int n, const S& v) {
    if (v.is_zero()) return;
    auto it = entries.find(n);
    if (it == entries.end()) {
      entries.emplace(n, v);
    } else {
      it->second = it->second + v;
      if (it->second.is_zero()) entries.erase(it);
    }
  }

  KVector scaled(const S& k) const {
    KVector r;
    if (k.is_zero()) return r;
    for (const auto& [n, v] : entries) r.add_term(n, v * k);
    return r;
  }

  friend KVector operator+(const KVector& a, const KVector& b) {
    KVector r = a;
    for (const auto& [n, v] : b.entries) r.add_term(n, v);
    return r;
  }
  friend KVector operator-(const KVector& a, const KVector& b) {
    KVector r = a;
    for (const auto& [n, v] : b.entries) r.add_term(n, S{} - v);
    return r;
  }
  friend bool operator==(const KVector& a, const KVector& b) {
    return a.entries == b.entries;
  }
};

template <class Ctx>
void check_parity(const CharacterPM<Ctx>& chi, const KVector<typename Ctx::S>& v) {
  for (const auto& [n, _] : v.entries)
    if (!in_parity_class(chi.eps, n))
      throw err("ParityMismatch", "K-type " + std::to_string(n) +
                                      " does not lie in the parity class of eps");
}

// ---------------------------------------------------------------------------
// Transition coefficients
// ---------------------------------------------------------------------------

enum class Trans { Up, Down, Diag };

template <class Ctx>
typename Ctx::S transition_coeff(const CharacterPM<Ctx>& chi, int n, Trans which) {
  if (!in_parity_class(chi.eps, n))
    throw err("ParityMismatch", "K-type " + std::to_string(n) +
                                    " does not lie in the parity class of eps");
  const Ctx& c = chi.ctx;
  switch (which) {
    case Trans::Up:
      return c.lam_pow(1) * c.q_pow(1 + n) - c.lam_pow(-1) * c.q_pow(-1 - n);
    case Trans::Down:
      return c.lam_pow(1) * c.q_pow(1 - n) - c.lam_pow(-1) * c.q_pow(-1 + n);
    case Trans::Diag:
    default:
      return c.lam_pow(1) + c.lam_pow(-1);
  }
}

// ---------------------------------------------------------------------------
// Generator actions
// ---------------------------------------------------------------------------

// Per-K-type coefficients of X, Y, Z relative to the transition scalars:
// (X zeta_n)_{n+2} = up.x * c+_n, (X zeta_n)_n = diag.x * c0, and so on.
// The ratios live in RatFunc because the 3x3 system depends on q and n only.
struct XyzTriple {
  RatFunc x, y, z;
};
struct XyzRates {
  XyzTriple up, diag, down;
};

inline XyzRates xyz_rates(int n) {
  const RatFunc two = qbrace(1);  // [2]_q as q + q^-1
  RatFunc m[3][3] = {
      {RatFunc::q_pow(n), -RatFunc::q_pow(-n), -two},
      {RatFunc::q_pow(-n), -RatFunc::q_pow(n), two},
      {RatFunc::q_pow(-1), RatFunc::q_pow(1), RatFunc::q_pow(n) - RatFunc::q_pow(-n)},
  };
  auto minor2 = [&](int r0, int r1, int c0, int c1) {
    return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
  };
  RatFunc det = m[0][0] * minor2(1, 2, 1, 2) - m[0][1] * minor2(1, 2, 0, 2) +
                m[0][2] * minor2(1, 2, 0, 1);
  // det = -{n-1}{n}{n+1}, never zero for integer n over Q(q).
  if (det.is_zero()) throw err("SingularSolve", "transition system is singular");
  RatFunc adj[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = j == 0 ? 1 : 0, r1 = j == 2 ? 1 : 2;
      int c0 = i == 0 ? 1 : 0, c1 = i == 2 ? 1 : 2;
      RatFunc cof = minor2(r0, r1, c0, c1);
      adj[i][j] = ((i + j) % 2 == 0) ? cof : -cof;
    }
  XyzRates r;
  r.up = {adj[0][0] / det, adj[1][0] / det, adj[2][0] / det};
  r.down = {adj[0][1] / det, adj[1][1] / det, adj[2][1] / det};
  r.diag = {adj[0][2] / det, adj[1][2] / det, adj[2][2] / det};
  return r;
}

template <class Ctx>
KVector<typename Ctx::S> act_generator(const CharacterPM<Ctx>& chi, Gen g,
                                       const KVector<typename Ctx::S>& v) {
  using S = typename Ctx::S;
  check_parity(chi, v);
  const Ctx& c = chi.ctx;
  switch (g) {
    case Gen::Theta: {
      KVector<S> out;
      for (const auto& [n, vn] : v.entries) out.add_term(n, c.embed(qint(n)) * vn);
      return out;
    }
    case Gen::X:
    case Gen::Y:
    case Gen::Z: {
      KVector<S> out;
      for (const auto& [n, vn] : v.entries) {
        XyzRates r = xyz_rates(n);
        const XyzTriple* up = &r.up;
        const XyzTriple* dg = &r.diag;
        const XyzTriple* dn = &r.down;
        auto pick = [&](const XyzTriple& t) {
          return g == Gen::X ? t.x : (g == Gen::Y ? t.y : t.z);
        };
        S cp = transition_coeff(chi, n, Trans::Up);
        S cm = transition_coeff(chi, n, Trans::Down);
        S c0 = transition_coeff(chi, n, Trans::Diag);
        out.add_term(n + 2, c.embed(pick(*up)) * cp * vn);
        out.add_term(n, c.embed(pick(*dg)) * c0 * vn);
        out.add_term(n - 2, c.embed(pick(*dn)) * cm * vn);
      }
      return out;
    }
    // The affine generators are algebraic combinations of the compact ones;
    // acting through those combinations keeps a single source of truth.
    case Gen::lx:
      return (act_generator(chi, Gen::X, v) - v)
          .scaled(c.embed(RatFunc::one() / rf_q_minus_qinv()));
    case Gen::ly:
      return (act_generator(chi, Gen::Y, v) - v)
          .scaled(c.embed(RatFunc::one() / rf_q_minus_qinv()));
    case Gen::lz:
      return act_generator(chi, Gen::Z, v)
          .scaled(c.embed(RatFunc::one() / rf_q_minus_qinv()));
    case Gen::la:
      return act_generator(chi, Gen::ly, v) - act_generator(chi, Gen::lx, v);
    case Gen::lb:
    default: {
      KVector<S> xy = act_generator(chi, Gen::lx, act_generator(chi, Gen::ly, v));
      KVector<S> zz = act_generator(chi, Gen::lz, act_generator(chi, Gen::lz, v));
      KVector<S> out;
      out = out - xy - zz.scaled(c.embed(RatFunc::q_pow(2)));
      return out;
    }
  }
}

// Spectral projection onto K-type k.
template <class Ctx>
KVector<typename Ctx::S> act_projection(const CharacterPM<Ctx>& chi, int k,
                                        const KVector<typename Ctx::S>& v) {
  check_parity(chi, v);
  KVector<typename Ctx::S> out;
  auto it = v.entries.find(k);
  if (it != v.entries.end()) out.add_term(k, it->second);
  return out;
}

// The grading involution scales K-type n by (-1)^n.
template <class Ctx>
KVector<typename Ctx::S> act_grading(const CharacterPM<Ctx>& chi,
                                     const KVector<typename Ctx::S>& v) {
  check_parity(chi, v);
  KVector<typename Ctx::S> out;
  for (const auto& [n, vn] : v.entries)
    out.add_term(n, n % 2 == 0 ? vn : -vn);
  return out;
}

// The Casimir acts globally by lam + lam^{-1}.
template <class Ctx>
KVector<typename Ctx::S> act_casimir(const CharacterPM<Ctx>& chi,
                                     const KVector<typename Ctx::S>& v) {
  check_parity(chi, v);
  if (v.is_zero()) return v;
  return v.scaled(transition_coeff(chi, v.entries.begin()->first, Trans::Diag));
}

// Action of a normal-form element, composed generatorwise. A monomial
// theta^{m1} W^{(n)} Z^{m2} applies its rightmost factor first.
template <class Ctx>
KVector<typename Ctx::S> act_element(const CharacterPM<Ctx>& chi, const Element1& e,
                                     const KVector<typename Ctx::S>& v) {
  using S = typename Ctx::S;
  check_parity(chi, v);
  KVector<S> acc;
  for (const auto& [m, coeff] : e.terms) {
    KVector<S> w = v;
    for (int k = 0; k < m.m2; ++k) w = act_generator(chi, Gen::Z, w);
    Gen wg = m.n >= 0 ? Gen::Y : Gen::X;
    for (int k = 0; k < (m.n >= 0 ? m.n : -m.n); ++k) w = act_generator(chi, wg, w);
    for (int k = 0; k < m.m1; ++k) w = act_generator(chi, Gen::Theta, w);
    acc = acc + w.scaled(chi.ctx.embed(coeff));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Characters of the commutative part
// ---------------------------------------------------------------------------

// chi(W^{(n)} Z^m) = delta_{m,0} lam^{-n}; theta lies outside the domain.
template <class Ctx>
typename Ctx::S chi_eval(const CharacterPM<Ctx>& chi, const Element1& e) {
  using S = typename Ctx::S;
  S acc{};
  for (const auto& [m, coeff] : e.terms) {
    if (m.m1 != 0)
      throw err("NotInDomain", "theta does not lie in the domain of the character");
    if (m.m2 != 0) continue;  // Z is annihilated
    acc = acc + chi.ctx.embed(coeff) * chi.ctx.lam_pow(-m.n);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Special points lam = sigma q^n, n in Z^{-eps}
// ---------------------------------------------------------------------------

inline std::optional<std::pair<int, int>> special_point(
    const CharacterPM<SymbolicCtx>& chi) {
  const RatFunc& l = chi.ctx.lam;
  if (!l.den_is_one() || l.num.c.size() != 1) return std::nullopt;
  auto [e, v] = *l.num.c.begin();
  if (e % 2 != 0) return std::nullopt;  // a bare half-power of q is never special
  int sigma;
  if (v == GaussRat(1)) sigma = 1;
  else if (v == GaussRat(-1)) sigma = -1;
  else return std::nullopt;
  int n = e / 2;
  if (!in_parity_class(-chi.eps, n)) return std::nullopt;
  return std::make_pair(sigma, n);
}

// Exact bounded power search. A modulus outside the searched range is
// reported, never silently classified as generic.
inline std::optional<std::pair<int, int>> special_point(
    const CharacterPM<ConcreteCtx>& chi, int n_max = 64) {
  const GaussRat& l = chi.ctx.lam;
  if (!l.is_real()) return std::nullopt;
  int sigma = l.re > 0 ? 1 : -1;
  Rational mag = sigma > 0 ? l.re : Rational(-l.re);
  for (int n = -n_max; n <= n_max; ++n) {
    if (gpow(GaussRat(chi.ctx.q0), n).re == mag) {
      if (!in_parity_class(-chi.eps, n)) return std::nullopt;
      return std::make_pair(sigma, n);
    }
  }
  Rational big = chi.ctx.q0 > 1 ? chi.ctx.q0 : Rational(1) / chi.ctx.q0;
  Rational hi = gpow(GaussRat(big), n_max).re;
  if (mag > hi || mag < Rational(1) / hi)
    throw err("SearchBoundExceeded",
              "|lambda| falls outside the searched power range; raise the bound");
  return std::nullopt;
}

inline std::optional<std::pair<int, int>> special_point(const CharacterPM<FormalCtx>&) {
  return std::nullopt;  // a formal character is never a power of q
}

// ---------------------------------------------------------------------------
// Submodule lattice and composition series
// ---------------------------------------------------------------------------

struct SubmoduleDescriptor {
  std::string kind;  // Zero, All, Above, Below, Middle, or a sum of those
  int n = 0;         // cut parameter, always >= 0

  bool contains(int m) const {
    if (kind == "Zero") return false;
    if (kind == "All") return true;
    if (kind == "Above") return m > n;
    if (kind == "Below") return m < -n;
    if (kind == "Middle") return m > -n && m < n;
    if (kind == "AboveBelow") return m > n || m < -n;
    if (kind == "MiddleAbove") return (m > -n && m < n) || m > n;
    if (kind == "MiddleBelow") return (m > -n && m < n) || m < -n;
    throw err("InternalError", "unknown submodule kind " + kind);
  }

  friend bool operator==(const SubmoduleDescriptor& a, const SubmoduleDescriptor& b) {
    return a.kind == b.kind && a.n == b.n;
  }
};

template <class S>
struct SimpleClass {
  std::string variant;  // Principal, DiscretePlus, DiscreteMinus, FiniteDim
  int eps = 0;          // Principal only
  S lambda{};           // Principal only, canonical representative
  int sigma = 0;        // the sigma q^{+-n} families
  int n = 0;
  std::optional<bool> unitarizable;
  std::string unitary_type;  // principal, discrete, limit_of_discrete,
                             // complementary, trivial_like; empty otherwise
};

template <class S>
struct Classification {
  int eps = 1;
  S lambda{};
  std::optional<std::pair<int, int>> special;  // (sigma, signed exponent)
  std::vector<SubmoduleDescriptor> lattice;    // closed under sum/intersection
  std::vector<SimpleClass<S>> series;          // socle first
};

// Independent stability audit: every claimed support must have vanishing
// transition coefficients exactly at its boundary crossings. This re-derives
// stability from the coefficients, not from the case analysis that produced
// the lattice.
template <class Ctx>
void audit_lattice(const CharacterPM<Ctx>& chi,
                   const Classification<typename Ctx::S>& cls) {
  int cut = cls.special ? (cls.special->second >= 0 ? cls.special->second
                                                    : -cls.special->second)
                        : 0;
  int w = 2 * cut + 8;
  int lo = in_parity_class(chi.eps, -w) ? -w : -w + 1;
  for (const auto& d : cls.lattice) {
    for (int m = lo; m <= w; m += 2) {
      if (!d.contains(m)) continue;
      if (!d.contains(m + 2) && !transition_coeff(chi, m, Trans::Up).is_zero())
        throw err("InternalError",
                  "claimed submodule " + d.kind + " is not raising-stable");
      if (!d.contains(m - 2) && !transition_coeff(chi, m, Trans::Down).is_zero())
        throw err("InternalError",
                  "claimed submodule " + d.kind + " is not lowering-stable");
    }
  }
}

namespace detail {

// Unitarizability of the non-principal families needs no scalar reasoning.
template <class S>
bool flag_discrete_or_finite(SimpleClass<S>& sc) {
  if (sc.variant == "DiscretePlus" || sc.variant == "DiscreteMinus") {
    sc.unitarizable = true;
    sc.unitary_type = sc.n == 0 ? "limit_of_discrete" : "discrete";
    return true;
  }
  if (sc.variant == "FiniteDim") {
    if (sc.n == 1) {
      sc.unitarizable = true;
      sc.unitary_type = "trivial_like";
    } else {
      sc.unitarizable = false;
    }
    return true;
  }
  return false;
}

// Principal series over a symbolic character. A monomial +-q^k is decidable
// uniformly in q because both the unitary circle (k = 0) and the strict
// complementary bound min(|lam|,|lam|^{-1}) > min(q,q^{-1}) are invariant
// under lam -> lam^{-1}: for k != 0 the bound fails for every q > 0, q != 1.
inline void flag_principal(SimpleClass<RatFunc>& sc, const CharacterPM<SymbolicCtx>&) {
  const RatFunc& l = sc.lambda;
  if (!l.den_is_one() || l.num.c.size() != 1) return;  // undecided without |.|
  auto [e, v] = *l.num.c.begin();
  if (!(v == GaussRat(1) || v == GaussRat(-1))) return;
  if (e == 0) {
    sc.unitarizable = true;
    sc.unitary_type = "principal";
  } else if ((e == 1 || e == -1) && sc.eps == 1) {
    // lam = +-q^{1/2}: real, and min(|lam|,|lam|^{-1}) = min(q,q^{-1})^{1/2}
    // beats the bound for every q.
    sc.unitarizable = true;
    sc.unitary_type = "complementary";
  } else {
    sc.unitarizable = false;
  }
}

inline void flag_principal(SimpleClass<GaussRat>& sc,
                           const CharacterPM<ConcreteCtx>& chi) {
  GaussRat l = sc.lambda;
  Rational n2 = l.norm2();
  if (n2 > 1) {
    l = GaussRat(1) / l;  // canonical representative has |lambda| <= 1
    n2 = l.norm2();
  }
  if (n2 == 1 && l.im < 0) l = l.conj();  // inverse = conjugate on the circle
  sc.lambda = l;
  if (n2 == 1) {
    sc.unitarizable = true;
    sc.unitary_type = "principal";
    return;
  }
  const Rational& q0 = chi.ctx.q0;
  Rational qmin = q0 < 1 ? q0 : Rational(1) / q0;
  if (sc.eps == 1 && l.is_real() && n2 > qmin * qmin) {
    sc.unitarizable = true;
    sc.unitary_type = "complementary";
  } else {
    sc.unitarizable = false;
  }
}

inline void flag_principal(SimpleClass<TLaurent>&, const CharacterPM<FormalCtx>&) {}

template <class Ctx>
Classification<typename Ctx::S> classify_from(
    const CharacterPM<Ctx>& chi, std::optional<std::pair<int, int>> sp) {
  using S = typename Ctx::S;
  Classification<S> out;
  out.eps = chi.eps;
  out.lambda = chi.ctx.lam_value();
  out.special = sp;
  if (!sp) {
    out.lattice = {{"Zero", 0}, {"All", 0}};
    SimpleClass<S> pr;
    pr.variant = "Principal";
    pr.eps = chi.eps;
    pr.lambda = out.lambda;
    flag_principal(pr, chi);
    out.series.push_back(std::move(pr));
  } else {
    auto [sigma, n] = *sp;
    int k = n >= 0 ? n : -n;
    auto simple = [&](const char* variant) {
      SimpleClass<S> sc;
      sc.variant = variant;
      sc.sigma = sigma;
      sc.n = k;
      flag_discrete_or_finite(sc);
      return sc;
    };
    if (n > 0) {
      out.lattice = {{"Zero", 0}, {"Above", n},      {"Below", n},
                     {"AboveBelow", n}, {"All", 0}};
      out.series = {simple("DiscretePlus"), simple("DiscreteMinus"),
                    simple("FiniteDim")};
    } else if (n == 0) {
      out.lattice = {{"Zero", 0}, {"Above", 0}, {"Below", 0}, {"All", 0}};
      out.series = {simple("DiscretePlus"), simple("DiscreteMinus")};
    } else {
      out.lattice = {{"Zero", 0}, {"Middle", k},      {"MiddleAbove", k},
                     {"MiddleBelow", k}, {"All", 0}};
      out.series = {simple("FiniteDim"), simple("DiscretePlus"),
                    simple("DiscreteMinus")};
    }
  }
  audit_lattice(chi, out);
  return out;
}

}  // namespace detail

inline Classification<RatFunc> classify(const CharacterPM<SymbolicCtx>& chi) {
  return detail::classify_from(chi, special_point(chi));
}

inline Classification<GaussRat> classify(const CharacterPM<ConcreteCtx>& chi,
                                         int n_max = 64) {
  return detail::classify_from(chi, special_point(chi, n_max));
}

inline std::vector<SimpleClass<GaussRat>> simple_classify(int eps, const GaussRat& lam,
                                                          const Rational& q0,
                                                          int n_max = 64) {
  return classify(character(eps, make_concrete(lam, q0)), n_max).series;
}

// ---------------------------------------------------------------------------
// Intertwiners
// ---------------------------------------------------------------------------

template <class S>
struct IntertwinerVec {
  int anchor = 0;  // smallest K-type (by |n|, then n) with a nonzero entry
  std::map<int, S> f;
};

template <class S>
struct IntertwinerSpace {
  int dim = 0;
  std::vector<IntertwinerVec<S>> basis;
};

namespace detail {

// Reduced row echelon form over a field; returns the pivot columns.
// RREF is unique for a given row space, which pins the reported bases down
// to deterministic representatives.
template <class S>
std::vector<int> rref(std::vector<std::vector<S>>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    S inv = m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] = m[r][j] / inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      S f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

// Solves the fully general graded intertwining constraints
//   f_{n+2} c+_n(lam1) = c+_n(lam2) f_n,   f_{n-2} c-_n(lam1) = c-_n(lam2) f_n
// on K-types |n| <= window, with no case analysis: the necessary conditions
// (matching eps and central character) emerge as dimension 0. Requires the
// scalars to form a field.
template <class Ctx>
IntertwinerSpace<typename Ctx::S> intertwiners(const CharacterPM<Ctx>& chi1,
                                               const CharacterPM<Ctx>& chi2,
                                               int window) {
  using S = typename Ctx::S;
  IntertwinerSpace<S> out;
  if (window < 2) throw err("InvalidParameter", "window must be at least 2");
  if (chi1.eps != chi2.eps) return out;  // disjoint K-type supports
  {
    S d0 = chi1.ctx.lam_pow(1) + chi1.ctx.lam_pow(-1) -
           (chi2.ctx.lam_pow(1) + chi2.ctx.lam_pow(-1));
    if (!d0.is_zero()) return out;  // central characters differ
  }
  for (const auto* chi : {&chi1, &chi2}) {
    auto sp = special_point(*chi);
    int need = sp ? 2 * (sp->second >= 0 ? sp->second : -sp->second) + 6 : 0;
    if (window < need)
      throw err("WindowTooSmall",
                "boundary constraints are still active at K-type |n| = " +
                    std::to_string(window));
  }

  int start = ((window % 2 == 0) == (chi1.eps == 1)) ? -window : -window + 1;
  std::vector<int> types;
  for (int n = start; n <= window; n += 2) types.push_back(n);
  int cols = static_cast<int>(types.size());
  auto idx = [&](int n) { return (n - start) / 2; };

  std::vector<std::vector<S>> a;
  for (int n : types) {
    if (n + 2 <= window) {
      std::vector<S> r(cols, S{});
      r[idx(n + 2)] = transition_coeff(chi1, n, Trans::Up);
      r[idx(n)] = S{} - transition_coeff(chi2, n, Trans::Up);
      a.push_back(std::move(r));
    }
    if (n - 2 >= start) {
      std::vector<S> r(cols, S{});
      r[idx(n - 2)] = transition_coeff(chi1, n, Trans::Down);
      r[idx(n)] = S{} - transition_coeff(chi2, n, Trans::Down);
      a.push_back(std::move(r));
    }
  }

  std::vector<int> pivots = detail::rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;

  std::vector<std::vector<S>> null;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<S> v(cols, S{});
    v[c] = chi1.ctx.embed(RatFunc::one());
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = S{} - a[r][c];
    null.push_back(std::move(v));
  }
  out.dim = static_cast<int>(null.size());
  if (null.empty()) return out;

  detail::rref(null);  // canonical echelon basis before anchoring
  for (auto& row : null) {
    IntertwinerVec<S> vec;
    bool first = true;
    for (int j = 0; j < cols; ++j) {
      if (row[j].is_zero()) continue;
      int n = types[j];
      if (first || std::pair(std::abs(n), n) <
                       std::pair(std::abs(vec.anchor), vec.anchor)) {
        vec.anchor = n;
        first = false;
      }
      vec.f.emplace(n, row[j]);
    }
    S scale = vec.f.at(vec.anchor);
    for (auto& [n, fv] : vec.f) fv = fv / scale;
    out.basis.push_back(std::move(vec));
  }
  std::sort(out.basis.begin(), out.basis.end(),
            [](const IntertwinerVec<S>& a_, const IntertwinerVec<S>& b_) {
              return std::pair(std::abs(a_.anchor), a_.anchor) <
                     std::pair(std::abs(b_.anchor), b_.anchor);
            });
  return out;
}

// ---------------------------------------------------------------------------
// Inner product and adjointness
// ---------------------------------------------------------------------------

// (zeta_n | zeta_n) = 2 / {n}_q, positive for q > 0.
inline RatFunc inner_weight(int n) { return RatFunc::from_int(2) / qbrace(n); }

inline GaussRat inner_weight_at(int n, const Rational& q0) {
  return GaussRat(2) / (gpow(GaussRat(q0), n) + gpow(GaussRat(q0), -n));
}

struct AdjointResidual {
  std::string gen;
  int m = 0, n = 0;
  GaussRat value;
};

struct AdjointnessReport {
  bool ok = true;
  std::vector<AdjointResidual> nonzero;
};

// Residuals <g zeta_m | zeta_n> - <zeta_m | g* zeta_n> with the sesquilinear
// form sum_k w_k xi_k conj(eta_k). Exposed ungated so the failure of
// adjointness for a non-unitary character is itself observable.
inline AdjointnessReport adjointness_residuals(int eps, const GaussRat& lam,
                                               const Rational& q0, int window) {
  auto chi = character(eps, make_concrete(lam, q0));
  const std::pair<Gen, Gen> pairs[] = {{Gen::Theta, Gen::Theta},
                                       {Gen::X, Gen::Y},
                                       {Gen::Y, Gen::X},
                                       {Gen::Z, Gen::Z}};
  auto name = [](Gen g) {
    switch (g) {
      case Gen::Theta: return "theta";
      case Gen::X: return "X";
      case Gen::Y: return "Y";
      default: return "Z";
    }
  };
  int lo = in_parity_class(eps, -window) ? -window : -window + 1;
  std::map<int, GaussRat> weight;
  std::map<Gen, std::map<int, KVector<GaussRat>>> image;
  for (int m = lo; m <= window; m += 2) {
    weight[m] = inner_weight_at(m, q0);
    for (Gen g : {Gen::Theta, Gen::X, Gen::Y, Gen::Z})
      image[g][m] = act_generator(chi, g, KVector<GaussRat>::unit(m, GaussRat(1)));
  }
  auto component = [](const KVector<GaussRat>& v, int n) {
    auto it = v.entries.find(n);
    return it == v.entries.end() ? GaussRat(0) : it->second;
  };
  AdjointnessReport rep;
  for (const auto& [g, gstar] : pairs) {
    for (int m = lo; m <= window; m += 2) {
      for (int n = m - 2; n <= m + 2; n += 2) {
        if (n < lo || n > window) continue;
        GaussRat lhs = weight[n] * component(image[g][m], n);
        GaussRat rhs = weight[m] * component(image[gstar][n], m).conj();
        GaussRat r = lhs - rhs;
        if (!r.is_zero()) {
          rep.ok = false;
          rep.nonzero.push_back({name(g), m, n, r});
        }
      }
    }
  }
  return rep;
}

inline AdjointnessReport adjointness_check(int eps, const GaussRat& lam,
                                           const Rational& q0, int window) {
  if (!(lam * lam.conj() == GaussRat(1)))
    throw err("NotUnitaryCharacter", "lambda * conj(lambda) must equal 1 exactly");
  return adjointness_residuals(eps, lam, q0, window);
}

}  // namespace qsl2
