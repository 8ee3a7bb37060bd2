#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsl2/errors.hpp"
#include "qsl2/gauss.hpp"
#include "qsl2/indmodule.hpp"
#include "qsl2/jet.hpp"
#include "qsl2/scalars.hpp"
#include "qsl2/tlaurent.hpp"

namespace qsl2 {

// ---------------------------------------------------------------------------
// The analytic family of induced modules and its q -> 1 limit.
//
// The character value runs through mu = q^lam. It enters computations in two
// exact disguises: at a fixed rational q0 the caller supplies mu itself
// (rational for integer lam), and at q = 1 everything becomes a jet along
// q = e^h, mu = e^{lam h}. Floating point never appears.
// ---------------------------------------------------------------------------

struct ExponentLambda {
  GaussRat lam;
};

// Renormalized transition coefficients: the raw up/down/diagonal transition
// scalars divided by (q - q^{-1}), which is exactly the normalization under
// which the action stays finite at q = 1.
enum class TKind { TPlus, TMinus, TZero, Theta };

namespace detail {

// Closed form of a renormalized coefficient: a Laurent polynomial in the
// character value whose coefficients are rational functions of q.
inline TLaurent t_closed_form(TKind kind, int n) {
  const RatFunc d = rf_q_minus_qinv();
  TLaurent f;
  switch (kind) {
    case TKind::TPlus:
      f.add_term(1, RatFunc::q_pow(1 + n) / d);
      f.add_term(-1, -(RatFunc::q_pow(-1 - n) / d));
      break;
    case TKind::TMinus:
      f.add_term(1, RatFunc::q_pow(1 - n) / d);
      f.add_term(-1, -(RatFunc::q_pow(-1 + n) / d));
      break;
    case TKind::TZero:
      f.add_term(1, RatFunc::one() / d);
      f.add_term(-1, RatFunc::one() / d);
      f.add_term(0, -(qbrace(1) / d));
      break;
    case TKind::Theta:
      f.add_term(0, qint(n));
      break;
  }
  return f;
}

// Expansion along q = e^h with character value e^{lam h}. The guard band
// keeps the requested window exact through the cancellation at h = 0: each
// summand is computed well past `order` before anything can collapse.
inline Jet jet_along(const TLaurent& f, const GaussRat& lam, int order) {
  int work = 2 * order + 8;
  Jet acc = jet_zero();
  for (const auto& [e, coef] : f.c)
    acc = jet_add(acc, jet_mul(jet_exp(lam * GaussRat(e), work), jet_of(coef, work)));
  return jet_truncate(acc, order);
}

}  // namespace detail

// A coefficient of the analytic family: closed form over (q, character
// value) plus its expansion at q = 1. A valuation >= 0 of that expansion is
// the integrality statement that makes the q -> 1 specialization of the
// module well defined; it is checked at construction.
struct AFormCoeff {
  TLaurent closed_form;
  GaussRat lam;  // exponent: the jet expands along e^{lam h}
  Jet jet;       // exact window at q = 1, valuation >= 0

  // Value at q = q0 with the character value mu supplied exactly.
  GaussRat eval_at(const Rational& q0, const GaussRat& mu) const {
    GaussRat acc;
    for (const auto& [e, coef] : closed_form.c)
      acc += gpow(mu, e) * coef.eval_q(q0);
    return acc;
  }

  // Recompute the expansion on a different window length.
  Jet jet_at(int order) const { return detail::jet_along(closed_form, lam, order); }

  // Value at q = 1: the constant term of the jet.
  GaussRat ev1() const { return jet_const_term(jet); }
};

inline AFormCoeff aform_from_closed(TLaurent closed, GaussRat lam, int order = 8) {
  if (order < 2) throw err("InvalidParameter", "jet order must be at least 2");
  AFormCoeff c;
  c.closed_form = std::move(closed);
  c.lam = std::move(lam);
  c.jet = detail::jet_along(c.closed_form, c.lam, order);
  if (!c.jet.is_zero() && c.jet.val < 0)
    throw err("PoleAtOne",
              "coefficient has a pole at q = 1; its numerator must vanish there");
  return c;
}

inline AFormCoeff aform_coeff(TKind kind, int n, const ExponentLambda& lam,
                              int order = 8) {
  return aform_from_closed(detail::t_closed_form(kind, n), lam.lam, order);
}

// ---------------------------------------------------------------------------
// Per-K-type x, y, z coefficients of the family, as full AFormCoeffs.
// ---------------------------------------------------------------------------

struct AFormTriple {
  AFormCoeff up, diag, down;
};
struct XyzAForm {
  AFormTriple x, y, z;
};

namespace detail {

// closed[g][c]: generator g in (x, y, z), component c in (up, diag, down).
using XyzClosedForms = std::array<std::array<TLaurent, 3>, 3>;

inline const RatFunc& xyz_col(const XyzTriple& t, int g) {
  return g == 0 ? t.x : (g == 1 ? t.y : t.z);
}

// Adjugate route: reuse the inverse columns of the 3x3 transition system
// (they depend on q and n only). The right-hand sides differ from the
// unnormalized module by the constant parts absorbed into x, y:
//   up   = (t+, 0, 0),  down = (0, t-, 0),  diag = (-[n], [n], t0).
inline XyzClosedForms xyz_closed_solved(int n) {
  XyzRates r = xyz_rates(n);
  const TLaurent tp = t_closed_form(TKind::TPlus, n);
  const TLaurent tm = t_closed_form(TKind::TMinus, n);
  const TLaurent t0 = t_closed_form(TKind::TZero, n);
  const RatFunc th = qint(n);
  XyzClosedForms out;
  for (int g = 0; g < 3; ++g) {
    out[g][0] = tp.scaled(xyz_col(r.up, g));
    out[g][1] = t0.scaled(xyz_col(r.diag, g));
    out[g][1].add_term(0, th * (xyz_col(r.down, g) - xyz_col(r.up, g)));
    out[g][2] = tm.scaled(xyz_col(r.down, g));
  }
  return out;
}

// Factored route: the same coefficients through the factored closed form of
// the inverse matrix,
//   alpha_n = {n-1}{n}{n+1},   beta_n = ([2]^2 {n} - alpha_n)/(q - q^{-1}),
//   gamma_n = [2][n]{n},
// with row factors A below. Kept deliberately independent of the adjugate
// solve; the two are compared in tests.
inline XyzClosedForms xyz_closed_factored(int n) {
  const RatFunc two = qbrace(1);
  const RatFunc alpha = qbrace(n - 1) * qbrace(n) * qbrace(n + 1);
  const RatFunc beta = (two * two * qbrace(n) - alpha) / rf_q_minus_qinv();
  const RatFunc gamma = two * qint(n) * qbrace(n);
  const RatFunc A[3][3] = {
      {RatFunc::q_pow(n + 1), RatFunc::q_pow(1 - n), two},
      {-RatFunc::q_pow(-n - 1), -RatFunc::q_pow(n - 1), two},
      {-RatFunc::one(), RatFunc::one(), RatFunc::q_pow(n) - RatFunc::q_pow(-n)},
  };
  const TLaurent tp = t_closed_form(TKind::TPlus, n);
  const TLaurent tm = t_closed_form(TKind::TMinus, n);
  const TLaurent t0 = t_closed_form(TKind::TZero, n);
  XyzClosedForms out;
  for (int i = 0; i < 3; ++i) {
    out[i][0] = tp.scaled(A[i][0] * qbrace(n - 1) / alpha);
    out[i][1] = t0.scaled(A[i][2] * qbrace(n) / alpha);
    out[i][1].add_term(0, (i < 2 ? beta : gamma) / alpha);
    out[i][2] = tm.scaled(A[i][1] * qbrace(n + 1) / alpha);
  }
  return out;
}

inline XyzAForm xyz_from_closed(const XyzClosedForms& cf, const GaussRat& lam,
                                int order) {
  auto triple = [&](const std::array<TLaurent, 3>& row) {
    return AFormTriple{aform_from_closed(row[0], lam, order),
                       aform_from_closed(row[1], lam, order),
                       aform_from_closed(row[2], lam, order)};
  };
  return {triple(cf[0]), triple(cf[1]), triple(cf[2])};
}

}  // namespace detail

inline XyzAForm xyz_aform_action(int n, const ExponentLambda& lam, int order = 8) {
  return detail::xyz_from_closed(detail::xyz_closed_solved(n), lam.lam, order);
}

inline XyzAForm xyz_aform_factored(int n, const ExponentLambda& lam, int order = 8) {
  return detail::xyz_from_closed(detail::xyz_closed_factored(n), lam.lam, order);
}

// ---------------------------------------------------------------------------
// The q = 1 module:
//   theta zeta_n = n zeta_n,   kappa_+- zeta_n = (lam + 1 +- n) zeta_{n +- 2}.
// ---------------------------------------------------------------------------

struct ClassicalModule {
  int eps = 1;
  GaussRat lam;
};

inline ClassicalModule make_classical(int eps, GaussRat lam) {
  if (eps != 1 && eps != -1) throw err("InvalidParameter", "eps must be +1 or -1");
  return {eps, std::move(lam)};
}

enum class ClGen { Theta, KappaPlus, KappaMinus };

inline KVector<GaussRat> classical_act(const ClassicalModule& m, ClGen g,
                                       const KVector<GaussRat>& v) {
  KVector<GaussRat> out;
  for (const auto& [n, vn] : v.entries) {
    if (!in_parity_class(m.eps, n))
      throw err("ParityMismatch", "K-type " + std::to_string(n) +
                                      " does not lie in the parity class of eps");
    switch (g) {
      case ClGen::Theta:
        out.add_term(n, GaussRat(n) * vn);
        break;
      case ClGen::KappaPlus:
        out.add_term(n + 2, (m.lam + GaussRat(1 + n)) * vn);
        break;
      case ClGen::KappaMinus:
      default:
        out.add_term(n - 2, (m.lam + GaussRat(1 - n)) * vn);
        break;
    }
  }
  return out;
}

namespace detail {

// lam as a plain int when it is a (real) integer. The bound guards the
// classification windows, which are linear in the exponent.
inline std::optional<int> small_integer(const GaussRat& g) {
  if (!g.is_real()) return std::nullopt;
  if (boost::multiprecision::denominator(g.re) != 1) return std::nullopt;
  Int n = boost::multiprecision::numerator(g.re);
  if (n > 1000000 || n < -1000000)
    throw err("SearchBoundExceeded", "integer exponent too large to classify");
  return n.convert_to<int>();
}

// 2 lam as an int when lam is real with denominator exactly two (callers
// try small_integer first, so an integer result here is odd).
inline std::optional<int> twice_half_integer(const GaussRat& g) {
  if (!g.is_real()) return std::nullopt;
  Rational t = g.re * 2;
  if (boost::multiprecision::denominator(t) != 1) return std::nullopt;
  Int n = boost::multiprecision::numerator(t);
  if (n > 1000000 || n < -1000000)
    throw err("SearchBoundExceeded", "integer exponent too large to classify");
  return n.convert_to<int>();
}

// Stability audit on the q = 1 side, from the coefficients lam + 1 +- n
// alone. Independent of the case analysis that emits the lattice.
inline void classical_audit(const ClassicalModule& m,
                            const std::vector<SubmoduleDescriptor>& lattice,
                            int cut) {
  int w = 2 * cut + 8;
  int lo = in_parity_class(m.eps, -w) ? -w : -w + 1;
  for (const auto& d : lattice) {
    for (int n = lo; n <= w; n += 2) {
      if (!d.contains(n)) continue;
      if (!d.contains(n + 2) && !(m.lam + GaussRat(1 + n)).is_zero())
        throw err("InternalError",
                  "claimed submodule " + d.kind + " is not raising-stable");
      if (!d.contains(n - 2) && !(m.lam + GaussRat(1 - n)).is_zero())
        throw err("InternalError",
                  "claimed submodule " + d.kind + " is not lowering-stable");
    }
  }
}

}  // namespace detail

// Submodule lattice and composition series of the q = 1 module. Reducible
// exactly when lam is an integer of the parity class opposite to eps; the
// supports then coincide with the q-side lattice at exponent lam. The series
// entries carry no unitarizability verdicts: that machinery lives on the
// q side of the correspondence.
inline Classification<GaussRat> classical_classify(int eps, const GaussRat& lam) {
  if (eps != 1 && eps != -1) throw err("InvalidParameter", "eps must be +1 or -1");
  ClassicalModule m{eps, lam};
  Classification<GaussRat> out;
  out.eps = eps;
  out.lambda = lam;
  std::optional<int> k = detail::small_integer(lam);
  if (!k || !in_parity_class(-eps, *k)) {
    out.lattice = {{"Zero", 0}, {"All", 0}};
    SimpleClass<GaussRat> pr;
    pr.variant = "Principal";
    pr.eps = eps;
    // I(eps, lam) and I(eps, -lam) are isomorphic when simple; the canonical
    // representative has Re lam >= 0, breaking ties toward Im lam >= 0.
    pr.lambda = (lam.re < 0 || (lam.re == 0 && lam.im < 0)) ? -lam : lam;
    out.series.push_back(std::move(pr));
    detail::classical_audit(m, out.lattice, 0);
    return out;
  }
  int n = *k, cut = n >= 0 ? n : -n;
  out.special = std::pair(1, n);
  auto simple = [&](const char* variant) {
    SimpleClass<GaussRat> sc;
    sc.variant = variant;
    sc.sigma = 1;
    sc.n = cut;
    return sc;
  };
  if (n > 0) {
    out.lattice = {{"Zero", 0},
                   {"Above", n},
                   {"Below", n},
                   {"AboveBelow", n},
                   {"All", 0}};
    out.series = {simple("DiscretePlus"), simple("DiscreteMinus"),
                  simple("FiniteDim")};
  } else if (n == 0) {
    out.lattice = {{"Zero", 0}, {"Above", 0}, {"Below", 0}, {"All", 0}};
    out.series = {simple("DiscretePlus"), simple("DiscreteMinus")};
  } else {
    out.lattice = {{"Zero", 0},
                   {"Middle", cut},
                   {"MiddleAbove", cut},
                   {"MiddleBelow", cut},
                   {"All", 0}};
    out.series = {simple("FiniteDim"), simple("DiscretePlus"),
                  simple("DiscreteMinus")};
  }
  detail::classical_audit(m, out.lattice, cut);
  return out;
}

// ---------------------------------------------------------------------------
// Submodule correspondence between q = q0 and q = 1.
// ---------------------------------------------------------------------------

namespace detail {

// Rational bracket of pi, 17 decimal digits wide.
inline std::pair<Rational, Rational> pi_bracket() {
  Rational den(Int("100000000000000000"));
  return {Rational(Int("314159265358979323")) / den,
          Rational(Int("314159265358979324")) / den};
}

// Enclosure of log w for rational w >= 1 via the atanh series
//   log w = 2 sum_{k>=0} u^{2k+1}/(2k+1),  u = (w-1)/(w+1) in [0, 1),
// whose tail after m terms is at most 2 u^{2m+1}/((2m+1)(1 - u^2)).
inline std::pair<Rational, Rational> log_enclosure_small(const Rational& w,
                                                         int terms) {
  Rational u = (w - 1) / (w + 1);
  if (u == 0) return {Rational(0), Rational(0)};
  Rational u2 = u * u;
  Rational lo(0), pw = u;
  for (int k = 0; k < terms; ++k) {
    lo += 2 * pw / (2 * k + 1);
    pw *= u2;
  }
  Rational tail = 2 * pw / ((2 * terms + 1) * (1 - u2));
  return {lo, lo + tail};
}

// Enclosure of |log w| for rational w > 0. Reduction by powers of two keeps
// u <= 1/3 in every series call, so 40 terms are far more precision than the
// pi bracket can use.
inline std::pair<Rational, Rational> log_enclosure(Rational w, int terms = 40) {
  if (w <= 0) throw err("InvalidParameter", "log argument must be positive");
  if (w < 1) w = 1 / w;
  int halvings = 0;
  while (w >= 2) {
    w /= 2;
    ++halvings;
  }
  auto [l2lo, l2hi] = log_enclosure_small(Rational(2), terms);
  auto [rlo, rhi] = log_enclosure_small(w, terms);
  return {halvings * l2lo + rlo, halvings * l2hi + rhi};
}

// Certify |log q0| * b < pi for exact b >= 0. Both a certified failure and a
// product too close to pi to separate are rejected: the comparison is never
// guessed.
inline void certify_hypothesis(const Rational& q0, const Rational& b) {
  if (b == 0) return;
  auto [lo, hi] = log_enclosure(q0);
  auto [pl, ph] = pi_bracket();
  if (hi * b < pl) return;
  if (lo * b > ph)
    throw err("HypothesisViolated",
              "the inequality |log q| |Im lambda| < pi fails");
  throw err("HypothesisViolated",
            "|log q| |Im lambda| is too close to pi to certify");
}

}  // namespace detail

struct CorrespondenceResult {
  bool match = false;
  std::vector<SubmoduleDescriptor> q_lattice;
  std::vector<SubmoduleDescriptor> classical_lattice;
};

// Compare the submodule lattices of the module at q = q0 (character value
// q0^lam) and at q = 1, under the identity map on K-type supports. Exponents
// are handled exactly: integers specialize to a rational character value,
// half-integers stay symbolic as odd powers of q^{1/2}, and non-real lam is
// handled structurally: once |log q0| |Im lam| < pi is certified, q0^lam is
// provably non-real, so the q side cannot be a special point. Real exponents
// with denominator three or more leave the scalar field and are refused.
inline CorrespondenceResult correspondence_check(int eps, const GaussRat& lam,
                                                 const Rational& q0) {
  if (eps != 1 && eps != -1) throw err("InvalidParameter", "eps must be +1 or -1");
  if (q0 <= 0 || q0 == 1)
    throw err("InvalidParameter", "q0 must be positive and distinct from 1");
  detail::certify_hypothesis(q0, lam.im < 0 ? -lam.im : lam.im);

  CorrespondenceResult out;
  out.classical_lattice = classical_classify(eps, lam).lattice;
  if (auto k = detail::small_integer(lam)) {
    auto chi = character(eps, make_concrete(gpow(GaussRat(q0), *k), q0));
    out.q_lattice = classify(chi, (*k >= 0 ? *k : -*k) + 8).lattice;
  } else if (auto t = detail::twice_half_integer(lam)) {
    auto chi = character(eps, make_symbolic(RatFunc::s_pow(*t)));
    out.q_lattice = classify(chi).lattice;
  } else if (!lam.is_real()) {
    out.q_lattice = {{"Zero", 0}, {"All", 0}};
  } else {
    throw err("IrrationalParameter",
              "q0^lam is not exact for a real exponent with denominator > 2");
  }
  out.match = out.q_lattice == out.classical_lattice;
  return out;
}

}  // namespace qsl2
