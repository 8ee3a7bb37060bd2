#pragma once

#include <vector>

#include "qsl2/errors.hpp"
#include "qsl2/tlaurent.hpp"

namespace qsl2 {

// ---------------------------------------------------------------------------
// Finite-dimensional type-1 irreducibles of the quantized su(2) on basis
// v_0..v_n (dim = n+1):
//   E v_j = [j+1] v_{j+1},  F v_j = [n-j+1] v_{j-1},  K v_j = q^{2j-n} v_j.
// ---------------------------------------------------------------------------

using Mat = std::vector<std::vector<RatFunc>>;

inline Mat mat_zero(int dim) {
  return Mat(dim, std::vector<RatFunc>(dim, RatFunc::zero()));
}

inline Mat mat_identity(int dim) {
  Mat m = mat_zero(dim);
  for (int j = 0; j < dim; ++j) m[j][j] = RatFunc::one();
  return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  int dim = static_cast<int>(a.size());
  Mat r = mat_zero(dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < dim; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

inline Mat mat_sub(const Mat& a, const Mat& b) {
  int dim = static_cast<int>(a.size());
  Mat r = mat_zero(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

inline Mat mat_scaled(const Mat& a, const RatFunc& v) {
  Mat r = a;
  for (auto& row : r)
    for (auto& x : row) x *= v;
  return r;
}

inline bool mat_is_zero(const Mat& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

struct Irrep {
  int dim;
  Mat E, F, K;
};

inline Irrep irrep(int dim) {
  const int n = dim - 1;
  Irrep r{dim, mat_zero(dim), mat_zero(dim), mat_zero(dim)};
  for (int j = 0; j < dim; ++j) {
    if (j + 1 < dim) r.E[j + 1][j] = qint(j + 1);
    if (j - 1 >= 0) r.F[j - 1][j] = qint(n - j + 1);
    r.K[j][j] = RatFunc::q_pow(2 * j - n);
  }
  return r;
}

// The three defining relations as exact matrix identities.
inline bool irrep_invariants_ok(const Irrep& r) {
  Mat kinv = mat_zero(r.dim);
  for (int j = 0; j < r.dim; ++j) kinv[j][j] = RatFunc::one() / r.K[j][j];
  bool kek = mat_is_zero(mat_sub(mat_mul(mat_mul(r.K, r.E), kinv), mat_scaled(r.E, RatFunc::q_pow(2))));
  bool kfk = mat_is_zero(mat_sub(mat_mul(mat_mul(r.K, r.F), kinv), mat_scaled(r.F, RatFunc::q_pow(-2))));
  Mat comm = mat_sub(mat_mul(r.E, r.F), mat_mul(r.F, r.E));
  Mat target = mat_scaled(mat_sub(r.K, kinv), RatFunc::one() / rf_q_minus_qinv());
  return kek && kfk && mat_is_zero(mat_sub(comm, target));
}

// theta = i q^{-1/2} (E - F K): tridiagonal with zero diagonal.
inline Mat theta_matrix(int dim) {
  Irrep r = irrep(dim);
  Mat m = mat_sub(r.E, mat_mul(r.F, r.K));
  return mat_scaled(m, RatFunc::from_gauss(GaussRat::i()) * RatFunc::s_pow(-1));
}

// det(X I - M) for a tridiagonal matrix with zero diagonal, by the classic
// three-term minor recurrence. The shape is validated, not assumed.
inline TLaurent charpoly_tridiag(const Mat& m) {
  const int dim = static_cast<int>(m.size());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (i - j != 1 && j - i != 1 && !m[i][j].is_zero())
        throw err("InternalError", "matrix is not tridiagonal with zero diagonal");
  const TLaurent X = TLaurent::var();
  TLaurent prev = TLaurent::one();  // size-0 minor
  TLaurent cur = X;                 // size-1 minor
  if (dim == 0) return prev;
  for (int k = 2; k <= dim; ++k) {
    TLaurent next = X * cur - prev.scaled(m[k - 1][k - 2] * m[k - 2][k - 1]);
    prev = cur;
    cur = next;
  }
  return cur;
}

// Predicted spectrum: {[m] : m = -n, -n+2, ..., n}.
inline std::vector<RatFunc> theta_eigenvalues(int dim) {
  const int n = dim - 1;
  std::vector<RatFunc> ev;
  for (int m = -n; m <= n; m += 2) ev.push_back(qint(m));
  return ev;
}

// Characteristic polynomial of theta equals prod_m (X - [m]) with distinct
// roots, certifying diagonalizability and the q-integer convention at once.
inline bool spectrum_check(int dim) {
  TLaurent lhs = charpoly_tridiag(theta_matrix(dim));
  std::vector<RatFunc> ev = theta_eigenvalues(dim);
  TLaurent rhs = TLaurent::one();
  for (const RatFunc& e : ev) rhs = rhs * (TLaurent::var() - TLaurent::term(0, e));
  if (!(lhs == rhs)) return false;
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j)
      if (ev[i] == ev[j]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Dual q-Krawtchouk property suite, in the base s. Three-term recursion
//   t P_j = (1 - s^{j-n}) P_{j+1} - (1 - s^j) s^{-n} P_{j-1},  P_0 = 1,
// nodes t_j = s^{-j} - s^{j-n}, and an exact discrete orthogonality.
// ---------------------------------------------------------------------------

// The source formulas write (a;b)_r with an ambiguous factor count. Both
// readings are implemented; the orthogonality oracle picks the survivor.
enum class PochReading { Std, Ext };

inline RatFunc pochhammer(const RatFunc& a, const RatFunc& b, int r, PochReading reading) {
  int factors = (reading == PochReading::Std) ? r : r + 1;
  RatFunc prod = RatFunc::one();
  RatFunc bk = RatFunc::one();
  for (int k = 0; k < factors; ++k) {
    prod *= RatFunc::one() - a * bk;
    bk *= b;
  }
  return prod;
}

struct KrawtchoukFamily {
  int n;
  std::vector<TLaurent> P;  // P_0..P_n, polynomials in t
  std::vector<RatFunc> t;   // nodes t_0..t_n
  std::vector<RatFunc> w;   // weights w_0..w_n
};

namespace detailk {

inline KrawtchoukFamily krawtchouk_with(int n, PochReading reading) {
  if (n < 1) throw err("InternalError", "family needs n >= 1");
  KrawtchoukFamily fam;
  fam.n = n;
  fam.P.resize(n + 1);
  fam.P[0] = TLaurent::one();
  TLaurent prev = TLaurent::zero();
  for (int j = 0; j + 1 <= n; ++j) {
    RatFunc lead = RatFunc::one() - RatFunc::s_pow(j - n);
    TLaurent num = TLaurent::var() * fam.P[j] +
                   prev.scaled((RatFunc::one() - RatFunc::s_pow(j)) * RatFunc::s_pow(-n));
    fam.P[j + 1] = num.scaled(RatFunc::one() / lead);
    prev = fam.P[j];
  }
  const RatFunc s2 = RatFunc::s_pow(2);
  const RatFunc full = pochhammer(s2, s2, n, reading);
  for (int j = 0; j <= n; ++j) {
    fam.t.push_back(RatFunc::s_pow(-j) - RatFunc::s_pow(j - n));
    RatFunc wj = (RatFunc::s_pow(j) + RatFunc::s_pow(n - j)) * full /
                 (pochhammer(s2, s2, j, reading) * pochhammer(s2, s2, n - j, reading));
    fam.w.push_back(wj);
  }
  return fam;
}

// Stated diagonal value of (P_j, P_j).
inline RatFunc diagonal_target(int n, int j, PochReading reading) {
  const RatFunc s = RatFunc::s_pow(1);
  RatFunc sign = (RatFunc::from_int(-1) * RatFunc::s_pow(-n)).pow(j);
  return sign * pochhammer(s, s, j, reading) / pochhammer(RatFunc::s_pow(-n), s, j, reading);
}

// Exact Gram matrix test at a rational point 0 < s0 < 1.
inline bool orthogonality_with(int n, const Rational& s0, PochReading reading) {
  KrawtchoukFamily fam = krawtchouk_with(n, reading);
  const GaussRat s0g{s0};
  auto poly_at = [&](const TLaurent& p, const GaussRat& tval) {
    GaussRat acc;
    for (const auto& [k, v] : p.c) acc += v.eval_s(s0g) * gpow(tval, k);
    return acc;
  };
  std::vector<GaussRat> nodes, weights;
  for (int j = 0; j <= n; ++j) {
    nodes.push_back(fam.t[j].eval_s(s0g));
    weights.push_back(fam.w[j].eval_s(s0g));
  }
  GaussRat norm =
      pochhammer(RatFunc::from_int(-1), RatFunc::s_pow(1), n + 1, reading).eval_s(s0g);
  for (int a = 0; a <= n; ++a)
    for (int b = a; b <= n; ++b) {
      GaussRat g;
      for (int j = 0; j <= n; ++j)
        g += poly_at(fam.P[a], nodes[j]) * poly_at(fam.P[b], nodes[j]) * weights[j];
      g = g / norm;
      GaussRat want = (a == b) ? diagonal_target(n, a, reading).eval_s(s0g) : GaussRat(0);
      if (!(g == want)) return false;
    }
  return true;
}

}  // namespace detailk

// Resolve the factor-count ambiguity against the exact orthogonality oracle
// at n = 2 and n = 3. Exactly one reading survives.
inline PochReading resolve_pochhammer_reading() {
  for (PochReading reading : {PochReading::Std, PochReading::Ext}) {
    if (detailk::orthogonality_with(2, Rational(1, 3), reading) &&
        detailk::orthogonality_with(3, Rational(1, 4), reading))
      return reading;
  }
  throw err("PochhammerConventionUnresolved",
            "neither factor-count reading satisfies the stated orthogonality");
}

inline KrawtchoukFamily krawtchouk(int n) {
  return detailk::krawtchouk_with(n, PochReading::Std);
}

inline bool orthogonality_check(int n, const Rational& s0) {
  return detailk::orthogonality_with(n, s0, PochReading::Std);
}

// t P_n = lead(P_n) prod_j (t - t_j) + (1 - s^{-n}) P_{n-1}, exactly: the
// top of the recursion, with the node polynomial closing the band.
inline bool krawtchouk_top_identity(int n) {
  KrawtchoukFamily fam = krawtchouk(n);
  RatFunc lead = fam.P[n].c.rbegin()->second;
  TLaurent nodepoly = TLaurent::one();
  for (const RatFunc& tj : fam.t)
    nodepoly = nodepoly * (TLaurent::var() - TLaurent::term(0, tj));
  TLaurent lhs = TLaurent::var() * fam.P[n];
  TLaurent rhs = nodepoly.scaled(lead) +
                 fam.P[n - 1].scaled(RatFunc::one() - RatFunc::s_pow(-n));
  return lhs == rhs;
}

}  // namespace qsl2
