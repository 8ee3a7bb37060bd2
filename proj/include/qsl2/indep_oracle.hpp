#pragma once

#include "qsl2/basis2.hpp"
#include "qsl2/pbw.hpp"

namespace qsl2 {

// Independent certificate for the basis2 straightening engine.
//
// This models the free module V with basis v_{m,n,d,p} and applies the
// one-step recursive generator actions verbatim: theta prepends, z and x and
// y peel exactly one letter per step, and products with the a-block are
// resolved through the (y - x) / (x + y) action pair. No code is shared with
// lmul2; where both must state the same exchange rule past theta (there is
// only one such rule), the equality is itself covered by relation tests.
//
// Coefficient readoff uses (theta^m z^n a^d b^p) v_0 = v_{m,n,d,p}.
namespace lemma {

using State = Pbw2Monomial;  // (m,n,d,p) labels v_{m,n,d,p}
using Vec = Element2;        // finite Q(i)(s)-combination of states

inline Vec act(Gen g, const State& v);

inline Vec act(Gen g, const Vec& w) {
  Vec r;
  for (const auto& [s, c] : w.terms) {
    Vec part = act(g, s);
    for (const auto& [ps, pc] : part.terms) r.add_term(ps, pc * c);
  }
  return r;
}

// (y - x) v_{0,0,1,p} = (q-q^-1)^2 v_{0,0,0,p+2} + 4 v_{0,0,0,p+1}
//                       + 2 {2} v_{0,2,0,p}
inline Vec act_a_on_astate(int p) {
  const RatFunc D = rf_q_minus_qinv();
  Vec r;
  r.add_term({0, 0, 0, p + 2}, D * D);
  r.add_term({0, 0, 0, p + 1}, RatFunc::from_int(4));
  r.add_term({0, 2, 0, p}, RatFunc::from_int(2) * qbrace(2));
  return r;
}

// (x + y) v_{0,0,1,p} = (q-q^-1) v_{0,0,1,p+1} - 2(q^2-q^-2) v_{0,2,0,p}
inline Vec act_sum_on_astate(int p) {
  const RatFunc D = rf_q_minus_qinv();
  Vec r;
  r.add_term({0, 0, 1, p + 1}, D);
  r.add_term({0, 2, 0, p}, RatFunc::from_int(-2) * (RatFunc::q_pow(2) - RatFunc::q_pow(-2)));
  return r;
}

inline Vec act(Gen g, const State& v) {
  const RatFunc D = rf_q_minus_qinv();
  const RatFunc half = RatFunc::from_gauss(GaussRat(Rational(1, 2)));
  switch (g) {
    case Gen::Theta:
      return Vec::monomial({v.m + 1, v.n, v.d, v.p}, RatFunc::one());
    case Gen::lz: {
      if (v.m != 0) {
        State r{v.m - 1, v.n, v.d, v.p};
        return act(Gen::Theta, act(Gen::lz, r)) + act(Gen::lx, State(r)) -
               act(Gen::ly, State(r));
      }
      return Vec::monomial({0, v.n + 1, v.d, v.p}, RatFunc::one());
    }
    case Gen::lx: {
      if (v.m != 0) {
        State r{v.m - 1, v.n, v.d, v.p};
        Vec out = act(Gen::Theta, act(Gen::lx, r)).scaled(RatFunc::q_pow(-2));
        out = out + act(Gen::lz, State(r)).scaled(RatFunc::q_pow(-1) * qbrace(1));
        out.add_term(v, -RatFunc::q_pow(-1));
        return out;
      }
      if (v.n != 0) {
        State r{0, v.n - 1, v.d, v.p};
        Vec xr = act(Gen::lx, r);
        Vec out = act(Gen::lz, xr).scaled(RatFunc::q_pow(2));
        out = out + act(Gen::lz, State(r)).scaled(RatFunc::q_pow(1));
        return out;
      }
      if (v.d == 1) {
        // x = ((x+y) - (y-x)) / 2 on the a-states
        Vec out = act_sum_on_astate(v.p) - act_a_on_astate(v.p);
        return out.scaled(half);
      }
      Vec out;
      out.add_term({0, 0, 0, v.p + 1}, D * half);
      out.add_term({0, 0, 1, v.p}, -half);
      return out;
    }
    case Gen::ly: {
      if (v.m != 0) {
        State r{v.m - 1, v.n, v.d, v.p};
        Vec out = act(Gen::Theta, act(Gen::ly, r)).scaled(RatFunc::q_pow(2));
        out = out - act(Gen::lz, State(r)).scaled(RatFunc::q_pow(1) * qbrace(1));
        out.add_term(v, RatFunc::q_pow(1));
        return out;
      }
      if (v.n != 0) {
        State r{0, v.n - 1, v.d, v.p};
        Vec yr = act(Gen::ly, r);
        Vec out = act(Gen::lz, yr).scaled(RatFunc::q_pow(-2));
        out = out - act(Gen::lz, State(r)).scaled(RatFunc::q_pow(-1));
        return out;
      }
      if (v.d == 1) {
        // y = ((x+y) + (y-x)) / 2 on the a-states
        Vec out = act_sum_on_astate(v.p) + act_a_on_astate(v.p);
        return out.scaled(half);
      }
      Vec out;
      out.add_term({0, 0, 0, v.p + 1}, D * half);
      out.add_term({0, 0, 1, v.p}, half);
      return out;
    }
    case Gen::la: {
      Vec e = Vec::monomial(v, RatFunc::one());
      return act(Gen::ly, e) - act(Gen::lx, e);
    }
    case Gen::lb: {
      Vec e = Vec::monomial(v, RatFunc::one());
      Vec out = Vec::zero() - act(Gen::lx, act(Gen::ly, e));
      return out - act(Gen::lz, act(Gen::lz, e)).scaled(RatFunc::q_pow(2));
    }
    case Gen::X: {
      Vec e = Vec::monomial(v, RatFunc::one());
      return e + act(Gen::lx, e).scaled(D);
    }
    case Gen::Y: {
      Vec e = Vec::monomial(v, RatFunc::one());
      return e + act(Gen::ly, e).scaled(D);
    }
    case Gen::Z:
      return act(Gen::lz, Vec::monomial(v, RatFunc::one())).scaled(D);
  }
  throw err("InternalError", "unknown generator");
}

}  // namespace lemma

inline Element2 independence_oracle(const GenWord& w) {
  lemma::Vec acc = lemma::Vec::unit();  // v_{0,0,0,0}
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    acc = lemma::act(*it, acc);
  return acc.scaled(w.scalar);
}

}  // namespace qsl2
