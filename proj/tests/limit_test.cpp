#include "doctest.h"

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qsl2/limit.hpp"
#include "test_util.hpp"

using namespace qsl2;
using namespace testutil;

namespace {

TKind kind_of(const std::string& s) {
  if (s == "t+") return TKind::TPlus;
  if (s == "t-") return TKind::TMinus;
  if (s == "t0") return TKind::TZero;
  REQUIRE(s == "theta");
  return TKind::Theta;
}

// Frozen jets list eight coefficients starting at the valuation; an
// identically zero coefficient is frozen as eight zeros at valuation 0.
void check_jet(const Jet& j, int val, const json& coeffs) {
  bool all_zero = true;
  for (const auto& c : coeffs)
    if (!gauss_pair(c).is_zero()) all_zero = false;
  if (all_zero) {
    CHECK(j.is_zero());
    return;
  }
  REQUIRE(j.val == val);
  REQUIRE(j.len() == static_cast<int>(coeffs.size()));
  for (int i = 0; i < j.len(); ++i)
    CHECK(j.c[static_cast<std::size_t>(i)] == gauss_pair(coeffs[static_cast<std::size_t>(i)]));
}

const AFormCoeff& component(const XyzAForm& a, std::string_view gen,
                            std::string_view comp) {
  const AFormTriple& t = gen == "x" ? a.x : (gen == "y" ? a.y : a.z);
  return comp == "up" ? t.up : (comp == "diag" ? t.diag : t.down);
}

CharacterPM<ConcreteCtx> conc(int eps, GaussRat mu, Rational q0) {
  return character(eps, make_concrete(std::move(mu), std::move(q0)));
}

GaussRat comp_at(const KVector<GaussRat>& v, int n) {
  auto it = v.entries.find(n);
  return it == v.entries.end() ? GaussRat(0) : it->second;
}

std::vector<std::string> lat_kinds(const std::vector<SubmoduleDescriptor>& lat) {
  std::vector<std::string> out;
  for (const auto& d : lat) out.push_back(d.kind + ":" + std::to_string(d.n));
  return out;
}

}  // namespace

TEST_CASE("transition coefficient jets match the frozen expansions") {
  json data = load_vectors("limit_vectors.json");
  int jet_len = data.at("jet_len").get<int>();
  REQUIRE(jet_len == 8);
  for (const auto& e : data.at("tcoeff_jets")) {
    ExponentLambda lam{gauss_pair(e.at("lam"))};
    AFormCoeff c = aform_coeff(kind_of(e.at("kind").get<std::string>()),
                               e.at("n").get<int>(), lam, jet_len);
    check_jet(c.jet, e.at("valuation").get<int>(), e.at("coeffs"));
  }
}

TEST_CASE("x, y, z action jets match the frozen expansions") {
  json data = load_vectors("limit_vectors.json");
  int jet_len = data.at("jet_len").get<int>();
  // the grid repeats (n, lam) across generators; build each family once
  XyzAForm cache;
  int cached_n = -1000;
  GaussRat cached_lam;
  for (const auto& e : data.at("xyz_jets")) {
    int n = e.at("n").get<int>();
    GaussRat lam = gauss_pair(e.at("lam"));
    if (n != cached_n || !(lam == cached_lam)) {
      cache = xyz_aform_action(n, ExponentLambda{lam}, jet_len);
      cached_n = n;
      cached_lam = lam;
    }
    const AFormCoeff& c = component(cache, e.at("gen").get<std::string>(),
                                    e.at("comp").get<std::string>());
    check_jet(c.jet, e.at("valuation").get<int>(), e.at("coeffs"));
  }
}

TEST_CASE("adjugate solve and factored closed form build the same family") {
  for (int n = -4; n <= 4; ++n) {
    ExponentLambda lam{GaussRat(Rational(5, 3))};
    XyzAForm solved = xyz_aform_action(n, lam);
    XyzAForm factored = xyz_aform_factored(n, lam);
    for (std::string_view gen : {"x", "y", "z"})
      for (std::string_view comp : {"up", "diag", "down"}) {
        CHECK(component(solved, gen, comp).closed_form ==
              component(factored, gen, comp).closed_form);
        CHECK(component(solved, gen, comp).jet == component(factored, gen, comp).jet);
      }
  }
}

TEST_CASE("specializations match the frozen values") {
  json data = load_vectors("limit_vectors.json");
  for (const auto& e : data.at("specializations")) {
    Rational q0 = rat_pair(e.at("q0"));
    GaussRat lam = gauss_pair(e.at("lam"));
    // the frozen grid uses integer exponents, so mu = q0^lam is rational
    REQUIRE(lam.is_real());
    REQUIRE(boost::multiprecision::denominator(lam.re) == 1);
    GaussRat mu = gpow(GaussRat(q0), boost::multiprecision::numerator(lam.re).convert_to<int>());
    AFormCoeff c = aform_coeff(kind_of(e.at("kind").get<std::string>()),
                               e.at("n").get<int>(), ExponentLambda{lam});
    CHECK(c.eval_at(q0, mu) == gauss_pair(e.at("value")));
  }
}

TEST_CASE("specializing the family recovers the fixed-q module exactly") {
  const RatFunc dq = rf_q_minus_qinv();
  for (const Rational& q0 : {Rational(2), Rational(4), Rational(1, 4)}) {
    GaussRat dq0 = dq.eval_q(q0);
    for (int ell : {0, 1, -1, 2, 3, -2}) {
      GaussRat mu = gpow(GaussRat(q0), ell);
      ExponentLambda lam{GaussRat(ell)};
      for (int n = -3; n <= 3; ++n) {
        auto chi = conc(n % 2 == 0 ? 1 : -1, mu, q0);
        // t+- and theta against the raw transition scalars
        CHECK(aform_coeff(TKind::TPlus, n, lam).eval_at(q0, mu) * dq0 ==
              transition_coeff(chi, n, Trans::Up));
        CHECK(aform_coeff(TKind::TMinus, n, lam).eval_at(q0, mu) * dq0 ==
              transition_coeff(chi, n, Trans::Down));
        CHECK(aform_coeff(TKind::TZero, n, lam).eval_at(q0, mu) * dq0 +
                  qbrace(1).eval_q(q0) ==
              transition_coeff(chi, n, Trans::Diag));
        CHECK(aform_coeff(TKind::Theta, n, lam).eval_at(q0, mu) ==
              qint(n).eval_q(q0));
        // x, y, z against the renormalized generator actions
        XyzAForm a = xyz_aform_action(n, lam);
        KVector<GaussRat> zeta = KVector<GaussRat>::unit(n, GaussRat(1));
        struct Row {
          const char* gen;
          Gen g;
        };
        for (const Row& row : {Row{"x", Gen::lx}, Row{"y", Gen::ly}, Row{"z", Gen::lz}}) {
          KVector<GaussRat> img = act_generator(chi, row.g, zeta);
          CHECK(component(a, row.gen, "up").eval_at(q0, mu) == comp_at(img, n + 2));
          CHECK(component(a, row.gen, "diag").eval_at(q0, mu) == comp_at(img, n));
          CHECK(component(a, row.gen, "down").eval_at(q0, mu) == comp_at(img, n - 2));
        }
      }
    }
  }
}

TEST_CASE("values at q = 1 are the classical coefficients") {
  std::vector<GaussRat> grid = {GaussRat(0),
                                GaussRat(1),
                                GaussRat(-1),
                                GaussRat(2),
                                GaussRat(-2),
                                GaussRat(Rational(2), Rational(1)),
                                GaussRat(Rational(5, 3))};
  for (const GaussRat& l : grid) {
    ExponentLambda lam{l};
    for (int n = -10; n <= 10; ++n) {
      CHECK(aform_coeff(TKind::TPlus, n, lam).ev1() == l + GaussRat(1 + n));
      CHECK(aform_coeff(TKind::TMinus, n, lam).ev1() == l + GaussRat(1 - n));
      CHECK(aform_coeff(TKind::TZero, n, lam).ev1() == GaussRat(0));
      CHECK(aform_coeff(TKind::Theta, n, lam).ev1() == GaussRat(n));
    }
  }
}

TEST_CASE("all family jets are regular at q = 1") {
  std::vector<GaussRat> grid = {GaussRat(0), GaussRat(1),
                                GaussRat(Rational(2), Rational(1)),
                                GaussRat(-3), GaussRat(Rational(5, 3)),
                                GaussRat(Rational(1), Rational(1, 2))};
  for (const GaussRat& l : grid) {
    ExponentLambda lam{l};
    for (int n = -10; n <= 10; ++n) {
      for (TKind k : {TKind::TPlus, TKind::TMinus, TKind::TZero, TKind::Theta}) {
        Jet j = aform_coeff(k, n, lam).jet;
        CHECK(j.val >= 0);
      }
      XyzAForm a = xyz_aform_action(n, lam);
      for (std::string_view gen : {"x", "y", "z"})
        for (std::string_view comp : {"up", "diag", "down"})
          CHECK(component(a, gen, comp).jet.val >= 0);
    }
  }
}

TEST_CASE("a coefficient whose numerator survives at q = 1 is rejected") {
  // 1/(q - q^{-1}) has a genuine pole at q = 1
  TLaurent bad = TLaurent::term(0, RatFunc::one() / rf_q_minus_qinv());
  CHECK_THROWS_AS(aform_from_closed(bad, GaussRat(1)), Error);
  try {
    aform_from_closed(bad, GaussRat(1));
  } catch (const Error& e) {
    CHECK(e.code() == "PoleAtOne");
  }
  CHECK_THROWS_AS(aform_coeff(TKind::TPlus, 0, ExponentLambda{GaussRat(1)}, 1), Error);
}

TEST_CASE("jets recomputed on another window agree with the default one") {
  ExponentLambda lam{GaussRat(Rational(2), Rational(1))};
  AFormCoeff c = aform_coeff(TKind::TPlus, 3, lam);
  Jet wide = c.jet_at(12);
  REQUIRE(wide.len() == 12);
  CHECK(wide.val == c.jet.val);
  for (int i = 0; i < c.jet.len(); ++i)
    CHECK(wide.c[static_cast<std::size_t>(i)] == c.jet.c[static_cast<std::size_t>(i)]);
  Jet narrow = c.jet_at(3);
  CHECK(narrow.len() == 3);
  CHECK(narrow.val == c.jet.val);
}

TEST_CASE("classical generator action") {
  ClassicalModule m = make_classical(1, GaussRat(Rational(5, 3)));
  KVector<GaussRat> z0 = KVector<GaussRat>::unit(0, GaussRat(1));
  KVector<GaussRat> up = classical_act(m, ClGen::KappaPlus, z0);
  CHECK(comp_at(up, 2) == GaussRat(Rational(8, 3)));  // lam + 1
  KVector<GaussRat> z2 = KVector<GaussRat>::unit(2, GaussRat(1));
  KVector<GaussRat> dn = classical_act(m, ClGen::KappaMinus, z2);
  CHECK(comp_at(dn, 0) == GaussRat(Rational(2, 3)));  // lam - 1

  ClassicalModule modd = make_classical(-1, GaussRat(2));
  KVector<GaussRat> z5 = KVector<GaussRat>::unit(5, GaussRat(1));
  CHECK(classical_act(modd, ClGen::Theta, z5) == z5.scaled(GaussRat(5)));

  // multi-entry linearity
  KVector<GaussRat> v;
  v.add_term(-1, GaussRat(2));
  v.add_term(3, GaussRat(Rational(0), Rational(1)));
  KVector<GaussRat> img = classical_act(modd, ClGen::KappaPlus, v);
  CHECK(comp_at(img, 1) == GaussRat(2) * GaussRat(2));        // (lam + 1 - 1) * 2
  CHECK(comp_at(img, 5) == GaussRat(6) * GaussRat::i());       // (lam + 1 + 3) * i

  CHECK_THROWS_AS(classical_act(m, ClGen::Theta, z5), Error);  // parity
  CHECK_THROWS_AS(make_classical(0, GaussRat(1)), Error);
}

TEST_CASE("classical raising and lowering kill exactly the boundary types") {
  ClassicalModule m = make_classical(1, GaussRat(3));
  // kappa+ vanishes on zeta_{-lam-1}, kappa- on zeta_{lam+1}
  CHECK(classical_act(m, ClGen::KappaPlus,
                      KVector<GaussRat>::unit(-4, GaussRat(1)))
            .is_zero());
  CHECK(classical_act(m, ClGen::KappaMinus,
                      KVector<GaussRat>::unit(4, GaussRat(1)))
            .is_zero());
  for (int n = -8; n <= 8; n += 2) {
    bool up_zero =
        classical_act(m, ClGen::KappaPlus, KVector<GaussRat>::unit(n, GaussRat(1)))
            .is_zero();
    bool dn_zero =
        classical_act(m, ClGen::KappaMinus, KVector<GaussRat>::unit(n, GaussRat(1)))
            .is_zero();
    CHECK(up_zero == (n == -4));
    CHECK(dn_zero == (n == 4));
  }
}

TEST_CASE("the kappa commutator acts as the frozen multiple of theta") {
  json data = load_vectors("limit_vectors.json");
  GaussRat c = GaussRat(data.at("kappa_commutator_constant").get<int>());
  for (const GaussRat& l : {GaussRat(Rational(5, 3)), GaussRat(Rational(2), Rational(1)),
                            GaussRat(-4)}) {
    for (int eps : {1, -1}) {
      ClassicalModule m = make_classical(eps, l);
      KVector<GaussRat> v;
      v.add_term(eps == 1 ? 0 : 1, GaussRat(Rational(1, 2)));
      v.add_term(eps == 1 ? 4 : -3, GaussRat(Rational(2), Rational(3)));
      v.add_term(eps == 1 ? -6 : 7, GaussRat(-1));
      KVector<GaussRat> pm = classical_act(m, ClGen::KappaPlus,
                                           classical_act(m, ClGen::KappaMinus, v));
      KVector<GaussRat> mp = classical_act(m, ClGen::KappaMinus,
                                           classical_act(m, ClGen::KappaPlus, v));
      CHECK(pm - mp == classical_act(m, ClGen::Theta, v).scaled(c));
    }
  }
}

TEST_CASE("jet values at q = 1 match compositions of the classical action") {
  // x = (kappa+ + kappa-)/4, y = -x, z = (kappa- - kappa+)/4 + theta/2
  for (const GaussRat& l : {GaussRat(0), GaussRat(2), GaussRat(Rational(5, 3)),
                            GaussRat(Rational(2), Rational(1))}) {
    for (int n = -4; n <= 4; ++n) {
      ClassicalModule m = make_classical(n % 2 == 0 ? 1 : -1, l);
      KVector<GaussRat> zeta = KVector<GaussRat>::unit(n, GaussRat(1));
      KVector<GaussRat> kp = classical_act(m, ClGen::KappaPlus, zeta);
      KVector<GaussRat> km = classical_act(m, ClGen::KappaMinus, zeta);
      KVector<GaussRat> th = classical_act(m, ClGen::Theta, zeta);
      GaussRat quarter(Rational(1, 4));
      KVector<GaussRat> xv = (kp + km).scaled(quarter);
      KVector<GaussRat> zv =
          (km - kp).scaled(quarter) + th.scaled(GaussRat(Rational(1, 2)));
      XyzAForm a = xyz_aform_action(n, ExponentLambda{l});
      CHECK(component(a, "x", "up").ev1() == comp_at(xv, n + 2));
      CHECK(component(a, "x", "diag").ev1() == comp_at(xv, n));
      CHECK(component(a, "x", "down").ev1() == comp_at(xv, n - 2));
      CHECK(component(a, "y", "up").ev1() == -comp_at(xv, n + 2));
      CHECK(component(a, "y", "diag").ev1() == -comp_at(xv, n));
      CHECK(component(a, "y", "down").ev1() == -comp_at(xv, n - 2));
      CHECK(component(a, "z", "up").ev1() == comp_at(zv, n + 2));
      CHECK(component(a, "z", "diag").ev1() == comp_at(zv, n));
      CHECK(component(a, "z", "down").ev1() == comp_at(zv, n - 2));
    }
  }
}

TEST_CASE("classification of the q = 1 module") {
  auto c = classical_classify(1, GaussRat(3));
  CHECK(lat_kinds(c.lattice) == std::vector<std::string>{"Zero:0", "Above:3", "Below:3",
                                                         "AboveBelow:3", "All:0"});
  REQUIRE(c.series.size() == 3);
  CHECK(c.series[0].variant == "DiscretePlus");
  CHECK(c.series[1].variant == "DiscreteMinus");
  CHECK(c.series[2].variant == "FiniteDim");
  CHECK(c.series[2].n == 3);
  CHECK(!c.series[0].unitarizable.has_value());
  REQUIRE(c.special.has_value());
  CHECK(c.special->second == 3);

  auto socle = classical_classify(1, GaussRat(-3));
  CHECK(lat_kinds(socle.lattice) ==
        std::vector<std::string>{"Zero:0", "Middle:3", "MiddleAbove:3",
                                 "MiddleBelow:3", "All:0"});
  CHECK(socle.series[0].variant == "FiniteDim");

  auto semi = classical_classify(-1, GaussRat(0));
  CHECK(lat_kinds(semi.lattice) ==
        std::vector<std::string>{"Zero:0", "Above:0", "Below:0", "All:0"});
  REQUIRE(semi.series.size() == 2);

  // simple: non-integer, wrong parity, or non-real exponents
  for (auto [eps, l] : std::vector<std::pair<int, GaussRat>>{
           {1, GaussRat(Rational(1, 2))},
           {1, GaussRat(2)},
           {-1, GaussRat(3)},
           {1, GaussRat(Rational(3), Rational(1))},
           {-1, GaussRat(Rational(5, 3))}}) {
    auto s = classical_classify(eps, l);
    CHECK(lat_kinds(s.lattice) == std::vector<std::string>{"Zero:0", "All:0"});
    REQUIRE(s.series.size() == 1);
    CHECK(s.series[0].variant == "Principal");
    CHECK(!s.special.has_value());
  }

  // canonical representative of the simple class
  CHECK(classical_classify(1, GaussRat(Rational(-5, 2))).series[0].lambda ==
        GaussRat(Rational(5, 2)));
  CHECK(classical_classify(-1, GaussRat(Rational(-3), Rational(1))).series[0].lambda ==
        GaussRat(Rational(3), Rational(-1)));
  CHECK(classical_classify(1, GaussRat(Rational(0), Rational(-2))).series[0].lambda ==
        GaussRat(Rational(0), Rational(2)));
}

TEST_CASE("submodule correspondence at integer exponents") {
  // reducible on both sides, all five submodules in bijection
  auto r = correspondence_check(1, GaussRat(3), Rational(2));
  CHECK(r.match);
  CHECK(r.q_lattice == r.classical_lattice);
  CHECK(r.q_lattice.size() == 5);

  // parity mismatch on both sides: simple
  auto s = correspondence_check(1, GaussRat(2), Rational(2));
  CHECK(s.match);
  CHECK(s.q_lattice.size() == 2);

  // n = 0 in the odd class: semisimple with two summands
  auto z = correspondence_check(-1, GaussRat(0), Rational(2));
  CHECK(z.match);
  CHECK(z.q_lattice.size() == 4);
  CHECK(correspondence_check(1, GaussRat(0), Rational(2)).q_lattice.size() == 2);

  // socle case
  auto m = correspondence_check(1, GaussRat(-3), Rational(2));
  CHECK(m.match);
  CHECK(m.q_lattice[1].kind == "Middle");

  // the full small sweep, above and below q = 1
  for (const Rational& q0 : {Rational(2), Rational(3, 2), Rational(2, 3)})
    for (int eps : {1, -1})
      for (int l = -4; l <= 4; ++l)
        CHECK(correspondence_check(eps, GaussRat(l), q0).match);
}

TEST_CASE("correspondence through the symbolic and structural routes") {
  // half-integer exponents stay symbolic; both sides are simple
  auto h = correspondence_check(1, GaussRat(Rational(1, 2)), Rational(4));
  CHECK(h.match);
  CHECK(h.q_lattice.size() == 2);
  CHECK(correspondence_check(-1, GaussRat(Rational(-7, 2)), Rational(2)).match);

  // non-real exponents under the certified hypothesis
  auto c = correspondence_check(1, GaussRat(Rational(2), Rational(1)), Rational(2));
  CHECK(c.match);
  CHECK(c.q_lattice.size() == 2);
  CHECK(correspondence_check(-1, GaussRat(Rational(0), Rational(1)), Rational(2)).match);

  // real exponents with denominator > 2 leave the scalar field
  try {
    correspondence_check(1, GaussRat(Rational(5, 3)), Rational(2));
    FAIL("expected IrrationalParameter");
  } catch (const Error& e) {
    CHECK(e.code() == "IrrationalParameter");
  }

  // |log 2| * 5 > pi: the hypothesis provably fails
  try {
    correspondence_check(1, GaussRat(Rational(2), Rational(5)), Rational(2));
    FAIL("expected HypothesisViolated");
  } catch (const Error& e) {
    CHECK(e.code() == "HypothesisViolated");
    CHECK(std::string(e.what()).find("fails") != std::string::npos);
  }

  // |log 2| * b lands inside the pi bracket: rejected, not guessed
  Rational b(Int("4532360141827193810"), Int("1000000000000000000"));
  try {
    correspondence_check(1, GaussRat(Rational(0), b), Rational(2));
    FAIL("expected HypothesisViolated");
  } catch (const Error& e) {
    CHECK(e.code() == "HypothesisViolated");
  }

  CHECK_THROWS_AS(correspondence_check(1, GaussRat(1), Rational(1)), Error);
  CHECK_THROWS_AS(correspondence_check(1, GaussRat(1), Rational(-2)), Error);
  CHECK_THROWS_AS(correspondence_check(2, GaussRat(1), Rational(2)), Error);
}
