#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "qsl2/expr.hpp"
#include "qsl2/format.hpp"
#include "qsl2/harish.hpp"

using namespace qsl2;

namespace {

template <class F>
std::string code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

template <class F>
std::string message_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

GaussRat gr(long re_p, long re_q, long im_p, long im_q) {
  return GaussRat(Rational(re_p, re_q), Rational(im_p, im_q));
}

}  // namespace

TEST_CASE("parser produces the documented shapes") {
  Expr e = parse("q*X - q^-1*Y");
  REQUIRE(e.kind == Expr::Kind::Sum);
  REQUIRE(e.kids.size() == 2);
  CHECK(e.kids[0].kind == Expr::Kind::Prod);
  CHECK(e.kids[0].kids[0].atom == Expr::AtomTag::Q);
  CHECK(e.kids[0].kids[1].gen == Gen::X);
  REQUIRE(e.kids[1].kind == Expr::Kind::Neg);
  const Expr& p = e.kids[1].kids[0];
  REQUIRE(p.kind == Expr::Kind::Prod);
  CHECK(p.kids[0].kind == Expr::Kind::Pow);
  CHECK(p.kids[0].exp == -1);
  CHECK(p.kids[0].kids[0].atom == Expr::AtomTag::Q);
  CHECK(p.kids[1].gen == Gen::Y);

  Expr w = parse("Omega^2");
  REQUIRE(w.kind == Expr::Kind::Pow);
  CHECK(w.exp == 2);
  CHECK(w.kids[0].atom == Expr::AtomTag::Omega);

  CHECK(code_of([] { parse("X/Z"); }) == "NonScalarDivisor");
  CHECK(code_of([] { parse("X^-1"); }) == "NonScalarDivisor");
  CHECK(code_of([] { parse("1/(X-X)"); }) == "NonScalarDivisor");
  CHECK(code_of([] { parse("q/Omega"); }) == "NonScalarDivisor");
}

TEST_CASE("syntax errors carry a position") {
  CHECK(code_of([] { parse(""); }) == "SyntaxError");
  CHECK(message_of([] { parse("q +"); }).find("position 4") != std::string::npos);
  CHECK(message_of([] { parse("q ** X"); }).find("position 4") != std::string::npos);
  CHECK(message_of([] { parse("foo"); }).find("'foo'") != std::string::npos);
  CHECK(message_of([] { parse("foo"); }).find("position 1") != std::string::npos);
  CHECK(message_of([] { parse("(q"); }).find("')'") != std::string::npos);
  CHECK(code_of([] { parse("2q"); }) == "SyntaxError");
  CHECK(message_of([] { parse("4 5"); }).find("position 3") != std::string::npos);
  CHECK(code_of([] { parse("q^i"); }) == "SyntaxError");
  CHECK(code_of([] { parse("q^(2)"); }) == "SyntaxError");
  CHECK(message_of([] { parse("$"); }).find("position 1") != std::string::npos);
  CHECK(code_of([] { parse("4in"); }) == "SyntaxError");
}

TEST_CASE("scalar evaluation over the exact field") {
  CHECK(eval_scalar(parse("q^3")) == RatFunc::q_pow(3));
  CHECK(eval_scalar(parse("-q^-2")) == -RatFunc::q_pow(-2));
  CHECK(eval_scalar(parse("4i")) == RatFunc::from_gauss(gr(0, 1, 4, 1)));
  CHECK(eval_scalar(parse("i^2")) == -RatFunc::one());
  CHECK(eval_scalar(parse("2+3i")) == RatFunc::from_gauss(gr(2, 1, 3, 1)));
  CHECK(eval_scalar(parse("(3+4i)/5")) == RatFunc::from_gauss(gr(3, 5, 4, 5)));
  CHECK(eval_scalar(parse("q/(q^2-1)")) ==
        RatFunc::q_pow(1) / (RatFunc::q_pow(2) - RatFunc::one()));
  CHECK(eval_scalar(parse("(q+q^-1)^2")) == qint(2) * qint(2));
  CHECK(code_of([] { eval_scalar(parse("1/(q-q)")); }) == "DivisionByZero");
  CHECK(code_of([] { eval_scalar(parse("X")); }) == "NotInDomain");

  CHECK(is_scalar_expr(parse("q^3 - 2*i")));
  CHECK(!is_scalar_expr(parse("X")));
  CHECK(!is_scalar_expr(parse("Omega")));
}

TEST_CASE("algebra evaluation matches the straightening engines") {
  Element1 expected;
  expected.add_term({0, -1, 0}, RatFunc::q_pow(1));
  expected.add_term({0, 1, 0}, -RatFunc::q_pow(-1));
  CHECK(eval1(parse("q*X - q^-1*Y")) == expected);

  Element1 xy;
  xy.add_term({0, 0, 0}, RatFunc::one());
  xy.add_term({0, 0, 2}, -RatFunc::q_pow(2));
  CHECK(eval1(parse("X*Y")) == xy);
  CHECK(eval1(parse("X*Y")) == normal_form1(GenWord{RatFunc::one(), {Gen::X, Gen::Y}}));

  CHECK(eval1(parse("Omega")) == casimir());
  CHECK(eval1(parse("Omega^2")) == multiply1(casimir(), casimir()));
  CHECK(eval1(parse("q*X + q^-1*Y + (q-q^-1)*theta*Z")) == casimir());

  // The defining quadratic as a basis-2 identity.
  CHECK(eval2(parse("X*Y - 1 + q^2*Z^2")).is_zero());
  CHECK(eval2(parse("b")) == Element2::monomial({0, 0, 0, 1}, RatFunc::one()));
  CHECK(eval2(parse("a")) == Element2::monomial({0, 0, 1, 0}, RatFunc::one()));

  for (const char* src : {"theta*X + (2+3i)*Z^2/q", "a*b - z^3", "(x+y)^2",
                          "Omega*theta - theta*Omega", "q^2*(X - Y)/(1+q^2)"})
    CHECK(convert_1to2(eval1(parse(src))) == eval2(parse(src)));

  CHECK(eval1(parse("1")) == Element1::unit());
  CHECK(eval1(parse("X^0")) == Element1::unit());
  CHECK(code_of([] { eval1(parse("X/0")); }) == "DivisionByZero");

  // Whitespace never matters.
  CHECK(eval1(parse("  q * X\t- q^-1 *Y ")) == eval1(parse("q*X-q^-1*Y")));
}

TEST_CASE("gaussian rationals print in canonical form") {
  CHECK(format_gauss(GaussRat(0)) == "0");
  CHECK(format_gauss(GaussRat(1)) == "1");
  CHECK(format_gauss(GaussRat(-1)) == "-1");
  CHECK(format_gauss(GaussRat::i()) == "i");
  CHECK(format_gauss(-GaussRat::i()) == "-i");
  CHECK(format_gauss(gr(0, 1, 4, 1)) == "4i");
  CHECK(format_gauss(gr(0, 1, 4, 5)) == "4i/5");
  CHECK(format_gauss(gr(0, 1, -4, 5)) == "-4i/5");
  CHECK(format_gauss(gr(3, 4, 0, 1)) == "3/4");
  CHECK(format_gauss(gr(-3, 4, 0, 1)) == "-3/4");
  CHECK(format_gauss(gr(3, 5, 4, 5)) == "(3+4i)/5");
  CHECK(format_gauss(gr(2, 1, 1, 1)) == "(2+i)");
  CHECK(format_gauss(gr(1, 1, -1, 1)) == "(1-i)");
  CHECK(format_gauss(gr(-3, 5, -4, 5)) == "(-3-4i)/5");
  CHECK(format_gauss(gr(1, 2, 1, 3)) == "(3+2i)/6");

  // Every canonical form reads back to the same value.
  for (const GaussRat& g :
       {GaussRat(1), -GaussRat::i(), gr(0, 1, 4, 5), gr(3, 5, 4, 5),
        gr(2, 1, 1, 1), gr(-3, 5, -4, 5), gr(1, 2, 1, 3), gr(-3, 4, 0, 1)})
    CHECK(eval_scalar(parse(format_gauss(g))) == RatFunc::from_gauss(g));
}

TEST_CASE("rational functions print in canonical form") {
  CHECK(format_ratfunc(RatFunc::zero()) == "0");
  CHECK(format_ratfunc(RatFunc::one()) == "1");
  CHECK(format_ratfunc(RatFunc::q_pow(1)) == "q");
  CHECK(format_ratfunc(RatFunc::q_pow(-1)) == "q^-1");
  CHECK(format_ratfunc(-RatFunc::q_pow(2)) == "-q^2");
  CHECK(format_ratfunc(RatFunc::s_pow(1)) == "q^(1/2)");
  CHECK(format_ratfunc(RatFunc::s_pow(-3)) == "q^(-3/2)");
  CHECK(format_ratfunc(RatFunc::from_gauss(gr(1, 2, 0, 1)) * RatFunc::q_pow(1)) ==
        "1/2*q");
  CHECK(format_ratfunc(RatFunc::from_gauss(gr(3, 1, 4, 1)) * RatFunc::q_pow(1)) ==
        "(3+4i)*q");
  CHECK(format_ratfunc(qint(2)) == "q+q^-1");
  CHECK(format_ratfunc(rf_q_minus_qinv()) == "q-q^-1");
  CHECK(format_ratfunc(RatFunc::q_pow(2) - RatFunc::one()) == "q^2-1");
  CHECK(format_ratfunc(RatFunc::q_pow(1) / (RatFunc::q_pow(2) - RatFunc::one())) ==
        "q/(q^2-1)");
  CHECK(format_ratfunc((RatFunc::q_pow(2) - RatFunc::one()) /
                       (RatFunc::q_pow(2) + RatFunc::one())) ==
        "(q^2-1)/(q^2+1)");
}

TEST_CASE("elements print in canonical form") {
  CHECK(format_element1(Element1::zero()) == "0");
  CHECK(format_element1(Element1::unit()) == "1");
  CHECK(format_element1(casimir()) == "q*X + q^-1*Y + (q-q^-1)*theta*Z");
  CHECK(format_element1(eval1(parse("X*Y"))) == "1 - q^2*Z^2");
  CHECK(format_element2(eval2(parse("theta^2*z*b^3"))) == "theta^2*z*b^3");
  CHECK(format_tlaurent(gamma_tilde(casimir())) == "t + t^-1");
}

namespace {

RatFunc random_coeff(std::mt19937& rng) {
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> qexp(-2, 2);
  std::uniform_int_distribution<int> mode(0, 3);
  GaussRat g;
  do {
    g = GaussRat(Rational(small(rng), den(rng)), Rational(small(rng), den(rng)));
  } while (g.is_zero());
  RatFunc r = RatFunc::from_gauss(g) * RatFunc::q_pow(qexp(rng));
  if (mode(rng) == 0) r = r + RatFunc::q_pow(qexp(rng));
  if (mode(rng) == 1)
    r = r / (RatFunc::q_pow(2) + RatFunc::from_int(den(rng)));
  return r;
}

}  // namespace

TEST_CASE("printing then parsing is the identity") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> nterms(1, 4);
  std::uniform_int_distribution<int> m1(0, 2), n(-2, 2), m2(0, 2);
  std::uniform_int_distribution<int> zn(0, 2), ad(0, 1), bp(0, 2);

  for (int trial = 0; trial < 60; ++trial) {
    RatFunc r = random_coeff(rng);
    CAPTURE(format_ratfunc(r));
    CHECK(eval_scalar(parse(format_ratfunc(r))) == r);
  }

  for (int trial = 0; trial < 60; ++trial) {
    Element1 e;
    int t = nterms(rng);
    for (int j = 0; j < t; ++j)
      e.add_term({m1(rng), n(rng), m2(rng)}, random_coeff(rng));
    if (e.is_zero()) continue;
    std::string s = format_element1(e);
    CAPTURE(s);
    CHECK(eval1(parse(s)) == e);
  }

  for (int trial = 0; trial < 60; ++trial) {
    Element2 e;
    int t = nterms(rng);
    for (int j = 0; j < t; ++j)
      e.add_term({m1(rng), zn(rng), ad(rng), bp(rng)}, random_coeff(rng));
    if (e.is_zero()) continue;
    std::string s = format_element2(e);
    CAPTURE(s);
    CHECK(eval2(parse(s)) == e);
  }
}
