#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "qsl2/pbw.hpp"
#include "test_util.hpp"

using namespace qsl2;

namespace {

GenWord word_from(const std::string& letters) {
  GenWord w;
  for (char ch : letters) {
    switch (ch) {
      case 'T': w.letters.push_back(Gen::Theta); break;
      case 'X': w.letters.push_back(Gen::X); break;
      case 'Y': w.letters.push_back(Gen::Y); break;
      case 'Z': w.letters.push_back(Gen::Z); break;
      default: REQUIRE(false);
    }
  }
  return w;
}

Element1 nf(const std::string& letters) { return normal_form1(word_from(letters)); }

const RatFunc Q2 = RatFunc::q_pow(2);
const RatFunc QM2 = RatFunc::q_pow(-2);
const RatFunc TWO_BRACKET = qbrace(1);  // [2]_q = q + q^-1

}  // namespace

TEST_CASE("defining relations normalize to zero in basis1") {
  // XZ = q^2 ZX, ZY = q^2 YZ
  CHECK((nf("XZ") - nf("ZX").scaled(Q2)).is_zero());
  CHECK((nf("ZY") - nf("YZ").scaled(Q2)).is_zero());
  // XY + q^2 Z^2 = 1, YX + q^-2 Z^2 = 1
  CHECK(nf("XY") + nf("ZZ").scaled(Q2) == Element1::unit());
  CHECK(nf("YX") + nf("ZZ").scaled(QM2) == Element1::unit());
  // q X theta - q^-1 theta X = [2] Z = q theta Y - q^-1 Y theta
  Element1 lhs1 = nf("XT").scaled(RatFunc::q_pow(1)) - nf("TX").scaled(RatFunc::q_pow(-1));
  Element1 lhs2 = nf("TY").scaled(RatFunc::q_pow(1)) - nf("YT").scaled(RatFunc::q_pow(-1));
  Element1 rhs = nf("Z").scaled(TWO_BRACKET);
  CHECK(lhs1 == rhs);
  CHECK(lhs2 == rhs);
  // theta Z - Z theta = Y - X
  CHECK(nf("TZ") - nf("ZT") == nf("Y") - nf("X"));
}

TEST_CASE("theta exchange rules match the raw relations") {
  // These solved forms drive the rewrite engine; assert them as equalities
  // of normal forms so a rearrangement error cannot hide.
  CHECK(nf("XT") == nf("TX").scaled(QM2) + nf("Z").scaled(RatFunc::q_pow(-1) * TWO_BRACKET));
  CHECK(nf("YT") == nf("TY").scaled(Q2) - nf("Z").scaled(RatFunc::q_pow(1) * TWO_BRACKET));
  CHECK(nf("ZT") == nf("TZ") + nf("X") - nf("Y"));
}

TEST_CASE("straightening rules against frozen oracle data") {
  auto data = testutil::load_vectors("basis1_vectors.json");
  for (const auto& entry : data.at("basis1_words")) {
    Element1 got = nf(entry.at("word").get<std::string>());
    Element1 want;
    for (const auto& term : entry.at("nf")) {
      Pbw1Monomial m{term.at("m1").get<int>(), term.at("n").get<int>(),
                     term.at("m2").get<int>()};
      want.add_term(m, testutil::laurent_q(term.at("coeff")));
    }
    CHECK_MESSAGE(got == want, "word ", entry.at("word").get<std::string>());
  }
}

TEST_CASE("multiplication is associative and unital") {
  CHECK(multiply1(Element1::unit(), nf("XYZ")) == nf("XYZ"));
  CHECK(multiply1(nf("XYZ"), Element1::unit()) == nf("XYZ"));

  // W^{(1)} W^{(-1)} = YX = 1 - q^-2 Z^2
  Element1 w1 = Element1::monomial({0, 1, 0}, RatFunc::one());
  Element1 wm1 = Element1::monomial({0, -1, 0}, RatFunc::one());
  CHECK(multiply1(w1, wm1) == nf("YX"));

  // (theta Z)(theta Z) equals the 4-letter word normalization
  Element1 tz = nf("TZ");
  CHECK(multiply1(tz, tz) == nf("TZTZ"));

  std::mt19937 rng(20260818);
  std::uniform_int_distribution<int> len(1, 4), pick(0, 3);
  const char alphabet[] = {'T', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 100; ++trial) {
    auto rand_word = [&] {
      std::string s;
      int L = len(rng);
      for (int k = 0; k < L; ++k) s.push_back(alphabet[pick(rng)]);
      return s;
    };
    Element1 a = nf(rand_word()), b = nf(rand_word()), c = nf(rand_word());
    CHECK(multiply1(multiply1(a, b), c) == multiply1(a, multiply1(b, c)));
  }
}

TEST_CASE("star is a conjugate-linear antiautomorphism") {
  CHECK(star1(nf("X")) == nf("Y"));
  CHECK(star1(nf("Y")) == nf("X"));
  CHECK(star1(nf("Z")) == nf("Z"));
  CHECK(star1(nf("T")) == nf("T"));

  // star(theta Z) = Z theta = theta Z + X - Y
  CHECK(star1(nf("TZ")) == nf("TZ") + nf("X") - nf("Y"));

  // i q X conjugates to -i q Y
  Element1 e = nf("X").scaled(RatFunc::from_gauss(GaussRat::i()) * RatFunc::q_pow(1));
  CHECK(star1(e) == nf("Y").scaled(RatFunc::from_gauss(-GaussRat::i()) * RatFunc::q_pow(1)));

  std::mt19937 rng(77);
  std::uniform_int_distribution<int> len(1, 4), pick(0, 3);
  const char alphabet[] = {'T', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 25; ++trial) {
    auto rand_word = [&] {
      std::string s;
      int L = len(rng);
      for (int k = 0; k < L; ++k) s.push_back(alphabet[pick(rng)]);
      return s;
    };
    Element1 a = nf(rand_word()), b = nf(rand_word());
    CHECK(star1(star1(a)) == a);
    CHECK(star1(multiply1(a, b)) == multiply1(star1(b), star1(a)));
  }
}

TEST_CASE("filtration degree") {
  CHECK(degree1(Element1::unit()) == 0);
  CHECK(degree1(nf("X")) == 1);
  CHECK(degree1(casimir()) == 2);
  CHECK_THROWS_AS((void)degree1(Element1::zero()), Error);
  try {
    (void)degree1(Element1::zero());
  } catch (const Error& e) {
    CHECK(e.code() == "ZeroElement");
  }

  std::mt19937 rng(99);
  std::uniform_int_distribution<int> len(1, 4), pick(0, 3);
  const char alphabet[] = {'T', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 25; ++trial) {
    auto rand_word = [&] {
      std::string s;
      int L = len(rng);
      for (int k = 0; k < L; ++k) s.push_back(alphabet[pick(rng)]);
      return s;
    };
    Element1 a = nf(rand_word()), b = nf(rand_word());
    if (a.is_zero() || b.is_zero()) continue;
    Element1 ab = multiply1(a, b);
    if (!ab.is_zero()) CHECK(degree1(ab) <= degree1(a) + degree1(b));
  }
}

TEST_CASE("lowercase generators act through their defining substitution") {
  // x = (X - 1)/(q - q^-1): check  (q - q^-1) x + 1 = X as elements
  Element1 x = lmul1(Gen::lx, Element1::unit());
  CHECK(x.scaled(rf_q_minus_qinv()) + Element1::unit() == nf("X"));
  Element1 z = lmul1(Gen::lz, Element1::unit());
  CHECK(z.scaled(rf_q_minus_qinv()) == nf("Z"));
  // a = y - x
  Element1 a = lmul1(Gen::la, Element1::unit());
  Element1 y = lmul1(Gen::ly, Element1::unit());
  CHECK(a == y - x);
}
