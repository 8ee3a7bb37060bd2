#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "qsl2/basis2.hpp"
#include "qsl2/errors.hpp"
#include "qsl2/pbw.hpp"
#include "qsl2/scalars.hpp"

namespace qsl2 {

// ---------------------------------------------------------------------------
// Expression AST over the generators and exact scalars, plus a recursive
// descent parser for
//   expr   := '-'? term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' signed-int)?
//   atom   := 'theta'|'X'|'Y'|'Z'|'x'|'y'|'z'|'a'|'b'|'Omega'|'q'|'i'
//           | integer | '(' expr ')'
// Whitespace is ignored; juxtaposition is not multiplication. An integer
// immediately followed by 'i' lexes as one Gaussian literal ("4i"), so 'i'
// never needs juxtaposition either. Divisors and negative-power bases must
// be scalar subexpressions (structurally free of generators and Omega).
// ---------------------------------------------------------------------------

struct Expr {
  enum class Kind { Sum, Prod, Pow, Quot, Neg, Atom };
  enum class AtomTag { GenA, Omega, Q, Num };

  Kind kind = Kind::Atom;
  std::vector<Expr> kids;        // Sum/Prod children; Neg: 1; Quot: num, den
  int exp = 1;                   // Pow only
  AtomTag atom = AtomTag::Num;   // Atom only
  Gen gen = Gen::Theta;          // Atom GenA only
  GaussRat value;                // Atom Num only
};

inline bool is_scalar_expr(const Expr& e) {
  if (e.kind == Expr::Kind::Atom)
    return e.atom == Expr::AtomTag::Q || e.atom == Expr::AtomTag::Num;
  for (const Expr& k : e.kids)
    if (!is_scalar_expr(k)) return false;
  return true;
}

namespace exprdetail {

struct Token {
  enum class T { Plus, Minus, Star, Slash, Caret, LParen, RParen, Name, Number, End };
  T t = T::End;
  std::string text;
  GaussRat num;
  int pos = 0;  // 1-based column in the source
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t k = 0;
  auto push = [&](Token::T t, std::size_t at, std::string text = {}) {
    Token tok;
    tok.t = t;
    tok.text = std::move(text);
    tok.pos = static_cast<int>(at) + 1;
    out.push_back(std::move(tok));
  };
  while (k < src.size()) {
    char ch = src[k];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++k;
      continue;
    }
    std::size_t at = k;
    switch (ch) {
      case '+': push(Token::T::Plus, at); ++k; continue;
      case '-': push(Token::T::Minus, at); ++k; continue;
      case '*': push(Token::T::Star, at); ++k; continue;
      case '/': push(Token::T::Slash, at); ++k; continue;
      case '^': push(Token::T::Caret, at); ++k; continue;
      case '(': push(Token::T::LParen, at); ++k; continue;
      case ')': push(Token::T::RParen, at); ++k; continue;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t b = k;
      while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
      Int v(src.substr(b, k - b));
      bool imag = false;
      if (k < src.size() && src[k] == 'i' &&
          (k + 1 >= src.size() ||
           !std::isalnum(static_cast<unsigned char>(src[k + 1])))) {
        imag = true;
        ++k;
      }
      Token tok;
      tok.t = Token::T::Number;
      tok.num = imag ? GaussRat(Rational(0), Rational(v)) : GaussRat(Rational(v));
      tok.pos = static_cast<int>(b) + 1;
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t b = k;
      while (k < src.size() && std::isalpha(static_cast<unsigned char>(src[k]))) ++k;
      push(Token::T::Name, b, src.substr(b, k - b));
      continue;
    }
    throw err("SyntaxError", std::string("unexpected character '") + ch +
                                 "' at position " + std::to_string(at + 1));
  }
  push(Token::T::End, src.size());
  return out;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t k = 0;

  const Token& peek() const { return toks[k]; }
  Token take() { return toks[k++]; }
  bool accept(Token::T t) {
    if (toks[k].t != t) return false;
    ++k;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw err("SyntaxError",
              what + " at position " + std::to_string(peek().pos));
  }

  static Expr atom_of(Expr::AtomTag tag) {
    Expr e;
    e.kind = Expr::Kind::Atom;
    e.atom = tag;
    return e;
  }

  static Expr gen_atom(Gen g) {
    Expr e = atom_of(Expr::AtomTag::GenA);
    e.gen = g;
    return e;
  }

  Expr parse_atom() {
    const Token& t = peek();
    if (t.t == Token::T::Number) {
      Expr e = atom_of(Expr::AtomTag::Num);
      e.value = take().num;
      return e;
    }
    if (t.t == Token::T::LParen) {
      take();
      Expr e = parse_expr();
      if (!accept(Token::T::RParen)) fail("expected ')'");
      return e;
    }
    if (t.t == Token::T::Name) {
      const std::string& n = t.text;
      take();
      if (n == "theta") return gen_atom(Gen::Theta);
      if (n == "X") return gen_atom(Gen::X);
      if (n == "Y") return gen_atom(Gen::Y);
      if (n == "Z") return gen_atom(Gen::Z);
      if (n == "x") return gen_atom(Gen::lx);
      if (n == "y") return gen_atom(Gen::ly);
      if (n == "z") return gen_atom(Gen::lz);
      if (n == "a") return gen_atom(Gen::la);
      if (n == "b") return gen_atom(Gen::lb);
      if (n == "Omega") return atom_of(Expr::AtomTag::Omega);
      if (n == "q") return atom_of(Expr::AtomTag::Q);
      if (n == "i") {
        Expr e = atom_of(Expr::AtomTag::Num);
        e.value = GaussRat::i();
        return e;
      }
      --k;
      fail("unknown name '" + n + "'");
    }
    fail("expected an atom");
  }

  int parse_signed_int() {
    int sign = 1;
    if (accept(Token::T::Minus)) {
      sign = -1;
    } else {
      accept(Token::T::Plus);
    }
    if (peek().t != Token::T::Number) fail("expected an integer exponent");
    Token t = take();
    if (!t.num.is_real()) fail("expected an integer exponent");
    GaussRat v = t.num;
    if (boost::multiprecision::denominator(v.re) != 1 || v.re > 1000000)
      fail("exponent out of range");
    return sign * v.re.convert_to<int>();
  }

  Expr parse_factor() {
    Expr base = parse_atom();
    if (!accept(Token::T::Caret)) return base;
    int e = parse_signed_int();
    if (e < 0 && !is_scalar_expr(base))
      throw err("NonScalarDivisor",
                "negative power of a non-scalar expression");
    Expr p;
    p.kind = Expr::Kind::Pow;
    p.exp = e;
    p.kids.push_back(std::move(base));
    return p;
  }

  Expr parse_term() {
    Expr acc = parse_factor();
    for (;;) {
      if (accept(Token::T::Star)) {
        Expr f = parse_factor();
        if (acc.kind == Expr::Kind::Prod) {
          acc.kids.push_back(std::move(f));
        } else {
          Expr p;
          p.kind = Expr::Kind::Prod;
          p.kids.push_back(std::move(acc));
          p.kids.push_back(std::move(f));
          acc = std::move(p);
        }
        continue;
      }
      if (accept(Token::T::Slash)) {
        Expr f = parse_factor();
        if (!is_scalar_expr(f))
          throw err("NonScalarDivisor", "divisor contains a generator");
        Expr qt;
        qt.kind = Expr::Kind::Quot;
        qt.kids.push_back(std::move(acc));
        qt.kids.push_back(std::move(f));
        acc = std::move(qt);
        continue;
      }
      return acc;
    }
  }

  Expr parse_expr() {
    bool lead_neg = accept(Token::T::Minus);
    Expr first = parse_term();
    if (lead_neg) {
      Expr n;
      n.kind = Expr::Kind::Neg;
      n.kids.push_back(std::move(first));
      first = std::move(n);
    }
    if (peek().t != Token::T::Plus && peek().t != Token::T::Minus) return first;
    Expr sum;
    sum.kind = Expr::Kind::Sum;
    sum.kids.push_back(std::move(first));
    for (;;) {
      if (accept(Token::T::Plus)) {
        sum.kids.push_back(parse_term());
        continue;
      }
      if (accept(Token::T::Minus)) {
        Expr n;
        n.kind = Expr::Kind::Neg;
        n.kids.push_back(parse_term());
        sum.kids.push_back(std::move(n));
        continue;
      }
      return sum;
    }
  }
};

}  // namespace exprdetail

inline Expr parse(const std::string& src) {
  exprdetail::Parser p{exprdetail::lex(src)};
  Expr e = p.parse_expr();
  if (p.peek().t != exprdetail::Token::T::End) p.fail("unexpected trailing input");
  return e;
}

// Scalar evaluation into the rational function field. Generator atoms are
// out of domain here; parse-level checks keep them out of divisors, but the
// whole expression may still be non-scalar, so callers gate on
// is_scalar_expr first when a scalar is required.
inline RatFunc eval_scalar(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Atom:
      switch (e.atom) {
        case Expr::AtomTag::Q: return RatFunc::q_pow(1);
        case Expr::AtomTag::Num: return RatFunc::from_gauss(e.value);
        default:
          throw err("NotInDomain", "expected a scalar expression");
      }
    case Expr::Kind::Sum: {
      RatFunc acc = RatFunc::zero();
      for (const Expr& k : e.kids) acc = acc + eval_scalar(k);
      return acc;
    }
    case Expr::Kind::Neg:
      return -eval_scalar(e.kids[0]);
    case Expr::Kind::Prod: {
      RatFunc acc = RatFunc::one();
      for (const Expr& k : e.kids) acc = acc * eval_scalar(k);
      return acc;
    }
    case Expr::Kind::Pow: {
      RatFunc b = eval_scalar(e.kids[0]);
      if (e.exp < 0 && b.is_zero())
        throw err("DivisionByZero", "zero raised to a negative power");
      return b.pow(e.exp);
    }
    case Expr::Kind::Quot: {
      RatFunc d = eval_scalar(e.kids[1]);
      if (d.is_zero()) throw err("DivisionByZero", "division by zero scalar");
      return eval_scalar(e.kids[0]) / d;
    }
  }
  throw err("InternalError", "unhandled expression node");
}

namespace exprdetail {

struct Alg1 {
  using Elem = Element1;
  static Elem unit() { return Element1::unit(); }
  static Elem mul(const Elem& a, const Elem& b) { return multiply1(a, b); }
  static Elem gen(Gen g) { return lmul1(g, Element1::unit()); }
  static Elem omega() { return casimir(); }
};

struct Alg2 {
  using Elem = Element2;
  static Elem unit() { return Element2::unit(); }
  static Elem mul(const Elem& a, const Elem& b) { return multiply2(a, b); }
  static Elem gen(Gen g) { return lmul2(g, Element2::unit()); }
  static Elem omega() { return convert_1to2(casimir()); }
};

template <class A>
typename A::Elem eval_alg(const Expr& e) {
  using Elem = typename A::Elem;
  if (is_scalar_expr(e)) return A::unit().scaled(eval_scalar(e));
  switch (e.kind) {
    case Expr::Kind::Atom:
      return e.atom == Expr::AtomTag::Omega ? A::omega() : A::gen(e.gen);
    case Expr::Kind::Sum: {
      Elem acc;
      for (const Expr& k : e.kids) acc = acc + eval_alg<A>(k);
      return acc;
    }
    case Expr::Kind::Neg:
      return eval_alg<A>(e.kids[0]).scaled(-RatFunc::one());
    case Expr::Kind::Prod: {
      Elem acc = A::unit();
      for (const Expr& k : e.kids) acc = A::mul(acc, eval_alg<A>(k));
      return acc;
    }
    case Expr::Kind::Pow: {
      // Negative powers of non-scalars are rejected at parse time.
      Elem acc = A::unit();
      Elem b = eval_alg<A>(e.kids[0]);
      for (int j = 0; j < e.exp; ++j) acc = A::mul(acc, b);
      return acc;
    }
    case Expr::Kind::Quot: {
      RatFunc d = eval_scalar(e.kids[1]);
      if (d.is_zero()) throw err("DivisionByZero", "division by zero scalar");
      return eval_alg<A>(e.kids[0]).scaled(RatFunc::one() / d);
    }
  }
  throw err("InternalError", "unhandled expression node");
}

}  // namespace exprdetail

inline Element1 eval1(const Expr& e) { return exprdetail::eval_alg<exprdetail::Alg1>(e); }
inline Element2 eval2(const Expr& e) { return exprdetail::eval_alg<exprdetail::Alg2>(e); }

}  // namespace qsl2
