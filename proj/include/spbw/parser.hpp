#pragma once

// Expression language for polynomials and coefficient literals.
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := int | int '/' uint | 't' | '[' int (',' int)* ']'
//           | varname | '(' expr ')'
//
// Products evaluate left to right through the extension's multiplication,
// so written order is preserved.  All diagnostics carry line:column.

#include <cctype>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spbw/error.hpp"
#include "spbw/extension.hpp"
#include "spbw/poly.hpp"
#include "spbw/ring.hpp"

namespace spbw {

namespace detail {

struct Token {
  enum class Kind { Integer, Ident, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  char punct = 0;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) step();
    tok_ = Token{};
    tok_.pos = {line_, col_};
    if (i_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok_.kind = Token::Kind::Integer;
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
        tok_.text += src_[i_];
        step();
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok_.kind = Token::Kind::Ident;
      while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
                                  src_[i_] == '_')) {
        tok_.text += src_[i_];
        step();
      }
      return;
    }
    if (std::string("+-*/^()[],").find(c) != std::string::npos) {
      tok_.kind = Token::Kind::Punct;
      tok_.punct = c;
      step();
      return;
    }
    fail_at(Errc::SyntaxError, std::string("unexpected character '") + c + "'", tok_.pos);
  }

  void step() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  const std::string& src_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

// Recursive descent shared by polynomial and coefficient parsing; when vars
// is empty every identifier except t is unknown.
class ExprParser {
 public:
  ExprParser(const std::string& src, const ExtensionSpec* E, const RingPtr& R)
      : lex_(src), E_(E), R_(R) {}

  SkewPolynomial parse() {
    SkewPolynomial out = expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::End)
      fail_at(Errc::SyntaxError, "unexpected trailing input", t.pos);
    return out;
  }

 private:
  std::uint32_t nvars() const { return E_ ? E_->nvars() : 1; }
  SkewPolynomial constant(const RingElement& r) const {
    return SkewPolynomial::constant(R_, nvars(), r);
  }

  bool at_punct(char c) const {
    return lex_.peek().kind == Token::Kind::Punct && lex_.peek().punct == c;
  }
  Token expect_punct(char c, const char* what) {
    if (!at_punct(c)) fail_at(Errc::SyntaxError, std::string("expected ") + what, lex_.peek().pos);
    return lex_.take();
  }

  SkewPolynomial expr() {
    bool negate = false;
    if (at_punct('-')) {
      lex_.take();
      negate = true;
    }
    SkewPolynomial acc = term();
    if (negate) acc = -acc;
    while (at_punct('+') || at_punct('-')) {
      bool minus = lex_.take().punct == '-';
      SkewPolynomial rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  SkewPolynomial term() {
    SkewPolynomial acc = factor();
    while (at_punct('*')) {
      lex_.take();
      SkewPolynomial rhs = factor();
      acc = E_ ? E_->multiply(acc, rhs) : constant_product(acc, rhs);
    }
    return acc;
  }

  // coefficient-only mode: multiply the constants directly
  SkewPolynomial constant_product(const SkewPolynomial& a, const SkewPolynomial& b) const {
    Exponent z(nvars(), 0);
    return constant(a.coefficient(z) * b.coefficient(z));
  }

  SkewPolynomial factor() {
    SkewPolynomial base = atom();
    if (!at_punct('^')) return base;
    lex_.take();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::Integer)
      fail_at(Errc::SyntaxError, "expected an integer exponent", t.pos);
    std::uint64_t k = parse_uint(lex_.take());
    if (E_) return E_->power(base, k);
    Exponent z(nvars(), 0);
    RingElement acc = R_->one();
    for (std::uint64_t s = 0; s < k; ++s) acc = acc * base.coefficient(z);
    return constant(acc);
  }

  SkewPolynomial atom() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Integer) return number();
    if (t.kind == Token::Kind::Ident) return ident();
    if (at_punct('(')) {
      lex_.take();
      SkewPolynomial inner = expr();
      expect_punct(')', "')'");
      return inner;
    }
    if (at_punct('[')) return tuple();
    fail_at(Errc::SyntaxError, "expected a value", t.pos);
  }

  SkewPolynomial number() {
    Token t = lex_.take();
    Int num(t.text);
    if (!at_punct('/')) return constant(R_->from_int(num));
    Token slash = lex_.take();
    const Token& d = lex_.peek();
    if (d.kind != Token::Kind::Integer)
      fail_at(Errc::SyntaxError, "expected a denominator", d.pos);
    Int den(lex_.take().text);
    if (den == 0) fail_at(Errc::SyntaxError, "zero denominator", d.pos);
    bool rational_ok = R_->kind() == RingKind::Rationals ||
                       (R_->kind() == RingKind::UniPoly &&
                        R_->base()->kind() == RingKind::Rationals);
    if (!rational_ok)
      fail_at(Errc::BadCoefficientForRing, "fractions need rational coefficients", slash.pos);
    return constant(R_->from_rational(Rational(num, den)));
  }

  SkewPolynomial ident() {
    Token t = lex_.take();
    if (E_) {
      const auto& names = E_->varnames();
      for (std::uint32_t i = 0; i < names.size(); ++i)
        if (names[i] == t.text) return E_->var_poly(i);
    }
    if (t.text == "t") {
      if (R_->kind() == RingKind::UniPoly || R_->kind() == RingKind::QuotientPoly)
        return constant(R_->t_gen());
      fail_at(Errc::BadCoefficientForRing, "this ring has no generator t", t.pos);
    }
    fail_at(Errc::UnknownVariable, "unknown variable '" + t.text + "'", t.pos);
  }

  SkewPolynomial tuple() {
    Token open = lex_.take();
    if (R_->kind() != RingKind::Product)
      fail_at(Errc::BadCoefficientForRing, "tuple literals need a product ring", open.pos);
    std::vector<Int> parts;
    while (true) {
      bool neg = false;
      if (at_punct('-')) {
        lex_.take();
        neg = true;
      }
      const Token& t = lex_.peek();
      if (t.kind != Token::Kind::Integer)
        fail_at(Errc::SyntaxError, "expected an integer tuple entry", t.pos);
      Int v(lex_.take().text);
      parts.push_back(neg ? -v : v);
      if (at_punct(',')) {
        lex_.take();
        continue;
      }
      break;
    }
    Token close = expect_punct(']', "']'");
    if (parts.size() != R_->factors().size())
      fail_at(Errc::BadCoefficientForRing, "tuple arity does not match the product ring",
              close.pos);
    return constant(R_->tuple(parts));
  }

  std::uint64_t parse_uint(const Token& t) {
    std::uint64_t v = 0;
    for (char c : t.text) {
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v > 1u << 20) fail_at(Errc::SyntaxError, "exponent too large", t.pos);
    }
    return v;
  }

  Lexer lex_;
  const ExtensionSpec* E_;
  RingPtr R_;
};

}  // namespace detail

inline SkewPolynomial parse_expression(const std::string& src, const ExtensionSpec& E) {
  return detail::ExprParser(src, &E, E.ring()).parse();
}

// Coefficient literals: the same grammar without variables, evaluated in R.
inline RingElement parse_element(const std::string& src, const RingPtr& R) {
  SkewPolynomial p = detail::ExprParser(src, nullptr, R).parse();
  return p.coefficient(Exponent(1, 0));
}

}  // namespace spbw
