#pragma once

// Skew polynomials in normal form: a finite sum of terms c * x^alpha with
// left coefficients, stored descending-deglex so the leading term is first.
// Addition and scalar action live here; multiplication needs the relation
// data and lives on ExtensionSpec.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spbw/error.hpp"
#include "spbw/monomial.hpp"
#include "spbw/ring.hpp"

namespace spbw {

class SkewPolynomial {
 public:
  using TermMap = std::map<Exponent, RingElement, DeglexGreater>;

  SkewPolynomial(RingPtr ring, std::uint32_t nvars)
      : ring_(std::move(ring)), nvars_(nvars) {}

  static SkewPolynomial constant(const RingPtr& ring, std::uint32_t nvars,
                                 const RingElement& c) {
    SkewPolynomial p(ring, nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  static SkewPolynomial term(const RingPtr& ring, Exponent alpha, const RingElement& c) {
    SkewPolynomial p(ring, static_cast<std::uint32_t>(alpha.size()));
    p.add_term(std::move(alpha), c);
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  std::uint32_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Merge in c * x^alpha, dropping the monomial if the sum vanishes.
  void add_term(const Exponent& alpha, const RingElement& c) {
    if (alpha.size() != nvars_) fail(Errc::MismatchedArity, "term arity mismatch");
    if (!c.ring()->same(*ring_)) fail(Errc::MismatchedRing, "coefficient from wrong ring");
    if (c.is_zero()) return;
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
      terms_.emplace(alpha, c);
      return;
    }
    RingElement s = it->second + c;
    if (s.is_zero())
      terms_.erase(it);
    else
      it->second = s;
  }

  std::optional<std::uint32_t> degree() const {
    if (terms_.empty()) return std::nullopt;
    return total_degree(terms_.begin()->first);
  }

  const Exponent& leading_monomial() const {
    if (terms_.empty()) fail(Errc::ZeroPolynomial, "zero polynomial has no leading term");
    return terms_.begin()->first;
  }

  const RingElement& leading_coefficient() const {
    if (terms_.empty()) fail(Errc::ZeroPolynomial, "zero polynomial has no leading term");
    return terms_.begin()->second;
  }

  RingElement coefficient(const Exponent& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? ring_->zero() : it->second;
  }

  SkewPolynomial operator+(const SkewPolynomial& o) const {
    check_compatible(o);
    SkewPolynomial r = *this;
    for (const auto& [a, c] : o.terms_) r.add_term(a, c);
    return r;
  }

  SkewPolynomial operator-(const SkewPolynomial& o) const {
    check_compatible(o);
    SkewPolynomial r = *this;
    for (const auto& [a, c] : o.terms_) r.add_term(a, -c);
    return r;
  }

  SkewPolynomial operator-() const {
    SkewPolynomial r(ring_, nvars_);
    for (const auto& [a, c] : terms_) r.terms_.emplace(a, -c);
    return r;
  }

  // Left action of the coefficient ring.
  SkewPolynomial scale_left(const RingElement& r) const {
    SkewPolynomial out(ring_, nvars_);
    for (const auto& [a, c] : terms_) out.add_term(a, r * c);
    return out;
  }

  bool operator==(const SkewPolynomial& o) const {
    if (!ring_->same(*o.ring_) || nvars_ != o.nvars_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
      if (it->first != jt->first || !(it->second == jt->second)) return false;
    return true;
  }
  bool operator!=(const SkewPolynomial& o) const { return !(*this == o); }

 private:
  void check_compatible(const SkewPolynomial& o) const {
    if (!ring_->same(*o.ring_)) fail(Errc::MismatchedRing, "polynomials over different rings");
    if (nvars_ != o.nvars_) fail(Errc::MismatchedArity, "polynomials in different variable counts");
  }

  RingPtr ring_;
  std::uint32_t nvars_;
  TermMap terms_;
};

// Canonical text form: terms in descending deglex, '*' between factors, '^'
// for powers, unit coefficients suppressed, signs folded into the joins.
// parse(format(f)) == f for the expression grammar in parser.hpp.
inline std::string format_polynomial(const SkewPolynomial& f,
                                     const std::vector<std::string>& varnames) {
  if (f.is_zero()) return "0";
  if (varnames.size() != f.nvars()) fail(Errc::MismatchedArity, "variable name count mismatch");
  const RingPtr& R = f.ring();
  std::string out;
  for (const auto& [alpha, c] : f.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += varnames[i];
      if (alpha[i] > 1) mono += "^" + std::to_string(alpha[i]);
    }
    auto [neg, mag] = R->format_signed(c);
    std::string body;
    if (mono.empty())
      body = mag;
    else if (mag == "1")
      body = mono;
    else
      body = mag + "*" + mono;
    if (out.empty())
      out = (neg ? "-" : "") + body;
    else
      out += (neg ? " - " : " + ") + body;
  }
  return out;
}

}  // namespace spbw
