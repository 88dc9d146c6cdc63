#pragma once

// Commutative coefficient rings with exact arithmetic.
//
// A Ring is an immutable descriptor shared through RingPtr; RingElement is a
// value type carrying its ring plus a canonical payload.  Supported kinds:
//   ZMod(n)          residues 0..n-1
//   Product(m1..mk)  tuples, componentwise arithmetic
//   QuotientPoly     (Z/n)[t]/(f) with monic f, canonical reps of degree < deg f
//   Rationals        arbitrary-precision reduced fractions
//   UniPoly          K[t] with K = Rationals or ZMod(p), p prime
//   Residue          base/(ideal) for a finite base; built only by quotient
//                    construction, elements are coset ids with least-index
//                    leaders
//
// Finite kinds are capped at 4096 elements so exhaustive validation stays
// exhaustive.  Enumeration order is mixed-radix counting: the first Product
// factor and the degree-0 coefficient are least significant.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spbw/error.hpp"

namespace spbw {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class RingKind { ZMod, Product, QuotientPoly, Rationals, UniPoly, Residue };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class RingElement {
 public:
  using Payload = std::variant<std::uint64_t, std::vector<std::uint64_t>,
                               Rational, std::vector<RingElement>>;

  const RingPtr& ring() const { return ring_; }
  bool is_zero() const;

  std::uint64_t word() const { return std::get<std::uint64_t>(v_); }
  const std::vector<std::uint64_t>& words() const {
    return std::get<std::vector<std::uint64_t>>(v_);
  }
  const Rational& rat() const { return std::get<Rational>(v_); }
  // UniPoly coefficient list, low degree first, no trailing zeros.
  const std::vector<RingElement>& coeffs() const {
    return std::get<std::vector<RingElement>>(v_);
  }

  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator-() const;

 private:
  friend class Ring;
  RingElement(RingPtr r, Payload v) : ring_(std::move(r)), v_(std::move(v)) {}

  RingPtr ring_;
  Payload v_;
};

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t mod_of_int(const Int& x, std::uint64_t n) {
  Int r = x % Int(n);
  if (r < 0) r += Int(n);
  return r.convert_to<std::uint64_t>();
}

}  // namespace detail

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  static constexpr std::uint64_t kMaxCardinality = 4096;

  static RingPtr zmod(std::uint64_t n) {
    if (n < 2) fail(Errc::BadParams, "ZMod modulus must be >= 2");
    if (n > kMaxCardinality) fail(Errc::CardinalityTooLarge, "ZMod modulus above 4096");
    auto* w = new Ring();
    w->kind_ = RingKind::ZMod;
    w->n_ = n;
    return RingPtr(w);
  }

  static RingPtr product(std::vector<std::uint64_t> moduli) {
    if (moduli.empty()) fail(Errc::BadParams, "Product needs at least one factor");
    std::uint64_t card = 1;
    for (auto m : moduli) {
      if (m < 2) fail(Errc::BadParams, "Product factor must be >= 2");
      if (card > kMaxCardinality / m)
        fail(Errc::CardinalityTooLarge, "Product cardinality above 4096");
      card *= m;
    }
    auto* w = new Ring();
    w->kind_ = RingKind::Product;
    w->moduli_ = std::move(moduli);
    return RingPtr(w);
  }

  // modulus: coefficients of f, low degree first, monic, deg f >= 1.
  static RingPtr quotient_poly(std::uint64_t n, std::vector<std::uint64_t> modulus) {
    if (n < 2) fail(Errc::BadParams, "QuotientPoly base modulus must be >= 2");
    if (modulus.size() < 2) fail(Errc::BadParams, "QuotientPoly modulus must have degree >= 1");
    if (modulus.back() != 1) fail(Errc::BadParams, "QuotientPoly modulus must be monic");
    for (auto c : modulus)
      if (c >= n) fail(Errc::BadParams, "QuotientPoly modulus coefficient out of range");
    std::uint64_t card = 1;
    for (std::size_t i = 0; i + 1 < modulus.size(); ++i) {
      if (card > kMaxCardinality / n)
        fail(Errc::CardinalityTooLarge, "QuotientPoly cardinality above 4096");
      card *= n;
    }
    auto* w = new Ring();
    w->kind_ = RingKind::QuotientPoly;
    w->n_ = n;
    w->modpoly_ = std::move(modulus);
    return RingPtr(w);
  }

  static RingPtr rationals() {
    auto* w = new Ring();
    w->kind_ = RingKind::Rationals;
    return RingPtr(w);
  }

  static RingPtr unipoly(RingPtr base) {
    if (!base) fail(Errc::BadParams, "UniPoly needs a base ring");
    bool ok = base->kind() == RingKind::Rationals ||
              (base->kind() == RingKind::ZMod && detail::is_prime_u64(base->modulus()));
    if (!ok) fail(Errc::BadParams, "UniPoly base must be Rationals or ZMod(p) with p prime");
    auto* w = new Ring();
    w->kind_ = RingKind::UniPoly;
    w->base_ = std::move(base);
    return RingPtr(w);
  }

  // ideal_indices: element indices of an additive subgroup of the finite base
  // closed under multiplication; sorted ascending, must contain 0.
  static RingPtr residue(RingPtr base, std::vector<std::uint64_t> ideal_indices) {
    if (!base || !base->finite()) fail(Errc::NotEnumerable, "Residue base must be finite");
    if (ideal_indices.empty() || ideal_indices.front() != 0)
      fail(Errc::BadParams, "Residue ideal must contain 0");
    std::uint64_t card = *base->cardinality();
    auto* w = new Ring();
    RingPtr r(w);
    w->kind_ = RingKind::Residue;
    w->base_ = base;
    w->ideal_elems_ = std::move(ideal_indices);
    w->coset_of_.assign(card, UINT64_MAX);
    for (std::uint64_t idx = 0; idx < card; ++idx) {
      if (w->coset_of_[idx] != UINT64_MAX) continue;
      std::uint64_t id = w->coset_leader_.size();
      w->coset_leader_.push_back(idx);
      RingElement a = base->element_at(idx);
      for (auto e : w->ideal_elems_) {
        RingElement s = a + base->element_at(e);
        std::uint64_t si = base->index_of(s);
        if (w->coset_of_[si] != UINT64_MAX && w->coset_of_[si] != id)
          fail(Errc::BadParams, "Residue ideal is not an additive subgroup");
        w->coset_of_[si] = id;
      }
    }
    return r;
  }

  RingKind kind() const { return kind_; }
  std::uint64_t modulus() const { return n_; }
  const std::vector<std::uint64_t>& factors() const { return moduli_; }
  const std::vector<std::uint64_t>& modulus_poly() const { return modpoly_; }
  const RingPtr& base() const { return base_; }
  const std::vector<std::uint64_t>& residue_ideal() const { return ideal_elems_; }

  bool finite() const { return cardinality().has_value(); }

  std::optional<std::uint64_t> cardinality() const {
    switch (kind_) {
      case RingKind::ZMod: return n_;
      case RingKind::Product: {
        std::uint64_t c = 1;
        for (auto m : moduli_) c *= m;
        return c;
      }
      case RingKind::QuotientPoly: {
        std::uint64_t c = 1;
        for (std::size_t i = 0; i + 1 < modpoly_.size(); ++i) c *= n_;
        return c;
      }
      case RingKind::Residue: return coset_leader_.size();
      default: return std::nullopt;
    }
  }

  bool same(const Ring& o) const {
    if (this == &o) return true;
    if (kind_ != o.kind_) return false;
    switch (kind_) {
      case RingKind::ZMod: return n_ == o.n_;
      case RingKind::Product: return moduli_ == o.moduli_;
      case RingKind::QuotientPoly: return n_ == o.n_ && modpoly_ == o.modpoly_;
      case RingKind::Rationals: return true;
      case RingKind::UniPoly: return base_->same(*o.base_);
      case RingKind::Residue:
        return base_->same(*o.base_) && ideal_elems_ == o.ideal_elems_;
    }
    return false;
  }

  std::string describe() const {
    switch (kind_) {
      case RingKind::ZMod: return "Z/" + std::to_string(n_);
      case RingKind::Product: {
        std::string s;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
          if (i) s += " x ";
          s += "Z/" + std::to_string(moduli_[i]);
        }
        return s;
      }
      case RingKind::QuotientPoly:
        return "Z/" + std::to_string(n_) + "[t]/(" + poly_text(modpoly_) + ")";
      case RingKind::Rationals: return "Q";
      case RingKind::UniPoly: return base_->describe() + "[t]";
      case RingKind::Residue:
        return "(" + base_->describe() + ")/(ideal of " +
               std::to_string(ideal_elems_.size()) + ")";
    }
    return "?";
  }

  // --- element construction ---

  RingElement zero() const {
    switch (kind_) {
      case RingKind::ZMod: return make(std::uint64_t{0});
      case RingKind::Product: return make(std::vector<std::uint64_t>(moduli_.size(), 0));
      case RingKind::QuotientPoly: return make(std::vector<std::uint64_t>(qp_deg(), 0));
      case RingKind::Rationals: return make(Rational(0));
      case RingKind::UniPoly: return make(std::vector<RingElement>{});
      case RingKind::Residue: return make(std::uint64_t{coset_of_[0]});
    }
    fail(Errc::BadParams, "bad ring kind");
  }

  RingElement one() const { return from_int(1); }

  RingElement from_int(const Int& x) const {
    switch (kind_) {
      case RingKind::ZMod: return make(detail::mod_of_int(x, n_));
      case RingKind::Product: {
        std::vector<std::uint64_t> w(moduli_.size());
        for (std::size_t i = 0; i < moduli_.size(); ++i) w[i] = detail::mod_of_int(x, moduli_[i]);
        return make(std::move(w));
      }
      case RingKind::QuotientPoly: {
        std::vector<std::uint64_t> w(qp_deg(), 0);
        w[0] = detail::mod_of_int(x, n_);
        return make(std::move(w));
      }
      case RingKind::Rationals: return make(Rational(x));
      case RingKind::UniPoly: {
        RingElement c = base_->from_int(x);
        std::vector<RingElement> w;
        if (!c.is_zero()) w.push_back(c);
        return make(std::move(w));
      }
      case RingKind::Residue: return project(base_->from_int(x));
    }
    fail(Errc::BadParams, "bad ring kind");
  }

  RingElement from_rational(const Rational& q) const {
    if (kind_ == RingKind::Rationals) return make(Rational(q));
    if (kind_ == RingKind::UniPoly && base_->kind() == RingKind::Rationals) {
      std::vector<RingElement> w;
      if (q != 0) w.push_back(base_->from_rational(q));
      return make(std::move(w));
    }
    fail(Errc::BadCoefficientForRing, "fractions only exist over the rationals");
  }

  // The residue class / indeterminate t (UniPoly and QuotientPoly).
  RingElement t_gen() const {
    if (kind_ == RingKind::UniPoly)
      return make(std::vector<RingElement>{base_->zero(), base_->one()});
    if (kind_ == RingKind::QuotientPoly) {
      std::vector<std::uint64_t> raw{0, 1};
      return make(qp_reduce(std::move(raw)));
    }
    fail(Errc::BadCoefficientForRing, "ring has no t generator");
  }

  RingElement tuple(const std::vector<Int>& parts) const {
    if (kind_ != RingKind::Product)
      fail(Errc::BadCoefficientForRing, "tuple literal outside a product ring");
    if (parts.size() != moduli_.size())
      fail(Errc::BadCoefficientForRing, "tuple arity does not match product ring");
    std::vector<std::uint64_t> w(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) w[i] = detail::mod_of_int(parts[i], moduli_[i]);
    return make(std::move(w));
  }

  // UniPoly element from base coefficients, low degree first.
  RingElement unipoly_from(std::vector<RingElement> cs) const {
    if (kind_ != RingKind::UniPoly) fail(Errc::BadParams, "not a UniPoly ring");
    for (const auto& c : cs)
      if (!c.ring()->same(*base_)) fail(Errc::MismatchedRing, "UniPoly coefficient from wrong ring");
    while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
    return make(std::move(cs));
  }

  // QuotientPoly element from arbitrary-length coefficients, low degree first.
  RingElement qp_from(std::vector<std::uint64_t> cs) const {
    if (kind_ != RingKind::QuotientPoly) fail(Errc::BadParams, "not a QuotientPoly ring");
    for (auto& c : cs) c %= n_;
    return make(qp_reduce(std::move(cs)));
  }

  // --- arithmetic ---

  RingElement add(const RingElement& a, const RingElement& b) const { return arith(a, b, Op::Add); }
  RingElement sub(const RingElement& a, const RingElement& b) const { return arith(a, b, Op::Sub); }
  RingElement mul(const RingElement& a, const RingElement& b) const { return arith(a, b, Op::Mul); }

  RingElement neg(const RingElement& a) const {
    check_mine(a);
    switch (kind_) {
      case RingKind::ZMod: return make((n_ - a.word()) % n_);
      case RingKind::Product: {
        std::vector<std::uint64_t> w(moduli_.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = (moduli_[i] - a.words()[i]) % moduli_[i];
        return make(std::move(w));
      }
      case RingKind::QuotientPoly: {
        std::vector<std::uint64_t> w(qp_deg());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = (n_ - a.words()[i]) % n_;
        return make(std::move(w));
      }
      case RingKind::Rationals: return make(Rational(-a.rat()));
      case RingKind::UniPoly: {
        std::vector<RingElement> w;
        w.reserve(a.coeffs().size());
        for (const auto& c : a.coeffs()) w.push_back(-c);
        return make(std::move(w));
      }
      case RingKind::Residue: return project(-lift(a));
    }
    fail(Errc::BadParams, "bad ring kind");
  }

  bool invertible(const RingElement& a) const {
    check_mine(a);
    switch (kind_) {
      case RingKind::Rationals: return !a.is_zero();
      case RingKind::UniPoly:
        return a.coeffs().size() == 1 && base_->invertible(a.coeffs()[0]);
      default: {
        RingElement e = one();
        for (std::uint64_t i = 0; i < *cardinality(); ++i)
          if (mul(a, element_at(i)) == e) return true;
        return false;
      }
    }
  }

  std::optional<RingElement> inverse(const RingElement& a) const {
    check_mine(a);
    switch (kind_) {
      case RingKind::Rationals:
        if (a.is_zero()) return std::nullopt;
        return make(Rational(1 / a.rat()));
      case RingKind::UniPoly: {
        if (a.coeffs().size() != 1) return std::nullopt;
        auto inv = base_->inverse(a.coeffs()[0]);
        if (!inv) return std::nullopt;
        return make(std::vector<RingElement>{*inv});
      }
      default: {
        RingElement e = one();
        for (std::uint64_t i = 0; i < *cardinality(); ++i) {
          RingElement b = element_at(i);
          if (mul(a, b) == e) return b;
        }
        return std::nullopt;
      }
    }
  }

  // a is regular when a*b = 0 forces b = 0.
  bool regular(const RingElement& a) const {
    check_mine(a);
    if (!finite()) return !a.is_zero();
    if (a.is_zero()) return false;
    for (std::uint64_t i = 1; i < *cardinality(); ++i)
      if (mul(a, element_at(i)).is_zero()) return false;
    return true;
  }

  bool is_domain() const {
    switch (kind_) {
      case RingKind::Rationals:
      case RingKind::UniPoly:
        return true;
      case RingKind::ZMod: return detail::is_prime_u64(n_);
      case RingKind::Product:
        return moduli_.size() == 1 && detail::is_prime_u64(moduli_[0]);
      default: {
        std::uint64_t c = *cardinality();
        for (std::uint64_t i = 1; i < c; ++i)
          for (std::uint64_t j = i; j < c; ++j)
            if (mul(element_at(i), element_at(j)).is_zero()) return false;
        return true;
      }
    }
  }

  // --- enumeration ---

  std::uint64_t index_of(const RingElement& a) const {
    check_mine(a);
    switch (kind_) {
      case RingKind::ZMod: return a.word();
      case RingKind::Product: {
        std::uint64_t idx = 0, stride = 1;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
          idx += a.words()[i] * stride;
          stride *= moduli_[i];
        }
        return idx;
      }
      case RingKind::QuotientPoly: {
        std::uint64_t idx = 0, stride = 1;
        for (std::size_t i = 0; i < qp_deg(); ++i) {
          idx += a.words()[i] * stride;
          stride *= n_;
        }
        return idx;
      }
      case RingKind::Residue: return a.word();
      default: fail(Errc::NotEnumerable, describe() + " is infinite");
    }
  }

  RingElement element_at(std::uint64_t idx) const {
    auto card = cardinality();
    if (!card) fail(Errc::NotEnumerable, describe() + " is infinite");
    if (idx >= *card) fail(Errc::BadIndex, "element index out of range");
    switch (kind_) {
      case RingKind::ZMod: return make(idx);
      case RingKind::Product: {
        std::vector<std::uint64_t> w(moduli_.size());
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
          w[i] = idx % moduli_[i];
          idx /= moduli_[i];
        }
        return make(std::move(w));
      }
      case RingKind::QuotientPoly: {
        std::vector<std::uint64_t> w(qp_deg());
        for (std::size_t i = 0; i < qp_deg(); ++i) {
          w[i] = idx % n_;
          idx /= n_;
        }
        return make(std::move(w));
      }
      case RingKind::Residue: return make(idx);
      default: fail(Errc::NotEnumerable, describe() + " is infinite");
    }
  }

  std::vector<RingElement> enumerate() const {
    auto card = cardinality();
    if (!card) fail(Errc::NotEnumerable, describe() + " is infinite");
    std::vector<RingElement> out;
    out.reserve(*card);
    for (std::uint64_t i = 0; i < *card; ++i) out.push_back(element_at(i));
    return out;
  }

  // --- Residue projections ---

  RingElement project(const RingElement& base_elem) const {
    if (kind_ != RingKind::Residue) fail(Errc::BadParams, "not a residue ring");
    return make(std::uint64_t{coset_of_[base_->index_of(base_elem)]});
  }

  RingElement lift(const RingElement& a) const {
    if (kind_ != RingKind::Residue) fail(Errc::BadParams, "not a residue ring");
    check_mine(a);
    return base_->element_at(coset_leader_[a.word()]);
  }

  // --- formatting (canonical, re-parseable element literals) ---

  std::string format(const RingElement& a) const {
    check_mine(a);
    switch (kind_) {
      case RingKind::ZMod: return std::to_string(a.word());
      case RingKind::Product: {
        std::string s = "[";
        for (std::size_t i = 0; i < a.words().size(); ++i) {
          if (i) s += ",";
          s += std::to_string(a.words()[i]);
        }
        return s + "]";
      }
      case RingKind::QuotientPoly: return poly_text(a.words());
      case RingKind::Rationals: return a.rat().str();
      case RingKind::UniPoly: return up_text(a.coeffs());
      case RingKind::Residue: return base_->format(lift(a));
    }
    return "?";
  }

  // Split an element into (negative?, magnitude text) for use as the
  // coefficient of a printed term.  The magnitude is either a single
  // '*'-joinable product or a parenthesized sum.
  std::pair<bool, std::string> format_signed(const RingElement& a) const {
    check_mine(a);
    switch (kind_) {
      case RingKind::Rationals: {
        if (a.rat() < 0) return {true, Rational(-a.rat()).str()};
        return {false, a.rat().str()};
      }
      case RingKind::QuotientPoly: {
        std::size_t nt = 0;
        for (auto c : a.words())
          if (c) ++nt;
        if (nt <= 1) return {false, poly_text(a.words())};
        return {false, "(" + poly_text(a.words()) + ")"};
      }
      case RingKind::UniPoly: {
        std::size_t nt = 0;
        for (const auto& c : a.coeffs())
          if (!c.is_zero()) ++nt;
        if (nt == 0) return {false, "0"};
        if (nt == 1) {
          std::size_t k = a.coeffs().size() - 1;
          auto [neg, mag] = base_->format_signed(a.coeffs()[k]);
          return {neg, term_text(mag, k)};
        }
        return {false, "(" + up_text(a.coeffs()) + ")"};
      }
      default:
        return {false, format(a)};
    }
  }

 private:
  Ring() = default;

  enum class Op { Add, Sub, Mul };

  std::size_t qp_deg() const { return modpoly_.size() - 1; }

  void check_mine(const RingElement& a) const {
    if (!a.ring()->same(*this)) fail(Errc::MismatchedRing, "element belongs to a different ring");
  }

  RingElement make(RingElement::Payload v) const {
    return RingElement(shared_from_this(), std::move(v));
  }

  std::vector<std::uint64_t> qp_reduce(std::vector<std::uint64_t> raw) const {
    std::size_t d = qp_deg();
    if (raw.size() < d) raw.resize(d, 0);
    for (std::size_t k = raw.size(); k-- > d;) {
      std::uint64_t c = raw[k] % n_;
      raw[k] = 0;
      if (c == 0) continue;
      for (std::size_t i = 0; i < d; ++i)
        raw[k - d + i] = (raw[k - d + i] + c * (n_ - modpoly_[i])) % n_;
    }
    raw.resize(d);
    return raw;
  }

  RingElement arith(const RingElement& a, const RingElement& b, Op op) const {
    check_mine(a);
    check_mine(b);
    switch (kind_) {
      case RingKind::ZMod: {
        std::uint64_t x = a.word(), y = b.word();
        std::uint64_t r = op == Op::Add   ? (x + y) % n_
                          : op == Op::Sub ? (x + n_ - y) % n_
                                          : (x * y) % n_;
        return make(r);
      }
      case RingKind::Product: {
        std::vector<std::uint64_t> w(moduli_.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
          std::uint64_t m = moduli_[i], x = a.words()[i], y = b.words()[i];
          w[i] = op == Op::Add ? (x + y) % m : op == Op::Sub ? (x + m - y) % m : (x * y) % m;
        }
        return make(std::move(w));
      }
      case RingKind::QuotientPoly: {
        std::size_t d = qp_deg();
        if (op == Op::Mul) {
          std::vector<std::uint64_t> prod(2 * d - 1, 0);
          for (std::size_t i = 0; i < d; ++i) {
            if (a.words()[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j)
              prod[i + j] = (prod[i + j] + a.words()[i] * b.words()[j]) % n_;
          }
          return make(qp_reduce(std::move(prod)));
        }
        std::vector<std::uint64_t> w(d);
        for (std::size_t i = 0; i < d; ++i) {
          std::uint64_t x = a.words()[i], y = b.words()[i];
          w[i] = op == Op::Add ? (x + y) % n_ : (x + n_ - y) % n_;
        }
        return make(std::move(w));
      }
      case RingKind::Rationals: {
        const Rational &x = a.rat(), &y = b.rat();
        Rational r = op == Op::Add ? Rational(x + y)
                     : op == Op::Sub ? Rational(x - y)
                                     : Rational(x * y);
        return make(std::move(r));
      }
      case RingKind::UniPoly: {
        const auto &x = a.coeffs(), &y = b.coeffs();
        std::vector<RingElement> w;
        if (op == Op::Mul) {
          if (x.empty() || y.empty()) return zero();
          w.assign(x.size() + y.size() - 1, base_->zero());
          for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) w[i + j] = w[i + j] + x[i] * y[j];
        } else {
          w.assign(std::max(x.size(), y.size()), base_->zero());
          for (std::size_t i = 0; i < x.size(); ++i) w[i] = x[i];
          for (std::size_t j = 0; j < y.size(); ++j)
            w[j] = op == Op::Add ? w[j] + y[j] : w[j] - y[j];
        }
        while (!w.empty() && w.back().is_zero()) w.pop_back();
        return make(std::move(w));
      }
      case RingKind::Residue: {
        RingElement x = lift(a), y = lift(b);
        RingElement r = op == Op::Add ? x + y : op == Op::Sub ? x - y : x * y;
        return project(r);
      }
    }
    fail(Errc::BadParams, "bad ring kind");
  }

  static std::string term_text(const std::string& coeff, std::size_t k) {
    if (k == 0) return coeff;
    std::string t = k == 1 ? "t" : "t^" + std::to_string(k);
    if (coeff == "1") return t;
    return coeff + "*" + t;
  }

  static std::string poly_text(const std::vector<std::uint64_t>& cs) {
    std::string s;
    for (std::size_t k = cs.size(); k-- > 0;) {
      if (cs[k] == 0) continue;
      if (!s.empty()) s += " + ";
      s += term_text(std::to_string(cs[k]), k);
    }
    return s.empty() ? "0" : s;
  }

  std::string up_text(const std::vector<RingElement>& cs) const {
    std::string s;
    for (std::size_t k = cs.size(); k-- > 0;) {
      if (cs[k].is_zero()) continue;
      auto [neg, mag] = base_->format_signed(cs[k]);
      if (s.empty())
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      s += term_text(mag, k);
    }
    return s.empty() ? "0" : s;
  }

  RingKind kind_ = RingKind::Rationals;
  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> moduli_;
  std::vector<std::uint64_t> modpoly_;
  RingPtr base_;
  // Residue data
  std::vector<std::uint64_t> ideal_elems_;
  std::vector<std::uint64_t> coset_leader_;
  std::vector<std::uint64_t> coset_of_;
};

inline bool RingElement::is_zero() const {
  switch (ring_->kind()) {
    // Residue coset 0 always contains the base element 0, because cosets are
    // discovered in ascending leader order.
    case RingKind::ZMod:
    case RingKind::Residue:
      return word() == 0;
    case RingKind::Product:
    case RingKind::QuotientPoly: {
      for (auto w : words())
        if (w) return false;
      return true;
    }
    case RingKind::Rationals: return rat() == 0;
    case RingKind::UniPoly: return coeffs().empty();
  }
  return false;
}

inline bool RingElement::operator==(const RingElement& o) const {
  if (!ring_->same(*o.ring_)) fail(Errc::MismatchedRing, "comparing elements of different rings");
  return v_ == o.v_;
}

inline RingElement RingElement::operator+(const RingElement& o) const { return ring_->add(*this, o); }
inline RingElement RingElement::operator-(const RingElement& o) const { return ring_->sub(*this, o); }
inline RingElement RingElement::operator*(const RingElement& o) const { return ring_->mul(*this, o); }
inline RingElement RingElement::operator-() const { return ring_->neg(*this); }

// Long division in K[t] for a field base: a = q*b + r with deg r < deg b.
inline std::pair<RingElement, RingElement> unipoly_divmod(const RingElement& a,
                                                          const RingElement& b) {
  const RingPtr& R = a.ring();
  if (R->kind() != RingKind::UniPoly) fail(Errc::BadParams, "divmod needs UniPoly elements");
  if (!R->same(*b.ring())) fail(Errc::MismatchedRing, "divmod across rings");
  if (b.is_zero()) fail(Errc::ZeroInput, "division by the zero polynomial");
  std::vector<RingElement> rem(a.coeffs());
  const auto& divisor = b.coeffs();
  auto lcinv = R->base()->inverse(divisor.back());
  if (!lcinv) fail(Errc::BadParams, "divisor leading coefficient is not invertible");
  std::vector<RingElement> quot;
  if (rem.size() >= divisor.size())
    quot.assign(rem.size() - divisor.size() + 1, R->base()->zero());
  while (rem.size() >= divisor.size() && !rem.empty()) {
    RingElement c = rem.back() * *lcinv;
    std::size_t shift = rem.size() - divisor.size();
    quot[shift] = c;
    for (std::size_t i = 0; i < divisor.size(); ++i)
      rem[shift + i] = rem[shift + i] - c * divisor[i];
    while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
  }
  return {R->unipoly_from(std::move(quot)), R->unipoly_from(std::move(rem))};
}

inline bool unipoly_divides(const RingElement& d, const RingElement& a) {
  if (a.is_zero()) return true;
  if (d.is_zero()) return false;
  return unipoly_divmod(a, d).second.is_zero();
}

}  // namespace spbw
