#pragma once

// A skew PBW extension presentation over a commutative coefficient ring:
// variables x_1..x_n, per-variable maps with x_i r = sigma_i(r) x_i +
// delta_i(r), and for i < j a commutation relation
//     x_j x_i = c_{ij} x_i x_j + d0 + sum_k d_k x_k,   c_{ij} != 0.
//
// Multiplication rewrites products to normal form by induction: the
// rightmost generator of a monomial acts on the coefficient first, and
// out-of-order generator pairs are swapped at the leftmost violation.  Every
// recursive call strictly decreases the (total degree, generator index)
// measure because tails have degree <= 1.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "spbw/error.hpp"
#include "spbw/maps.hpp"
#include "spbw/monomial.hpp"
#include "spbw/poly.hpp"
#include "spbw/ring.hpp"

namespace spbw {

struct RelationData {
  RingElement c;
  RingElement d0;
  std::vector<RingElement> d;  // one entry per variable
};

struct ExtensionFlags {
  bool quasi_commutative = false;
  bool derivation_type = false;
  bool endomorphism_type = false;
  bool automorphism_type = false;
  bool bijective = false;
  bool sigma_commutative = false;
};

struct OverlapFailure {
  enum class Kind { SigmaLaw, DeltaLaw, Coefficient, Generator };
  Kind kind;
  std::uint32_t i = 0, j = 0, k = 0;
  std::string detail;
};

struct ConsistencyReport {
  bool maps_ok = true;
  std::vector<OverlapFailure> failures;
  bool ok() const { return maps_ok && failures.empty(); }
};

class ExtensionSpec;

// Iterated presentation of a quasi-commutative extension: one step per
// variable, acting on coefficients by sigma_i and on earlier variables by
// z_i z_j = scalars[j] * z_j z_i.  Carries its own tower multiplication,
// which shares no code with ExtensionSpec::multiply.
class OrePresentation {
 public:
  struct Step {
    EndoMap sigma;
    std::vector<RingElement> scalars;  // scalars[j] = c_{j,i} for j < i
  };

  OrePresentation(RingPtr ring, std::vector<Step> steps)
      : ring_(std::move(ring)), steps_(std::move(steps)) {}

  const std::vector<Step>& steps() const { return steps_; }
  std::uint32_t nvars() const { return static_cast<std::uint32_t>(steps_.size()); }

  SkewPolynomial multiply(const SkewPolynomial& f, const SkewPolynomial& g) const {
    return mul_level(nvars(), f, g);
  }

 private:
  // Multiplication in R[z_1;th_1]...[z_k;th_k]; inputs only use z_1..z_k.
  SkewPolynomial mul_level(std::uint32_t k, const SkewPolynomial& f,
                           const SkewPolynomial& g) const {
    std::uint32_t n = nvars();
    SkewPolynomial out(ring_, n);
    if (f.is_zero() || g.is_zero()) return out;
    if (k == 0) {
      Exponent z(n, 0);
      out.add_term(z, f.coefficient(z) * g.coefficient(z));
      return out;
    }
    std::uint32_t v = k - 1;
    // split f and g along z_v
    std::map<std::uint32_t, SkewPolynomial> fs = split(v, f), gs = split(v, g);
    for (const auto& [a, fa] : fs) {
      for (const auto& [b, gb] : gs) {
        SkewPolynomial moved = gb;
        for (std::uint32_t step = 0; step < a; ++step) moved = theta(v, moved);
        SkewPolynomial piece = mul_level(v, fa, moved);
        for (const auto& [gamma, c] : piece.terms()) {
          Exponent e = gamma;
          e[v] += a + b;
          out.add_term(e, c);
        }
      }
    }
    return out;
  }

  std::map<std::uint32_t, SkewPolynomial> split(std::uint32_t v,
                                                const SkewPolynomial& f) const {
    std::map<std::uint32_t, SkewPolynomial> parts;
    for (const auto& [gamma, c] : f.terms()) {
      Exponent e = gamma;
      std::uint32_t a = e[v];
      e[v] = 0;
      auto [it, fresh] = parts.try_emplace(a, SkewPolynomial(ring_, nvars()));
      it->second.add_term(e, c);
      (void)fresh;
    }
    return parts;
  }

  // th_v applied to an element of the level-v subring: sigma_v on
  // coefficients, z_j -> scalars[j] z_j on earlier variables.
  SkewPolynomial theta(std::uint32_t v, const SkewPolynomial& f) const {
    std::uint32_t n = nvars();
    SkewPolynomial out(ring_, n);
    for (const auto& [gamma, c] : f.terms()) {
      SkewPolynomial acc =
          SkewPolynomial::constant(ring_, n, steps_[v].sigma.apply(c));
      for (std::uint32_t j = 0; j < v; ++j) {
        if (gamma[j] == 0) continue;
        SkewPolynomial factor =
            SkewPolynomial::term(ring_, unit_exponent(n, j), steps_[v].scalars[j]);
        for (std::uint32_t step = 0; step < gamma[j]; ++step)
          acc = mul_level(v, acc, factor);
      }
      out = out + acc;
    }
    return out;
  }

  RingPtr ring_;
  std::vector<Step> steps_;
};

class ExtensionSpec {
 public:
  ExtensionSpec(RingPtr ring, std::vector<std::string> varnames, std::vector<EndoMap> sigma,
                std::vector<DerMap> delta,
                std::map<std::pair<std::uint32_t, std::uint32_t>, RelationData> relations)
      : ring_(std::move(ring)),
        varnames_(std::move(varnames)),
        sigma_(std::move(sigma)),
        delta_(std::move(delta)) {
    n_ = static_cast<std::uint32_t>(varnames_.size());
    if (n_ == 0) fail(Errc::BadParams, "an extension needs at least one variable");
    for (std::size_t i = 0; i < varnames_.size(); ++i)
      for (std::size_t j = i + 1; j < varnames_.size(); ++j)
        if (varnames_[i] == varnames_[j]) fail(Errc::BadParams, "duplicate variable name");
    if (sigma_.size() != n_ || delta_.size() != n_)
      fail(Errc::MismatchedArity, "need one sigma and one delta per variable");
    sigma_bijective_.resize(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      EndoReport er = validate_endomorphism(ring_, sigma_[i]);
      if (!er.is_endo)
        fail(Errc::InvalidMap, "sigma_" + std::to_string(i + 1) + " is not an endomorphism (" +
                                   er.detail + ")");
      if (!er.injective)
        fail(Errc::InvalidMap, "sigma_" + std::to_string(i + 1) + " is not injective");
      sigma_bijective_[i] = er.bijective;
      DerReport dr = validate_sigma_derivation(ring_, sigma_[i], delta_[i]);
      if (!dr.is_sigma_derivation)
        fail(Errc::InvalidMap, "delta_" + std::to_string(i + 1) + " is not a sigma-derivation (" +
                                   dr.detail + ")");
    }
    for (auto& [key, rel] : relations) {
      auto [i, j] = key;
      if (!(i < j && j < n_)) fail(Errc::BadIndex, "relation indices must satisfy i < j <= n");
      check_element(rel.c);
      check_element(rel.d0);
      if (rel.d.size() != n_) fail(Errc::MismatchedArity, "relation tail needs one entry per variable");
      for (const auto& dk : rel.d) check_element(dk);
      if (rel.c.is_zero()) fail(Errc::ZeroConstant, "commutation constant c must be nonzero");
      rel_.emplace(key, rel);
    }
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t j = i + 1; j < n_; ++j)
        if (!rel_.count({i, j}))
          rel_.emplace(std::make_pair(i, j),
                       RelationData{ring_->one(), ring_->zero(),
                                    std::vector<RingElement>(n_, ring_->zero())});
    compute_flags();
  }

  const RingPtr& ring() const { return ring_; }
  std::uint32_t nvars() const { return n_; }
  const std::vector<std::string>& varnames() const { return varnames_; }
  const EndoMap& sigma(std::uint32_t i) const { return sigma_.at(i); }
  const DerMap& delta(std::uint32_t i) const { return delta_.at(i); }
  const std::vector<EndoMap>& sigmas() const { return sigma_; }
  const std::vector<DerMap>& deltas() const { return delta_; }
  const ExtensionFlags& flags() const { return flags_; }
  bool sigma_is_bijective(std::uint32_t i) const { return sigma_bijective_.at(i); }

  const RelationData& relation(std::uint32_t i, std::uint32_t j) const {
    if (!(i < j && j < n_)) fail(Errc::BadIndex, "relation indices must satisfy i < j <= n");
    return rel_.at({i, j});
  }

  // --- polynomial builders ---

  SkewPolynomial zero_poly() const { return SkewPolynomial(ring_, n_); }
  SkewPolynomial one_poly() const { return constant(ring_->one()); }
  SkewPolynomial constant(const RingElement& r) const {
    return SkewPolynomial::constant(ring_, n_, r);
  }
  SkewPolynomial var_poly(std::uint32_t i) const {
    if (i >= n_) fail(Errc::BadIndex, "variable index out of range");
    return SkewPolynomial::term(ring_, unit_exponent(n_, i), ring_->one());
  }
  SkewPolynomial monomial(const Exponent& alpha) const {
    if (alpha.size() != n_) fail(Errc::MismatchedArity, "exponent arity mismatch");
    return SkewPolynomial::term(ring_, alpha, ring_->one());
  }

  // --- normal-form arithmetic ---

  // sigma^alpha = sigma_1^{a1} o ... o sigma_n^{an}, rightmost applied first.
  RingElement sigma_alpha(const Exponent& alpha, const RingElement& r) const {
    if (alpha.size() != n_) fail(Errc::MismatchedArity, "exponent arity mismatch");
    check_element(r);
    RingElement out = r;
    for (std::uint32_t i = n_; i-- > 0;)
      for (std::uint32_t s = 0; s < alpha[i]; ++s) out = sigma_[i].apply(out);
    return out;
  }

  // Normal form of x_i * x^gamma.
  SkewPolynomial reorder_generator(std::uint32_t i, const Exponent& gamma) const {
    if (i >= n_) fail(Errc::BadIndex, "generator index out of range");
    if (gamma.size() != n_) fail(Errc::MismatchedArity, "exponent arity mismatch");
    std::uint32_t j = 0;
    while (j < n_ && gamma[j] == 0) ++j;
    if (j >= i) {
      Exponent out = gamma;
      out[i] += 1;
      return monomial(out);
    }
    Exponent rest = gamma;
    rest[j] -= 1;
    const RelationData& rel = rel_.at({j, i});
    // x_i x_j = c x_j x_i + d0 + sum_k d_k x_k applied to x^rest
    SkewPolynomial res = mul_gen_left(j, reorder_generator(i, rest)).scale_left(rel.c);
    if (!rel.d0.is_zero()) res = res + monomial(rest).scale_left(rel.d0);
    for (std::uint32_t k = 0; k < n_; ++k)
      if (!rel.d[k].is_zero()) res = res + reorder_generator(k, rest).scale_left(rel.d[k]);
    return res;
  }

  // Normal form of x_i * f.
  SkewPolynomial mul_gen_left(std::uint32_t i, const SkewPolynomial& f) const {
    if (i >= n_) fail(Errc::BadIndex, "generator index out of range");
    SkewPolynomial out(ring_, n_);
    for (const auto& [gamma, c] : f.terms()) {
      RingElement sc = sigma_[i].apply(c);
      if (!sc.is_zero()) {
        SkewPolynomial moved = reorder_generator(i, gamma);
        for (const auto& [mu, d] : moved.terms()) out.add_term(mu, sc * d);
      }
      RingElement dc = delta_[i].apply(c);
      if (!dc.is_zero()) out.add_term(gamma, dc);
    }
    return out;
  }

  // Normal form of x^alpha * r for r != 0; the innermost generator acts
  // on the coefficient first.
  SkewPolynomial times_coefficient_on_right(const Exponent& alpha, const RingElement& r) const {
    if (alpha.size() != n_) fail(Errc::MismatchedArity, "exponent arity mismatch");
    check_element(r);
    if (r.is_zero()) fail(Errc::ZeroCoefficient, "coefficient must be nonzero");
    SkewPolynomial p = constant(r);
    for (std::uint32_t i = n_; i-- > 0;)
      for (std::uint32_t s = 0; s < alpha[i]; ++s) p = mul_gen_left(i, p);
    return p;
  }

  SkewPolynomial multiply(const SkewPolynomial& f, const SkewPolynomial& g) const {
    check_poly(f);
    check_poly(g);
    SkewPolynomial out(ring_, n_);
    for (const auto& [alpha, c] : f.terms()) {
      SkewPolynomial h = g;
      for (std::uint32_t i = n_; i-- > 0;)
        for (std::uint32_t s = 0; s < alpha[i]; ++s) h = mul_gen_left(i, h);
      out = out + h.scale_left(c);
    }
    return out;
  }

  SkewPolynomial power(const SkewPolynomial& f, std::uint64_t k) const {
    SkewPolynomial acc = one_poly();
    for (std::uint64_t s = 0; s < k; ++s) acc = multiply(acc, f);
    return acc;
  }

  // Coefficient of x^{alpha+beta} in x^alpha * x^beta.
  RingElement c_alpha_beta(const Exponent& alpha, const Exponent& beta) const {
    SkewPolynomial p = multiply(monomial(alpha), monomial(beta));
    return p.coefficient(exponent_add(alpha, beta));
  }

  // --- structure checks ---

  ConsistencyReport check_pbw_consistency(std::uint64_t seed = 0) const {
    ConsistencyReport rep;
    for (std::uint32_t i = 0; i < n_; ++i) {
      EndoReport er = validate_endomorphism(ring_, sigma_[i]);
      if (!er.is_endo || !er.injective) {
        rep.maps_ok = false;
        rep.failures.push_back({OverlapFailure::Kind::SigmaLaw, i, 0, 0, er.detail});
      }
      DerReport dr = validate_sigma_derivation(ring_, sigma_[i], delta_[i]);
      if (!dr.is_sigma_derivation) {
        rep.maps_ok = false;
        rep.failures.push_back({OverlapFailure::Kind::DeltaLaw, i, 0, 0, dr.detail});
      }
    }
    std::vector<RingElement> tests;
    if (ring_->finite()) {
      tests = ring_->enumerate();
    } else {
      if (ring_->kind() == RingKind::UniPoly) tests.push_back(ring_->t_gen());
      auto extra = detail::sample_elements(ring_, 20, seed ^ 0xc0115157u);
      tests.insert(tests.end(), extra.begin(), extra.end());
    }
    for (std::uint32_t i = 0; i < n_; ++i) {
      for (std::uint32_t j = i + 1; j < n_; ++j) {
        SkewPolynomial relp = relation_poly(i, j);
        for (const auto& r : tests) {
          if (r.is_zero()) continue;
          SkewPolynomial lhs = multiply(relp, constant(r));
          SkewPolynomial rhs = mul_gen_left(j, mul_gen_left(i, constant(r)));
          if (lhs != rhs)
            rep.failures.push_back({OverlapFailure::Kind::Coefficient, i, j, 0,
                                    "on coefficient " + ring_->format(r) + ": left " +
                                        format_polynomial(lhs, varnames_) + ", right " +
                                        format_polynomial(rhs, varnames_)});
        }
        for (std::uint32_t k = j + 1; k < n_; ++k) {
          SkewPolynomial lhs = mul_gen_left(k, relp);
          SkewPolynomial rhs = multiply(relation_poly(j, k), var_poly(i));
          if (lhs != rhs)
            rep.failures.push_back({OverlapFailure::Kind::Generator, i, j, k,
                                    "left " + format_polynomial(lhs, varnames_) + ", right " +
                                        format_polynomial(rhs, varnames_)});
        }
      }
    }
    return rep;
  }

  // Same ring and variables, delta = 0 and zero tails: the associated
  // quasi-commutative extension.
  ExtensionSpec associated_graded() const {
    std::vector<DerMap> zero_deltas;
    for (std::uint32_t i = 0; i < n_; ++i) zero_deltas.push_back(DerMap::zero(ring_));
    std::map<std::pair<std::uint32_t, std::uint32_t>, RelationData> rels;
    for (const auto& [key, rel] : rel_)
      rels.emplace(key, RelationData{rel.c, ring_->zero(),
                                     std::vector<RingElement>(n_, ring_->zero())});
    return ExtensionSpec(ring_, varnames_, sigma_, zero_deltas, std::move(rels));
  }

  OrePresentation iterated_ore_presentation() const {
    if (!flags_.quasi_commutative)
      fail(Errc::NotQuasiCommutative, "iterated presentation needs a quasi-commutative spec");
    std::vector<OrePresentation::Step> steps;
    for (std::uint32_t i = 0; i < n_; ++i) {
      std::vector<RingElement> scalars;
      for (std::uint32_t j = 0; j < i; ++j) scalars.push_back(rel_.at({j, i}).c);
      steps.push_back({sigma_[i], std::move(scalars)});
    }
    return OrePresentation(ring_, std::move(steps));
  }

  // Change of variables z_i = x_i - a_i when every delta_i is the inner
  // derivation r -> a_i r - sigma_i(r) a_i; the result has zero deltas and
  // recomputed tails.
  ExtensionSpec eliminate_inner_derivations(const std::vector<RingElement>& a) const {
    if (a.size() != n_) fail(Errc::MismatchedArity, "need one inner element per variable");
    for (const auto& ai : a) check_element(ai);
    std::vector<RingElement> tests;
    if (ring_->finite()) {
      tests = ring_->enumerate();
    } else {
      if (ring_->kind() == RingKind::UniPoly) tests.push_back(ring_->t_gen());
      auto extra = detail::sample_elements(ring_, 20, 0x1881u);
      tests.insert(tests.end(), extra.begin(), extra.end());
    }
    for (std::uint32_t i = 0; i < n_; ++i)
      for (const auto& r : tests)
        if (!(delta_[i].apply(r) == a[i] * r - sigma_[i].apply(r) * a[i]))
          fail(Errc::NotInner, "delta_" + std::to_string(i + 1) +
                                   " is not inner via the supplied element");
    std::vector<SkewPolynomial> z;
    for (std::uint32_t i = 0; i < n_; ++i)
      z.push_back(var_poly(i) - constant(a[i]));
    std::map<std::pair<std::uint32_t, std::uint32_t>, RelationData> rels;
    for (std::uint32_t i = 0; i < n_; ++i) {
      for (std::uint32_t j = i + 1; j < n_; ++j) {
        const RingElement& c = rel_.at({i, j}).c;
        SkewPolynomial p = multiply(z[j], z[i]) - multiply(z[i], z[j]).scale_left(c);
        if (p.degree().value_or(0) > 1)
          fail(Errc::InvalidMap, "shifted relation is not of degree <= 1");
        // rewrite p = p0 + sum p_k x_k in the z basis: x_k = z_k + a_k
        RingElement d0 = p.coefficient(Exponent(n_, 0));
        std::vector<RingElement> d(n_, ring_->zero());
        for (std::uint32_t k = 0; k < n_; ++k) {
          RingElement pk = p.coefficient(unit_exponent(n_, k));
          d[k] = pk;
          d0 = d0 + pk * a[k];
        }
        rels.emplace(std::make_pair(i, j), RelationData{c, d0, std::move(d)});
      }
    }
    std::vector<DerMap> zero_deltas;
    for (std::uint32_t i = 0; i < n_; ++i) zero_deltas.push_back(DerMap::zero(ring_));
    return ExtensionSpec(ring_, varnames_, sigma_, zero_deltas, std::move(rels));
  }

  // Expand f after substituting x_k -> z_k + a_k, computing products in the
  // target presentation.
  SkewPolynomial expand_shifted(const SkewPolynomial& f, const std::vector<RingElement>& a,
                                const ExtensionSpec& target) const {
    check_poly(f);
    if (a.size() != n_ || target.nvars() != n_)
      fail(Errc::MismatchedArity, "mismatched substitution data");
    SkewPolynomial out = target.zero_poly();
    for (const auto& [gamma, c] : f.terms()) {
      SkewPolynomial piece = target.constant(c);
      for (std::uint32_t k = 0; k < n_; ++k) {
        SkewPolynomial zk = target.var_poly(k) + target.constant(a[k]);
        for (std::uint32_t s = 0; s < gamma[k]; ++s) piece = target.multiply(piece, zk);
      }
      out = out + piece;
    }
    return out;
  }

  SkewPolynomial relation_poly(std::uint32_t i, std::uint32_t j) const {
    const RelationData& rel = relation(i, j);
    SkewPolynomial p = SkewPolynomial::term(ring_, exponent_add(unit_exponent(n_, i),
                                                                unit_exponent(n_, j)),
                                            rel.c);
    if (!rel.d0.is_zero()) p.add_term(Exponent(n_, 0), rel.d0);
    for (std::uint32_t k = 0; k < n_; ++k)
      if (!rel.d[k].is_zero()) p.add_term(unit_exponent(n_, k), rel.d[k]);
    return p;
  }

 private:
  void check_element(const RingElement& r) const {
    if (!r.ring()->same(*ring_)) fail(Errc::MismatchedRing, "element from a different ring");
  }
  void check_poly(const SkewPolynomial& f) const {
    if (!f.ring()->same(*ring_)) fail(Errc::MismatchedRing, "polynomial over a different ring");
    if (f.nvars() != n_) fail(Errc::MismatchedArity, "polynomial in wrong variable count");
  }

  void compute_flags() {
    bool all_id = true, all_zero = true, tails_zero = true, all_bij = true, c_invertible = true;
    for (std::uint32_t i = 0; i < n_; ++i) {
      if (!sigma_[i].is_identity()) all_id = false;
      if (!delta_[i].is_zero_map()) all_zero = false;
      if (!sigma_bijective_[i]) all_bij = false;
    }
    for (const auto& [key, rel] : rel_) {
      if (!rel.d0.is_zero()) tails_zero = false;
      for (const auto& dk : rel.d)
        if (!dk.is_zero()) tails_zero = false;
      if (!ring_->invertible(rel.c)) c_invertible = false;
    }
    flags_.derivation_type = all_id;
    flags_.endomorphism_type = all_zero;
    flags_.quasi_commutative = all_zero && tails_zero;
    flags_.automorphism_type = all_zero && all_bij;
    flags_.bijective = all_bij && c_invertible;
    flags_.sigma_commutative = true;
    std::vector<RingElement> tests;
    if (ring_->finite())
      tests = ring_->enumerate();
    else if (ring_->kind() == RingKind::UniPoly)
      tests.push_back(ring_->t_gen());
    for (std::uint32_t i = 0; i < n_ && flags_.sigma_commutative; ++i)
      for (std::uint32_t j = i + 1; j < n_ && flags_.sigma_commutative; ++j)
        for (const auto& r : tests)
          if (!(sigma_[i].apply(sigma_[j].apply(r)) == sigma_[j].apply(sigma_[i].apply(r)))) {
            flags_.sigma_commutative = false;
            break;
          }
  }

  RingPtr ring_;
  std::vector<std::string> varnames_;
  std::vector<EndoMap> sigma_;
  std::vector<DerMap> delta_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, RelationData> rel_;
  std::uint32_t n_ = 0;
  std::vector<bool> sigma_bijective_;
  ExtensionFlags flags_;
};

inline ExtensionFlags classify_extension(const ExtensionSpec& E) { return E.flags(); }

}  // namespace spbw
