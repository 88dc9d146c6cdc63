#pragma once

// Extension and contraction of coefficient-ring ideals along R -> A, the
// quotient extension A/IA, bounded-degree probes of the annihilator and
// separator criteria, and the theorem-routed primality verdict for the
// extended ideal IA.
//
// Primality of IA itself is never brute-forced (A is infinite); a verdict is
// issued only when one of the three structure theorems applies, and the
// probe exists to hunt for counterexamples, not to certify.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "spbw/error.hpp"
#include "spbw/extension.hpp"
#include "spbw/ideal.hpp"
#include "spbw/monomial.hpp"
#include "spbw/poly.hpp"
#include "spbw/ring.hpp"

namespace spbw {

// f lies in the extended ideal IA iff every coefficient lies in I.
inline bool extended_membership(const ExtensionSpec& E, const FiniteIdeal& I,
                                const SkewPolynomial& f) {
  if (!E.ring()->same(*I.ring()) || !E.ring()->same(*f.ring()))
    fail(Errc::MismatchedRing, "ideal and polynomial must share the extension's ring");
  for (const auto& [alpha, c] : f.terms())
    if (!I.contains(c)) return false;
  return true;
}

// Variant over K[t] with a principal ideal (g).
inline bool extended_membership(const ExtensionSpec& E, const RingElement& g,
                                const SkewPolynomial& f) {
  if (!E.ring()->same(*g.ring()) || !E.ring()->same(*f.ring()))
    fail(Errc::MismatchedRing, "ideal generator and polynomial must share the ring");
  if (g.is_zero()) return f.is_zero();
  for (const auto& [alpha, c] : f.terms())
    if (!unipoly_divides(g, c)) return false;
  return true;
}

// IA cap R = I: exhaustive on constants, plus absorption by the generators
// x_i (which is what invariance buys).
inline bool contract_check(const ExtensionSpec& E, const FiniteIdeal& I) {
  const RingPtr& R = E.ring();
  if (!R->same(*I.ring())) fail(Errc::MismatchedRing, "ideal over a different ring");
  if (!R->finite()) fail(Errc::NotEnumerable, "contraction check needs a finite ring");
  SigmaDeltaSystem S = SigmaDeltaSystem::from_extension(E);
  InvarianceFlags inv = invariance(I, S);
  if (!inv.sigma_invariant || !inv.delta_invariant)
    fail(Errc::NotInvariant, "contraction check needs a (sigma,delta)-invariant ideal");
  for (const auto& r : R->enumerate())
    if (extended_membership(E, I, E.constant(r)) != I.contains(r)) return false;
  for (const auto& x : I.elements()) {
    if (x.is_zero()) continue;
    for (std::uint32_t i = 0; i < E.nvars(); ++i) {
      if (!extended_membership(E, I, E.mul_gen_left(i, E.constant(x)))) return false;
      if (!extended_membership(E, I, E.multiply(E.constant(x), E.var_poly(i)))) return false;
    }
  }
  return true;
}

// The extension over R/I induced by a proper (sigma,delta)-invariant ideal
// with sigma_i(I) = I; relations reduce coefficientwise.
inline ExtensionSpec quotient_extension(const ExtensionSpec& E, const FiniteIdeal& I) {
  const RingPtr& R = E.ring();
  if (!R->same(*I.ring())) fail(Errc::MismatchedRing, "ideal over a different ring");
  if (!I.proper()) fail(Errc::ImproperIdeal, "quotient by the whole ring");
  SigmaDeltaSystem S = SigmaDeltaSystem::from_extension(E);
  InvarianceFlags inv = invariance(I, S);
  if (!inv.sigma_invariant || !inv.delta_invariant)
    fail(Errc::NotInvariant, "quotient extension needs a (sigma,delta)-invariant ideal");
  if (!inv.sigma_stable)
    fail(Errc::NotStable, "quotient extension needs sigma_i(I) = I for every i");
  QuotientSystem qs = quotient_system(R, I, S);
  const RingPtr& Q = qs.quotient;
  std::map<std::pair<std::uint32_t, std::uint32_t>, RelationData> rels;
  for (std::uint32_t i = 0; i < E.nvars(); ++i)
    for (std::uint32_t j = i + 1; j < E.nvars(); ++j) {
      const RelationData& rel = E.relation(i, j);
      std::vector<RingElement> d;
      for (const auto& dk : rel.d) d.push_back(Q->project(dk));
      rels.emplace(std::make_pair(i, j),
                   RelationData{Q->project(rel.c), Q->project(rel.d0), std::move(d)});
    }
  return ExtensionSpec(Q, E.varnames(), qs.induced.sigmas, qs.induced.deltas, std::move(rels));
}

struct CoefficientIdealReport {
  FiniteIdeal ideal;
  bool stable = false;           // one more degree adds nothing
  bool delta_invariant = false;
};

// Ideal of R generated by all coefficients of p*m and m*p over standard
// monomials m of degree <= bound, for derivation-type extensions.
inline CoefficientIdealReport coefficient_ideal(const ExtensionSpec& E,
                                                const std::vector<SkewPolynomial>& K_gens,
                                                std::uint32_t degree_bound) {
  if (!E.flags().derivation_type)
    fail(Errc::NotDerivationType, "coefficient ideal needs a derivation-type extension");
  const RingPtr& R = E.ring();
  if (!R->finite()) fail(Errc::NotEnumerable, "coefficient ideal needs a finite ring");
  auto gather = [&](std::uint32_t bound) {
    std::vector<RingElement> coeffs;
    for (const auto& alpha : bounded_exponents(E.nvars(), bound)) {
      SkewPolynomial m = E.monomial(alpha);
      for (const auto& p : K_gens) {
        SkewPolynomial pm = E.multiply(p, m), mp = E.multiply(m, p);
        for (const auto& [g, c] : pm.terms()) coeffs.push_back(c);
        for (const auto& [g, c] : mp.terms()) coeffs.push_back(c);
      }
    }
    return FiniteIdeal::closure(R, coeffs);
  };
  CoefficientIdealReport rep{gather(degree_bound)};
  rep.stable = gather(degree_bound + 1) == rep.ideal;
  rep.delta_invariant =
      invariance(rep.ideal, SigmaDeltaSystem::from_extension(E)).delta_invariant;
  return rep;
}

inline RingElement delta_alpha(const ExtensionSpec& E, const Exponent& theta,
                               const RingElement& b) {
  if (theta.size() != E.nvars()) fail(Errc::MismatchedArity, "exponent arity mismatch");
  RingElement out = b;
  for (std::uint32_t i = E.nvars(); i-- > 0;)
    for (std::uint32_t s = 0; s < theta[i]; ++s) out = E.delta(i).apply(out);
  return out;
}

struct AnnFormulaReport {
  bool hypotheses_ok = false;
  std::string failed_hypothesis;   // empty when hypotheses_ok
  bool equality = false;           // right annihilator = (ann lc)A at the bound
  bool exhaustive = false;         // full enumeration vs sampled multi-term side
  std::uint64_t candidates_checked = 0;
};

// Probes rann_A(f) = (rann_R(lc f))A on polynomials of degree <= bound.
inline AnnFormulaReport annihilator_formula_check(const ExtensionSpec& E,
                                                  const SkewPolynomial& f,
                                                  std::uint32_t degree_bound,
                                                  std::uint64_t seed = 0) {
  const RingPtr& R = E.ring();
  if (!R->finite()) fail(Errc::NotEnumerable, "annihilator check needs a finite ring");
  AnnFormulaReport rep;
  RingElement lc = f.leading_coefficient();
  Exponent lm = f.leading_monomial();
  for (std::uint32_t i = 0; i < E.nvars(); ++i)
    if (!E.sigma_is_bijective(i)) {
      rep.failed_hypothesis = "sigma bijective";
      return rep;
    }
  FiniteIdeal ann = annihilator(R, FiniteIdeal::closure(R, {lc}));
  for (const auto& r : ann.elements())
    if (!(E.sigma_alpha(lm, r) == r)) {
      rep.failed_hypothesis = "sigma^(lm f) fixes ann(lc f)";
      return rep;
    }
  // minimality of lm(f) among single-term multiples within the bound
  std::vector<Exponent> exps = bounded_exponents(E.nvars(), degree_bound);
  for (const auto& gamma : exps) {
    for (const auto& r : R->enumerate()) {
      if (r.is_zero()) continue;
      SkewPolynomial m = SkewPolynomial::term(R, gamma, r);
      for (const SkewPolynomial& prod : {E.multiply(f, m), E.multiply(m, f)}) {
        if (!prod.is_zero() &&
            deglex_compare(prod.leading_monomial(), lm) == Ordering::Less) {
          rep.failed_hypothesis = "minimal leading monomial";
          return rep;
        }
      }
    }
  }
  rep.hypotheses_ok = true;

  auto rhs_member = [&](const SkewPolynomial& g) {
    for (const auto& [a, c] : g.terms())
      if (!ann.contains(c)) return false;
    return true;
  };
  std::uint64_t card = *R->cardinality();
  std::size_t slots = exps.size();
  double total = 1;
  for (std::size_t s = 0; s < slots; ++s) {
    total *= static_cast<double>(card);
    if (total > 1e6) break;
  }
  rep.equality = true;
  if (total <= 1e6) {
    rep.exhaustive = true;
    std::vector<std::uint64_t> digits(slots, 0);
    bool done = false;
    while (!done) {
      SkewPolynomial g(R, E.nvars());
      for (std::size_t s = 0; s < slots; ++s)
        if (digits[s] != 0) g.add_term(exps[s], R->element_at(digits[s]));
      ++rep.candidates_checked;
      if (E.multiply(f, g).is_zero() != rhs_member(g)) {
        rep.equality = false;
        break;
      }
      std::size_t s = 0;
      while (s < slots && ++digits[s] == card) digits[s++] = 0;
      done = s == slots;
    }
  } else {
    // single terms exhaustively, multi-term candidates sampled
    for (const auto& gamma : exps)
      for (const auto& r : R->enumerate()) {
        if (r.is_zero()) continue;
        SkewPolynomial g = SkewPolynomial::term(R, gamma, r);
        ++rep.candidates_checked;
        if (E.multiply(f, g).is_zero() != rhs_member(g)) {
          rep.equality = false;
          return rep;
        }
      }
    std::mt19937_64 rng(seed ^ 0xa11f0c05u);
    for (std::size_t trial = 0; trial < 500 && rep.equality; ++trial) {
      SkewPolynomial g(R, E.nvars());
      std::size_t nterms = 2 + rng() % 3;
      for (std::size_t k = 0; k < nterms; ++k) {
        const Exponent& gamma = exps[rng() % exps.size()];
        RingElement c = R->element_at(rng() % card);
        if (!c.is_zero()) g.add_term(gamma, c);
      }
      ++rep.candidates_checked;
      if (E.multiply(f, g).is_zero() != rhs_member(g)) rep.equality = false;
    }
  }
  return rep;
}

struct CriterionResult {
  std::optional<Exponent> theta;
  std::optional<RingElement> middle;  // the r realizing the nonzero product
  bool via_sigma = false;             // true: a r sigma^theta(b) != 0; false: delta side
};

// Smallest theta (ascending deglex, |theta| <= bound) with
// a r sigma^theta(b) != 0 or a r delta^theta(b) != 0 for some r.
inline CriterionResult prime_criterion_search(const ExtensionSpec& E, const RingElement& a,
                                              const RingElement& b, std::uint32_t bound) {
  const RingPtr& R = E.ring();
  if (!R->finite()) fail(Errc::NotEnumerable, "criterion search needs a finite ring");
  if (!R->same(*a.ring()) || !R->same(*b.ring()))
    fail(Errc::MismatchedRing, "elements from a different ring");
  if (a.is_zero() || b.is_zero()) fail(Errc::ZeroInput, "criterion needs nonzero elements");
  CriterionResult res;
  for (const auto& theta : bounded_exponents(E.nvars(), bound)) {
    RingElement sb = E.sigma_alpha(theta, b);
    RingElement db = delta_alpha(E, theta, b);
    for (const auto& r : R->enumerate()) {
      if (!(a * r * sb).is_zero()) {
        res.theta = theta;
        res.middle = r;
        res.via_sigma = true;
        return res;
      }
      if (!(a * r * db).is_zero()) {
        res.theta = theta;
        res.middle = r;
        res.via_sigma = false;
        return res;
      }
    }
  }
  return res;
}

enum class TheoremRoute { DerivationType, AutomorphismType, MixedType, None };
enum class Conclusion { PrimeInA, NotPrimeInA, Inconclusive };

inline const char* route_name(TheoremRoute r) {
  switch (r) {
    case TheoremRoute::DerivationType: return "derivation-type";
    case TheoremRoute::AutomorphismType: return "automorphism-type";
    case TheoremRoute::MixedType: return "mixed-type";
    case TheoremRoute::None: return "none";
  }
  return "none";
}

inline const char* conclusion_name(Conclusion c) {
  switch (c) {
    case Conclusion::PrimeInA: return "PrimeInA";
    case Conclusion::NotPrimeInA: return "NotPrimeInA";
    case Conclusion::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

struct HypothesisRecord {
  std::string name;
  bool passed = false;
  std::string evidence;
};

struct Verdict {
  std::string ideal_text;
  TheoremRoute theorem = TheoremRoute::None;
  std::vector<HypothesisRecord> trail;
  Conclusion conclusion = Conclusion::Inconclusive;
  std::optional<std::pair<FiniteIdeal, FiniteIdeal>> witness;
};

// Dispatch: derivation type first (no conditions on R), then automorphism
// type, then the mixed route; anything else is Inconclusive, never a guess.
inline Verdict classify_extended_ideal(const ExtensionSpec& E, const FiniteIdeal& I) {
  const RingPtr& R = E.ring();
  if (!R->same(*I.ring())) fail(Errc::MismatchedRing, "ideal over a different ring");
  if (!I.proper()) fail(Errc::ImproperIdeal, "classification needs a proper ideal");
  Verdict v;
  v.ideal_text = I.describe();
  SigmaDeltaSystem S = SigmaDeltaSystem::from_extension(E);
  InvarianceFlags inv = invariance(I, S);
  const ExtensionFlags& fl = E.flags();

  auto record = [&](std::string name, bool passed, std::string evidence) {
    v.trail.push_back({std::move(name), passed, std::move(evidence)});
    return passed;
  };
  auto conclude = [&](TheoremRoute route, PrimalityMode mode, const char* mode_name) {
    PrimalityResult pr = primality(R, I, S, mode);
    record(std::string(mode_name) + " in R", pr.holds,
           pr.holds ? "exhaustive over the ideal lattice"
                    : "witness " + pr.witness->first.describe() + " * " +
                          pr.witness->second.describe() + " inside " + v.ideal_text);
    v.theorem = route;
    v.conclusion = pr.holds ? Conclusion::PrimeInA : Conclusion::NotPrimeInA;
    v.witness = pr.witness;
  };

  bool route1 = record("extension is derivation type", fl.derivation_type,
                       "every sigma_i is the identity");
  if (route1 && record("ideal is delta-invariant", inv.delta_invariant, "element check")) {
    conclude(TheoremRoute::DerivationType, PrimalityMode::DeltaPrime, "delta-prime");
    return v;
  }
  bool route2 = record("extension is automorphism type with invertible constants",
                       fl.automorphism_type && fl.bijective,
                       "all delta_i = 0, sigma_i bijective, c invertible");
  if (route2) {
    record("coefficient ring is Noetherian", true, "finite ring");
    if (record("ideal is sigma-invariant", inv.sigma_invariant, "element check")) {
      conclude(TheoremRoute::AutomorphismType, PrimalityMode::SigmaPrime, "sigma-prime");
      return v;
    }
  }
  bool route3 = record("extension is bijective", fl.bijective,
                       "sigma_i bijective and constants invertible");
  if (route3) {
    bool semiR = prime_radical(R).is_zero_ideal();
    if (record("coefficient ring is semiprime", semiR, "prime radical is zero") &&
        record("ideal is (sigma,delta)-invariant",
               inv.sigma_invariant && inv.delta_invariant, "element check") &&
        record("ideal is semiprime",
               primality(R, I, S, PrimalityMode::Semiprime).holds, "ideal lattice check")) {
      conclude(TheoremRoute::MixedType, PrimalityMode::SigmaDeltaPrime, "(sigma,delta)-prime");
      return v;
    }
  }
  v.theorem = TheoremRoute::None;
  v.conclusion = Conclusion::Inconclusive;
  return v;
}

// K[t] coefficient rings: no ideal enumeration; report invariance facts for
// the principal ideal (g) and stay Inconclusive.
inline Verdict classify_unipoly_principal(const ExtensionSpec& E, const RingElement& g) {
  const RingPtr& R = E.ring();
  if (R->kind() != RingKind::UniPoly) fail(Errc::BadParams, "expected a univariate ring");
  if (!R->same(*g.ring())) fail(Errc::MismatchedRing, "generator from a different ring");
  if (R->invertible(g)) fail(Errc::ImproperIdeal, "classification needs a proper ideal");
  Verdict v;
  v.ideal_text = g.is_zero() ? "{0}" : "(" + R->format(g) + ")";
  SigmaDeltaSystem S = SigmaDeltaSystem::from_extension(E);
  InvarianceFlags inv = unipoly_principal_invariance(R, g, S);
  v.trail.push_back({"ideal is sigma-invariant", inv.sigma_invariant,
                     "generator divides its sigma images"});
  v.trail.push_back({"ideal is delta-invariant", inv.delta_invariant,
                     "generator divides its delta images"});
  v.trail.push_back({"finite ideal lattice", false, "coefficient ring is infinite"});
  return v;
}

struct ProbeReport {
  std::size_t pairs_tested = 0;
  std::size_t separated = 0;
  std::vector<std::pair<SkewPolynomial, SkewPolynomial>> unseparated;
};

namespace detail {
inline SkewPolynomial random_polynomial(const ExtensionSpec& E, std::mt19937_64& rng,
                                        std::uint32_t degree_bound, std::size_t max_terms) {
  const RingPtr& R = E.ring();
  std::vector<Exponent> exps = bounded_exponents(E.nvars(), degree_bound);
  SkewPolynomial f(R, E.nvars());
  std::size_t nterms = 1 + rng() % max_terms;
  for (std::size_t k = 0; k < nterms; ++k) {
    const Exponent& alpha = exps[rng() % exps.size()];
    RingElement c = R->finite() ? R->element_at(rng() % *R->cardinality())
                                : detail::sample_elements(R, 1, rng())[0];
    if (!c.is_zero()) f.add_term(alpha, c);
  }
  return f;
}
}  // namespace detail

// For random nonzero pairs f,g searches a single-term h with f h g != 0;
// by distributivity a separator exists iff a single-term one does.
inline ProbeReport primality_probe(const ExtensionSpec& E, std::uint32_t degree_bound,
                                   std::size_t samples, std::uint64_t seed = 0) {
  const RingPtr& R = E.ring();
  if (!R->finite()) fail(Errc::NotEnumerable, "the probe needs a finite ring");
  std::mt19937_64 rng(seed ^ 0x5e9a1a70u);
  std::vector<Exponent> exps = bounded_exponents(E.nvars(), degree_bound);
  ProbeReport rep;
  while (rep.pairs_tested < samples) {
    SkewPolynomial f = detail::random_polynomial(E, rng, degree_bound, 3);
    SkewPolynomial g = detail::random_polynomial(E, rng, degree_bound, 3);
    if (f.is_zero() || g.is_zero()) continue;
    ++rep.pairs_tested;
    bool found = false;
    for (const auto& gamma : exps) {
      for (const auto& r : R->enumerate()) {
        if (r.is_zero()) continue;
        SkewPolynomial h = SkewPolynomial::term(R, gamma, r);
        if (!E.multiply(E.multiply(f, h), g).is_zero()) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (found)
      ++rep.separated;
    else
      rep.unseparated.emplace_back(f, g);
  }
  return rep;
}

}  // namespace spbw
