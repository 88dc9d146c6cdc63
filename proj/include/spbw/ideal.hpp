#pragma once

// Ideal lattice of a finite commutative coefficient ring, invariance under a
// system of endomorphisms and skew derivations, primality in five flavours,
// the descending chain I_0 >= I_1 >= ... built from composite delta/sigma
// maps, and quotient rings with the induced system.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spbw/error.hpp"
#include "spbw/extension.hpp"
#include "spbw/maps.hpp"
#include "spbw/ring.hpp"

namespace spbw {

class FiniteIdeal {
 public:
  static FiniteIdeal closure(const RingPtr& R, const std::vector<RingElement>& gens) {
    require_finite(R);
    for (const auto& g : gens)
      if (!g.ring()->same(*R)) fail(Errc::MismatchedRing, "generator from a different ring");
    std::uint64_t card = *R->cardinality();
    std::vector<bool> member(card, false);
    std::vector<std::uint64_t> work;
    auto push = [&](std::uint64_t idx) {
      if (!member[idx]) {
        member[idx] = true;
        work.push_back(idx);
      }
    };
    push(R->index_of(R->zero()));
    for (const auto& g : gens) push(R->index_of(g));
    std::vector<RingElement> all = R->enumerate();
    for (std::size_t head = 0; head < work.size(); ++head) {
      RingElement x = R->element_at(work[head]);
      for (const auto& r : all) push(R->index_of(r * x));
      for (std::uint64_t idx = 0; idx < card; ++idx)
        if (member[idx]) push(R->index_of(R->element_at(idx) + x));
    }
    FiniteIdeal I(R, std::move(member));
    I.gens_ = gens;
    return I;
  }

  static FiniteIdeal zero_ideal(const RingPtr& R) { return closure(R, {}); }
  static FiniteIdeal whole_ring(const RingPtr& R) { return closure(R, {R->one()}); }

  // Wraps an element set that is already expected to be an ideal; the
  // closure invariants are re-verified.
  static FiniteIdeal from_members(const RingPtr& R, const std::vector<std::uint64_t>& indices) {
    require_finite(R);
    std::uint64_t card = *R->cardinality();
    std::vector<bool> member(card, false);
    for (auto idx : indices) {
      if (idx >= card) fail(Errc::BadIndex, "element index out of range");
      member[idx] = true;
    }
    if (!member[R->index_of(R->zero())]) fail(Errc::BadParams, "ideal must contain 0");
    for (std::uint64_t a = 0; a < card; ++a) {
      if (!member[a]) continue;
      RingElement x = R->element_at(a);
      for (std::uint64_t b = 0; b < card; ++b) {
        RingElement y = R->element_at(b);
        if (member[b] && !member[R->index_of(x + y)])
          fail(Errc::BadParams, "element set is not closed under addition");
        if (!member[R->index_of(y * x)])
          fail(Errc::BadParams, "element set is not closed under ring multiples");
      }
    }
    return FiniteIdeal(R, std::move(member));
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<std::uint64_t>& indices() const { return idx_; }
  const std::vector<RingElement>& generators() const { return gens_; }
  std::size_t size() const { return idx_.size(); }

  bool contains_index(std::uint64_t idx) const { return idx < member_.size() && member_[idx]; }
  bool contains(const RingElement& r) const {
    if (!r.ring()->same(*ring_)) fail(Errc::MismatchedRing, "element from a different ring");
    return member_[ring_->index_of(r)];
  }

  std::vector<RingElement> elements() const {
    std::vector<RingElement> out;
    out.reserve(idx_.size());
    for (auto i : idx_) out.push_back(ring_->element_at(i));
    return out;
  }

  bool is_zero_ideal() const { return idx_.size() == 1; }
  bool is_whole_ring() const { return idx_.size() == member_.size(); }
  bool proper() const { return !is_whole_ring(); }

  bool subset_of(const FiniteIdeal& o) const {
    check_same(o);
    for (auto i : idx_)
      if (!o.member_[i]) return false;
    return true;
  }

  bool operator==(const FiniteIdeal& o) const { return ring_->same(*o.ring_) && idx_ == o.idx_; }
  bool operator!=(const FiniteIdeal& o) const { return !(*this == o); }

  // Order by (cardinality, element index list); total on ideals of one ring.
  bool operator<(const FiniteIdeal& o) const {
    if (idx_.size() != o.idx_.size()) return idx_.size() < o.idx_.size();
    return idx_ < o.idx_;
  }

  // Greedy minimal generating list, deterministic in enumeration order.
  std::vector<RingElement> minimal_generators() const {
    std::vector<RingElement> gens;
    FiniteIdeal cur = zero_ideal(ring_);
    for (auto i : idx_) {
      if (cur.member_[i]) continue;
      gens.push_back(ring_->element_at(i));
      cur = closure(ring_, gens);
      if (cur.idx_ == idx_) break;
    }
    return gens;
  }

  std::string describe() const {
    if (is_zero_ideal()) return "{0}";
    if (is_whole_ring()) return "R";
    std::string s = "(";
    bool first = true;
    for (const auto& g : minimal_generators()) {
      if (!first) s += ", ";
      s += ring_->format(g);
      first = false;
    }
    return s + ")";
  }

 private:
  FiniteIdeal(RingPtr R, std::vector<bool> member)
      : ring_(std::move(R)), member_(std::move(member)) {
    for (std::uint64_t i = 0; i < member_.size(); ++i)
      if (member_[i]) idx_.push_back(i);
  }

  static void require_finite(const RingPtr& R) {
    if (!R || !R->finite()) fail(Errc::NotEnumerable, "ideal machinery needs a finite ring");
  }
  void check_same(const FiniteIdeal& o) const {
    if (!ring_->same(*o.ring_)) fail(Errc::MismatchedRing, "ideals over different rings");
  }

  RingPtr ring_;
  std::vector<bool> member_;
  std::vector<std::uint64_t> idx_;
  std::vector<RingElement> gens_;
};

inline FiniteIdeal ideal_closure(const RingPtr& R, const std::vector<RingElement>& gens) {
  return FiniteIdeal::closure(R, gens);
}

enum class IdealOp { Sum, Product, Intersection };

inline FiniteIdeal ideal_combine(const FiniteIdeal& I, const FiniteIdeal& J, IdealOp op) {
  if (!I.ring()->same(*J.ring())) fail(Errc::MismatchedRing, "ideals over different rings");
  const RingPtr& R = I.ring();
  switch (op) {
    case IdealOp::Sum: {
      if (I.subset_of(J)) return J;
      if (J.subset_of(I)) return I;
      std::set<std::uint64_t> out;
      for (const auto& a : I.elements())
        for (const auto& b : J.elements()) out.insert(R->index_of(a + b));
      return FiniteIdeal::from_members(R, {out.begin(), out.end()});
    }
    case IdealOp::Product: {
      std::vector<RingElement> gens;
      for (const auto& a : I.elements())
        for (const auto& b : J.elements()) gens.push_back(a * b);
      return FiniteIdeal::closure(R, gens);
    }
    case IdealOp::Intersection: {
      std::vector<std::uint64_t> out;
      for (auto i : I.indices())
        if (J.contains_index(i)) out.push_back(i);
      return FiniteIdeal::from_members(R, out);
    }
  }
  fail(Errc::BadParams, "unknown ideal operation");
}

inline std::vector<FiniteIdeal> enumerate_ideals(const RingPtr& R) {
  if (!R || !R->finite()) fail(Errc::NotEnumerable, "ideal enumeration needs a finite ring");
  std::set<FiniteIdeal> found;
  for (const auto& a : R->enumerate()) found.insert(FiniteIdeal::closure(R, {a}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<FiniteIdeal> cur(found.begin(), found.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (found.insert(ideal_combine(cur[i], cur[j], IdealOp::Sum)).second) grew = true;
  }
  return {found.begin(), found.end()};
}

inline FiniteIdeal annihilator(const RingPtr& R, const FiniteIdeal& I) {
  if (!R->same(*I.ring())) fail(Errc::MismatchedRing, "ideal over a different ring");
  std::vector<std::uint64_t> out;
  RingElement z = R->zero();
  std::vector<RingElement> elems = I.elements();
  for (const auto& a : R->enumerate()) {
    bool kills = true;
    for (const auto& x : elems)
      if (!(a * x == z)) {
        kills = false;
        break;
      }
    if (kills) out.push_back(R->index_of(a));
  }
  return FiniteIdeal::from_members(R, out);
}

// A system of validated endomorphisms and matching skew derivations; arity
// is independent of any extension's variable count.
struct SigmaDeltaSystem {
  RingPtr ring;
  std::vector<EndoMap> sigmas;
  std::vector<DerMap> deltas;

  static SigmaDeltaSystem make(RingPtr R, std::vector<EndoMap> sigmas, std::vector<DerMap> deltas) {
    if (sigmas.size() != deltas.size())
      fail(Errc::MismatchedArity, "system needs matching sigma/delta counts");
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
      EndoReport er = validate_endomorphism(R, sigmas[i]);
      if (!er.is_endo)
        fail(Errc::InvalidMap, "system map " + std::to_string(i + 1) +
                                   " is not an endomorphism (" + er.detail + ")");
      DerReport dr = validate_sigma_derivation(R, sigmas[i], deltas[i]);
      if (!dr.is_sigma_derivation)
        fail(Errc::InvalidMap, "system map " + std::to_string(i + 1) +
                                   " is not a sigma-derivation (" + dr.detail + ")");
    }
    return SigmaDeltaSystem{std::move(R), std::move(sigmas), std::move(deltas)};
  }

  static SigmaDeltaSystem trivial(const RingPtr& R) {
    return SigmaDeltaSystem{R, {EndoMap::identity(R)}, {DerMap::zero(R)}};
  }

  static SigmaDeltaSystem from_extension(const ExtensionSpec& E) {
    return SigmaDeltaSystem{E.ring(), E.sigmas(), E.deltas()};
  }

  std::size_t arity() const { return sigmas.size(); }
};

struct InvarianceFlags {
  bool sigma_invariant = false;
  bool delta_invariant = false;
  bool sigma_stable = false;  // sigma_i(I) = I for every i
};

inline InvarianceFlags invariance(const FiniteIdeal& I, const SigmaDeltaSystem& S) {
  if (!I.ring()->same(*S.ring)) fail(Errc::MismatchedRing, "system over a different ring");
  InvarianceFlags f;
  f.sigma_invariant = true;
  f.delta_invariant = true;
  f.sigma_stable = true;
  std::vector<RingElement> elems = I.elements();
  for (const auto& s : S.sigmas) {
    std::set<std::uint64_t> image;
    for (const auto& x : elems) {
      RingElement y = s.apply(x);
      if (!I.contains(y)) f.sigma_invariant = false;
      image.insert(I.ring()->index_of(y));
    }
    if (image.size() != elems.size() ||
        !std::all_of(image.begin(), image.end(),
                     [&](std::uint64_t i) { return I.contains_index(i); }))
      f.sigma_stable = false;
  }
  for (const auto& d : S.deltas)
    for (const auto& x : elems)
      if (!I.contains(d.apply(x))) f.delta_invariant = false;
  return f;
}

enum class PrimalityMode { Prime, Semiprime, SigmaPrime, DeltaPrime, SigmaDeltaPrime };

struct PrimalityResult {
  bool holds = false;
  std::optional<std::pair<FiniteIdeal, FiniteIdeal>> witness;
};

inline PrimalityResult primality(const RingPtr& R, const FiniteIdeal& I,
                                 const SigmaDeltaSystem& S, PrimalityMode mode) {
  if (!R->finite()) fail(Errc::NotEnumerable, "primality tests need a finite ring");
  if (!R->same(*I.ring())) fail(Errc::MismatchedRing, "ideal over a different ring");
  if (!I.proper()) fail(Errc::ImproperIdeal, "primality is defined for proper ideals");
  InvarianceFlags inv = invariance(I, S);
  if ((mode == PrimalityMode::SigmaPrime || mode == PrimalityMode::SigmaDeltaPrime) &&
      !inv.sigma_invariant)
    fail(Errc::NotSigmaInvariant, "ideal is not sigma-invariant");
  if ((mode == PrimalityMode::DeltaPrime || mode == PrimalityMode::SigmaDeltaPrime) &&
      !inv.delta_invariant)
    fail(Errc::NotInvariant, "ideal is not delta-invariant");

  std::vector<FiniteIdeal> candidates;
  for (const auto& K : enumerate_ideals(R)) {
    InvarianceFlags kf = invariance(K, S);
    bool keep = true;
    if (mode == PrimalityMode::SigmaPrime) keep = kf.sigma_invariant;
    if (mode == PrimalityMode::DeltaPrime) keep = kf.delta_invariant;
    if (mode == PrimalityMode::SigmaDeltaPrime) keep = kf.sigma_invariant && kf.delta_invariant;
    if (keep) candidates.push_back(K);
  }
  PrimalityResult res;
  res.holds = true;
  for (const auto& K : candidates) {
    if (K.subset_of(I)) continue;
    for (const auto& L : candidates) {
      if (mode == PrimalityMode::Semiprime && !(K == L)) continue;
      if (L.subset_of(I)) continue;
      if (ideal_combine(K, L, IdealOp::Product).subset_of(I)) {
        res.holds = false;
        res.witness = std::make_pair(K, L);
        return res;
      }
    }
  }
  return res;
}

inline FiniteIdeal prime_radical(const RingPtr& R) {
  if (!R->finite()) fail(Errc::NotEnumerable, "prime radical needs a finite ring");
  SigmaDeltaSystem triv = SigmaDeltaSystem::trivial(R);
  FiniteIdeal acc = FiniteIdeal::whole_ring(R);
  bool any = false;
  for (const auto& I : enumerate_ideals(R)) {
    if (!I.proper()) continue;
    if (primality(R, I, triv, PrimalityMode::Prime).holds) {
      acc = ideal_combine(acc, I, IdealOp::Intersection);
      any = true;
    }
  }
  if (!any) fail(Errc::BadParams, "ring has no proper prime ideals");
  return acc;
}

// Elements whose residue mod I is a non-zero-divisor in R/I.
inline std::vector<RingElement> regular_set(const RingPtr& R, const FiniteIdeal& I) {
  if (!R->finite()) fail(Errc::NotEnumerable, "regular set needs a finite ring");
  if (!R->same(*I.ring())) fail(Errc::MismatchedRing, "ideal over a different ring");
  if (!I.proper()) fail(Errc::ImproperIdeal, "regular set is defined mod a proper ideal");
  std::vector<RingElement> out;
  for (const auto& a : R->enumerate()) {
    bool regular = true;
    for (const auto& x : R->enumerate())
      if (I.contains(a * x) && !I.contains(x)) {
        regular = false;
        break;
      }
    if (regular) out.push_back(a);
  }
  return out;
}

// The monoid generated by the maps under composition, identity included.
inline std::vector<EndoMap> sigma_monoid_closure(const RingPtr& R,
                                                 const std::vector<EndoMap>& sigmas) {
  if (!R->finite()) fail(Errc::NotEnumerable, "map monoid needs a finite ring");
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<std::vector<std::uint64_t>> work;
  std::vector<std::vector<std::uint64_t>> gens;
  for (const auto& s : sigmas) gens.push_back(s.index_table());
  std::uint64_t card = *R->cardinality();
  std::vector<std::uint64_t> id(card);
  for (std::uint64_t i = 0; i < card; ++i) id[i] = i;
  seen.insert(id);
  work.push_back(id);
  for (std::size_t head = 0; head < work.size(); ++head) {
    std::vector<std::uint64_t> cur = work[head];
    for (const auto& g : gens) {
      std::vector<std::uint64_t> comp(card);
      for (std::uint64_t i = 0; i < card; ++i) comp[i] = g[cur[i]];
      if (seen.insert(comp).second) work.push_back(comp);
    }
  }
  std::vector<EndoMap> out;
  for (const auto& t : seen) out.push_back(EndoMap::table_indices(R, t));
  return out;
}

struct IdealChain {
  // levels[0] = R, levels[1] = I, descending.
  std::vector<FiniteIdeal> levels;
};

// levels[j] = {r in I : every composite (delta . monoid-map) chain of length
// <= j-1 keeps r inside I}.  The infinite family of sigma words collapses to
// the finite monoid closure.
inline IdealChain ideal_chain(const RingPtr& R, const FiniteIdeal& I, const SigmaDeltaSystem& S,
                              std::size_t jmax) {
  if (!R->finite()) fail(Errc::NotEnumerable, "ideal chain needs a finite ring");
  if (!R->same(*I.ring())) fail(Errc::MismatchedRing, "ideal over a different ring");
  if (!invariance(I, S).sigma_invariant)
    fail(Errc::NotSigmaInvariant, "chain needs a sigma-invariant ideal");
  std::uint64_t card = *R->cardinality();

  std::vector<EndoMap> monoid = sigma_monoid_closure(R, S.sigmas);
  std::set<std::vector<std::uint64_t>> factors;
  for (const auto& d : S.deltas) {
    std::vector<std::uint64_t> dt = d.index_table();
    for (const auto& m : monoid) {
      std::vector<std::uint64_t> mt = m.index_table();
      std::vector<std::uint64_t> comp(card);
      for (std::uint64_t i = 0; i < card; ++i) comp[i] = dt[mt[i]];
      factors.insert(comp);
    }
  }

  IdealChain chain;
  chain.levels.push_back(FiniteIdeal::whole_ring(R));
  if (jmax == 0) return chain;
  chain.levels.push_back(I);
  std::vector<bool> good(card, false);
  for (auto i : I.indices()) good[i] = true;
  // composites of the current length, seeded with the identity (length 0)
  std::set<std::vector<std::uint64_t>> level_maps;
  {
    std::vector<std::uint64_t> id(card);
    for (std::uint64_t i = 0; i < card; ++i) id[i] = i;
    level_maps.insert(std::move(id));
  }
  for (std::size_t j = 2; j <= jmax; ++j) {
    std::set<std::vector<std::uint64_t>> next;
    for (const auto& f : factors)
      for (const auto& w : level_maps) {
        std::vector<std::uint64_t> comp(card);
        for (std::uint64_t i = 0; i < card; ++i) comp[i] = f[w[i]];
        next.insert(std::move(comp));
      }
    level_maps = std::move(next);
    for (std::uint64_t i = 0; i < card; ++i) {
      if (!good[i]) continue;
      for (const auto& u : level_maps)
        if (!I.contains_index(u[i])) {
          good[i] = false;
          break;
        }
    }
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < card; ++i)
      if (good[i]) idx.push_back(i);
    chain.levels.push_back(FiniteIdeal::from_members(R, idx));
  }
  return chain;
}

struct QuotientSystem {
  RingPtr quotient;
  SigmaDeltaSystem induced;
};

inline QuotientSystem quotient_system(const RingPtr& R, const FiniteIdeal& I,
                                      const SigmaDeltaSystem& S) {
  if (!R->finite()) fail(Errc::NotEnumerable, "quotients need a finite ring");
  if (!R->same(*I.ring())) fail(Errc::MismatchedRing, "ideal over a different ring");
  if (!I.proper()) fail(Errc::ImproperIdeal, "quotient by the whole ring");
  InvarianceFlags inv = invariance(I, S);
  if (!inv.sigma_invariant || !inv.delta_invariant)
    fail(Errc::NotInvariant, "quotient system needs a (sigma,delta)-invariant ideal");
  RingPtr Q = Ring::residue(R, I.indices());
  std::uint64_t qcard = *Q->cardinality();
  std::vector<EndoMap> qs;
  std::vector<DerMap> qd;
  for (std::size_t k = 0; k < S.arity(); ++k) {
    std::vector<std::uint64_t> st(qcard), dt(qcard);
    for (std::uint64_t c = 0; c < qcard; ++c) {
      RingElement rep = Q->lift(Q->element_at(c));
      st[c] = Q->index_of(Q->project(S.sigmas[k].apply(rep)));
      dt[c] = Q->index_of(Q->project(S.deltas[k].apply(rep)));
    }
    qs.push_back(EndoMap::table_indices(Q, std::move(st)));
    qd.push_back(DerMap::table_indices(Q, std::move(dt)));
  }
  return QuotientSystem{Q, SigmaDeltaSystem::make(Q, std::move(qs), std::move(qd))};
}

// Principal-ideal invariance over K[t]: (f) is sigma-invariant iff f divides
// sigma(f), delta-invariant iff f divides delta(f).
inline InvarianceFlags unipoly_principal_invariance(const RingPtr& R, const RingElement& f,
                                                    const SigmaDeltaSystem& S) {
  if (R->kind() != RingKind::UniPoly) fail(Errc::BadParams, "helper is for univariate rings");
  if (!R->same(*f.ring())) fail(Errc::MismatchedRing, "element from a different ring");
  InvarianceFlags out;
  out.sigma_invariant = true;
  out.delta_invariant = true;
  out.sigma_stable = false;
  if (f.is_zero()) return out;  // the zero ideal is invariant under everything
  for (const auto& s : S.sigmas)
    if (!unipoly_divides(f, s.apply(f))) out.sigma_invariant = false;
  for (const auto& d : S.deltas)
    if (!unipoly_divides(f, d.apply(f))) out.delta_invariant = false;
  return out;
}

}  // namespace spbw
