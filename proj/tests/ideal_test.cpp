#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <spbw/ideal.hpp>

#include "test_support.hpp"

using namespace spbw;

#define EXPECT_SPBW_ERROR(stmt, expected_code)                      \
  do {                                                              \
    try {                                                           \
      stmt;                                                         \
      ADD_FAILURE() << "expected error " << #expected_code;        \
    } catch (const Error& e) {                                      \
      EXPECT_EQ(e.code(), expected_code) << e.what();               \
    }                                                               \
  } while (0)

namespace {

EndoMap swap_map(const RingPtr& P) {
  std::vector<std::uint64_t> idx;
  for (std::uint64_t i = 0; i < *P->cardinality(); ++i) {
    auto w = P->element_at(i).words();
    idx.push_back(P->index_of(P->tuple({Int(w[1]), Int(w[0])})));
  }
  return EndoMap::table_indices(P, idx);
}

DerMap inner_der(const RingPtr& P, const EndoMap& s, const RingElement& a) {
  std::vector<RingElement> img;
  for (std::uint64_t i = 0; i < *P->cardinality(); ++i) {
    auto r = P->element_at(i);
    img.push_back(a * r - s.apply(r) * a);
  }
  return DerMap::table(P, img);
}

// t-coefficient extraction on Z/2[t]/(t^2): the derivation with delta(t) = 1
DerMap qp_ddt(const RingPtr& QP) {
  std::vector<RingElement> img;
  for (std::uint64_t i = 0; i < *QP->cardinality(); ++i)
    img.push_back(QP->qp_from({QP->element_at(i).words()[1]}));
  return DerMap::table(QP, img);
}

std::set<std::uint64_t> index_set(const FiniteIdeal& I) {
  return {I.indices().begin(), I.indices().end()};
}

}  // namespace

TEST(Closure, GeneratedIdeals) {
  auto Z6 = Ring::zmod(6);
  auto I = ideal_closure(Z6, {Z6->from_int(2), Z6->from_int(4)});
  EXPECT_EQ(index_set(I), (std::set<std::uint64_t>{0, 2, 4}));

  EXPECT_TRUE(ideal_closure(Z6, {}).is_zero_ideal());
  EXPECT_TRUE(ideal_closure(Z6, {Z6->one()}).is_whole_ring());
  EXPECT_TRUE(ideal_closure(Z6, {Z6->from_int(5)}).is_whole_ring());

  EXPECT_TRUE(I.contains(Z6->from_int(4)));
  EXPECT_FALSE(I.contains(Z6->from_int(3)));
  EXPECT_FALSE(I.proper() == false);
  EXPECT_EQ(I.size(), 3u);
}

TEST(Closure, FromMembersVerifiesClosure) {
  auto Z6 = Ring::zmod(6);
  auto I = FiniteIdeal::from_members(Z6, {0, 2, 4});
  EXPECT_EQ(I, ideal_closure(Z6, {Z6->from_int(2)}));
  EXPECT_SPBW_ERROR(FiniteIdeal::from_members(Z6, {0, 2}), Errc::BadParams);
  EXPECT_SPBW_ERROR(FiniteIdeal::from_members(Z6, {2, 4}), Errc::BadParams);
  auto Q = Ring::rationals();
  EXPECT_SPBW_ERROR(FiniteIdeal::zero_ideal(Q), Errc::NotEnumerable);
}

TEST(Lattice, MatchesDivisorLattice) {
  for (std::uint64_t n : {4ull, 6ull, 8ull, 9ull, 12ull}) {
    auto R = Ring::zmod(n);
    auto ideals = enumerate_ideals(R);
    auto divs = testsupport::divisors(n);
    ASSERT_EQ(ideals.size(), divs.size()) << "n=" << n;
    std::set<std::set<std::uint64_t>> got;
    for (const auto& I : ideals) got.insert(index_set(I));
    std::set<std::set<std::uint64_t>> want;
    for (auto d : divs) want.insert(testsupport::multiples_mod(d, n));
    EXPECT_EQ(got, want) << "n=" << n;
  }
}

TEST(Lattice, FrozenCounts) {
  EXPECT_EQ(enumerate_ideals(Ring::zmod(6)).size(), 4u);
  EXPECT_EQ(enumerate_ideals(Ring::zmod(12)).size(), 6u);
  EXPECT_EQ(enumerate_ideals(Ring::product({3, 3})).size(), 4u);
  EXPECT_EQ(enumerate_ideals(Ring::quotient_poly(2, {0, 0, 1})).size(), 3u);
}

TEST(Lattice, OrderedBySizeThenIndices) {
  auto ideals = enumerate_ideals(Ring::zmod(12));
  for (std::size_t k = 1; k < ideals.size(); ++k) {
    EXPECT_TRUE(ideals[k - 1] < ideals[k]);
    EXPECT_LE(ideals[k - 1].size(), ideals[k].size());
  }
  EXPECT_TRUE(ideals.front().is_zero_ideal());
  EXPECT_TRUE(ideals.back().is_whole_ring());
}

TEST(Combine, SumProductIntersection) {
  auto Z12 = Ring::zmod(12);
  auto I2 = ideal_closure(Z12, {Z12->from_int(2)});
  auto I3 = ideal_closure(Z12, {Z12->from_int(3)});
  auto I6 = ideal_closure(Z12, {Z12->from_int(6)});

  EXPECT_TRUE(ideal_combine(I2, I3, IdealOp::Sum).is_whole_ring());
  EXPECT_EQ(ideal_combine(I2, I3, IdealOp::Intersection), I6);
  EXPECT_EQ(ideal_combine(I2, I3, IdealOp::Product), I6);

  auto Z6 = Ring::zmod(6);
  auto J2 = ideal_closure(Z6, {Z6->from_int(2)});
  auto J3 = ideal_closure(Z6, {Z6->from_int(3)});
  EXPECT_TRUE(ideal_combine(J2, J3, IdealOp::Product).is_zero_ideal());
  EXPECT_TRUE(ideal_combine(J2, J3, IdealOp::Intersection).is_zero_ideal());

  // absorbing cases
  auto R6 = FiniteIdeal::whole_ring(Z6);
  EXPECT_EQ(ideal_combine(J2, R6, IdealOp::Product), J2);
  EXPECT_EQ(ideal_combine(J2, R6, IdealOp::Sum), R6);
  EXPECT_EQ(ideal_combine(J2, R6, IdealOp::Intersection), J2);
}

TEST(Annihilator, Examples) {
  auto Z6 = Ring::zmod(6);
  auto I2 = ideal_closure(Z6, {Z6->from_int(2)});
  EXPECT_EQ(annihilator(Z6, I2), ideal_closure(Z6, {Z6->from_int(3)}));
  EXPECT_TRUE(annihilator(Z6, FiniteIdeal::zero_ideal(Z6)).is_whole_ring());
  EXPECT_TRUE(annihilator(Z6, FiniteIdeal::whole_ring(Z6)).is_zero_ideal());

  auto QP = Ring::quotient_poly(2, {0, 0, 1});
  auto It = ideal_closure(QP, {QP->t_gen()});
  EXPECT_EQ(annihilator(QP, It), It);  // ann(t) = (t) since t*t = 0
}

TEST(Invariance, DerivationMovesOutOfIdeal) {
  auto QP = Ring::quotient_poly(2, {0, 0, 1});
  auto S = SigmaDeltaSystem::make(QP, {EndoMap::identity(QP)}, {qp_ddt(QP)});
  auto It = ideal_closure(QP, {QP->t_gen()});
  auto f = invariance(It, S);
  EXPECT_TRUE(f.sigma_invariant);
  EXPECT_TRUE(f.sigma_stable);
  EXPECT_FALSE(f.delta_invariant);  // delta(t) = 1 leaves (t)

  auto z = invariance(FiniteIdeal::zero_ideal(QP), S);
  EXPECT_TRUE(z.sigma_invariant);
  EXPECT_TRUE(z.delta_invariant);
}

TEST(Invariance, SwapMovesFactorIdeal) {
  auto P = Ring::product({3, 3});
  auto swp = swap_map(P);
  auto S = SigmaDeltaSystem::make(P, {swp}, {DerMap::zero(P)});
  auto left = ideal_closure(P, {P->tuple({1, 0})});
  auto f = invariance(left, S);
  EXPECT_FALSE(f.sigma_invariant);
  EXPECT_FALSE(f.sigma_stable);
  EXPECT_TRUE(f.delta_invariant);
  EXPECT_TRUE(invariance(FiniteIdeal::zero_ideal(P), S).sigma_invariant);
}

TEST(Primality, PlainModes) {
  auto Z6 = Ring::zmod(6);
  auto triv = SigmaDeltaSystem::trivial(Z6);
  auto zero = FiniteIdeal::zero_ideal(Z6);

  auto p = primality(Z6, zero, triv, PrimalityMode::Prime);
  EXPECT_FALSE(p.holds);
  ASSERT_TRUE(p.witness.has_value());
  auto I2 = ideal_closure(Z6, {Z6->from_int(2)});
  auto I3 = ideal_closure(Z6, {Z6->from_int(3)});
  std::set<FiniteIdeal> w{p.witness->first, p.witness->second};
  EXPECT_EQ(w, (std::set<FiniteIdeal>{I2, I3}));

  EXPECT_TRUE(primality(Z6, zero, triv, PrimalityMode::Semiprime).holds);
  EXPECT_TRUE(primality(Z6, I2, triv, PrimalityMode::Prime).holds);
  EXPECT_TRUE(primality(Z6, I3, triv, PrimalityMode::Prime).holds);

  auto Z4 = Ring::zmod(4);
  auto s = primality(Z4, FiniteIdeal::zero_ideal(Z4), SigmaDeltaSystem::trivial(Z4),
                     PrimalityMode::Semiprime);
  EXPECT_FALSE(s.holds);
  ASSERT_TRUE(s.witness.has_value());
  EXPECT_EQ(s.witness->first, s.witness->second);
  EXPECT_EQ(s.witness->first, ideal_closure(Z4, {Z4->from_int(2)}));

  EXPECT_SPBW_ERROR(primality(Z6, FiniteIdeal::whole_ring(Z6), triv, PrimalityMode::Prime),
                    Errc::ImproperIdeal);
}

TEST(Primality, MapRestrictedModes) {
  // swapping the factors of Z/3 x Z/3 leaves no invariant witness pair
  auto P = Ring::product({3, 3});
  auto swp = swap_map(P);
  auto S = SigmaDeltaSystem::make(P, {swp}, {DerMap::zero(P)});
  auto zero = FiniteIdeal::zero_ideal(P);
  EXPECT_FALSE(primality(P, zero, SigmaDeltaSystem::trivial(P), PrimalityMode::Prime).holds);
  EXPECT_TRUE(primality(P, zero, S, PrimalityMode::SigmaPrime).holds);

  // delta(t) = 1 kills the only nontrivial invariant candidate (t)
  auto QP = Ring::quotient_poly(2, {0, 0, 1});
  auto SD = SigmaDeltaSystem::make(QP, {EndoMap::identity(QP)}, {qp_ddt(QP)});
  auto qzero = FiniteIdeal::zero_ideal(QP);
  EXPECT_FALSE(primality(QP, qzero, SigmaDeltaSystem::trivial(QP), PrimalityMode::Prime).holds);
  EXPECT_TRUE(primality(QP, qzero, SD, PrimalityMode::DeltaPrime).holds);

  // mode preconditions
  auto left = ideal_closure(P, {P->tuple({1, 0})});
  EXPECT_SPBW_ERROR(primality(P, left, S, PrimalityMode::SigmaPrime), Errc::NotSigmaInvariant);
  auto It = ideal_closure(QP, {QP->t_gen()});
  EXPECT_SPBW_ERROR(primality(QP, It, SD, PrimalityMode::DeltaPrime), Errc::NotInvariant);
}

TEST(Radical, IntersectionOfPrimes) {
  auto Z12 = Ring::zmod(12);
  EXPECT_EQ(prime_radical(Z12), ideal_closure(Z12, {Z12->from_int(6)}));
  auto Z6 = Ring::zmod(6);
  EXPECT_TRUE(prime_radical(Z6).is_zero_ideal());
  EXPECT_TRUE(prime_radical(Ring::zmod(5)).is_zero_ideal());
  auto QP = Ring::quotient_poly(2, {0, 0, 1});
  EXPECT_EQ(prime_radical(QP), ideal_closure(QP, {QP->t_gen()}));

  // cross-check against squarefree parts of the modulus
  for (std::uint64_t n : {4ull, 8ull, 9ull, 12ull, 18ull}) {
    auto R = Ring::zmod(n);
    auto expected = testsupport::multiples_mod(testsupport::squarefree_radical(n), n);
    EXPECT_EQ(index_set(prime_radical(R)), expected) << "n=" << n;
  }
}

TEST(RegularSet, ResiduallyRegularElements) {
  auto Z12 = Ring::zmod(12);
  auto I6 = ideal_closure(Z12, {Z12->from_int(6)});
  std::set<std::uint64_t> got;
  for (const auto& a : regular_set(Z12, I6)) got.insert(Z12->index_of(a));
  EXPECT_EQ(got, (std::set<std::uint64_t>{1, 5, 7, 11}));

  auto Z6 = Ring::zmod(6);
  std::set<std::uint64_t> got6;
  for (const auto& a : regular_set(Z6, FiniteIdeal::zero_ideal(Z6))) got6.insert(Z6->index_of(a));
  EXPECT_EQ(got6, (std::set<std::uint64_t>{1, 5}));

  EXPECT_SPBW_ERROR(regular_set(Z6, FiniteIdeal::whole_ring(Z6)), Errc::ImproperIdeal);
}

TEST(Monoid, ClosureOfMapSets) {
  auto P = Ring::product({3, 3});
  auto swp = swap_map(P);
  EXPECT_EQ(sigma_monoid_closure(P, {swp}).size(), 2u);  // id and swap
  EXPECT_EQ(sigma_monoid_closure(P, {EndoMap::identity(P)}).size(), 1u);
  EXPECT_EQ(sigma_monoid_closure(P, {}).size(), 1u);

  // a non-bijective endomorphism: t -> 0 on Z/2[t]/(t^2)
  auto QP = Ring::quotient_poly(2, {0, 0, 1});
  std::vector<RingElement> collapse;
  for (std::uint64_t i = 0; i < 4; ++i)
    collapse.push_back(QP->qp_from({QP->element_at(i).words()[0]}));
  auto m = sigma_monoid_closure(QP, {EndoMap::table(QP, collapse)});
  EXPECT_EQ(m.size(), 2u);  // idempotent: id and the collapse itself
}

TEST(Chain, DerivationChainOnQuotientRing) {
  auto QP = Ring::quotient_poly(2, {0, 0, 1});
  auto S = SigmaDeltaSystem::make(QP, {EndoMap::identity(QP)}, {qp_ddt(QP)});
  auto It = ideal_closure(QP, {QP->t_gen()});
  auto chain = ideal_chain(QP, It, S, 3);
  ASSERT_EQ(chain.levels.size(), 4u);
  EXPECT_TRUE(chain.levels[0].is_whole_ring());
  EXPECT_EQ(chain.levels[1], It);
  EXPECT_TRUE(chain.levels[2].is_zero_ideal());  // delta(t) = 1 not in (t)
  EXPECT_TRUE(chain.levels[3].is_zero_ideal());
}

TEST(Chain, TrivialCases) {
  auto Z6 = Ring::zmod(6);
  auto triv = SigmaDeltaSystem::trivial(Z6);
  auto I2 = ideal_closure(Z6, {Z6->from_int(2)});
  auto chain = ideal_chain(Z6, I2, triv, 4);
  ASSERT_EQ(chain.levels.size(), 5u);
  for (std::size_t j = 1; j < chain.levels.size(); ++j)
    EXPECT_EQ(chain.levels[j], I2);  // zero deltas keep every level at I

  EXPECT_EQ(ideal_chain(Z6, I2, triv, 0).levels.size(), 1u);

  auto P = Ring::product({3, 3});
  auto swp = swap_map(P);
  auto S = SigmaDeltaSystem::make(P, {swp}, {DerMap::zero(P)});
  auto left = ideal_closure(P, {P->tuple({1, 0})});
  EXPECT_SPBW_ERROR(ideal_chain(P, left, S, 2), Errc::NotSigmaInvariant);
}

TEST(Chain, PropositionProperties) {
  // (i) descending, (ii) delta_i(I_j) in I_{j-1}, (iii) I_j sigma-invariant,
  // (iv) I * I_j in I_{j+1}
  struct Instance {
    RingPtr R;
    SigmaDeltaSystem S;
    FiniteIdeal I;
  };
  std::vector<Instance> instances;

  auto QP = Ring::quotient_poly(2, {0, 0, 1});
  auto SQ = SigmaDeltaSystem::make(QP, {EndoMap::identity(QP)}, {qp_ddt(QP)});
  for (const auto& I : enumerate_ideals(QP))
    if (invariance(I, SQ).sigma_invariant) instances.push_back({QP, SQ, I});

  auto P = Ring::product({3, 3});
  auto swp = swap_map(P);
  auto SP = SigmaDeltaSystem::make(P, {swp}, {inner_der(P, swp, P->tuple({1, 0}))});
  for (const auto& I : enumerate_ideals(P))
    if (invariance(I, SP).sigma_invariant) instances.push_back({P, SP, I});

  auto Z12 = Ring::zmod(12);
  auto SZ = SigmaDeltaSystem::trivial(Z12);
  for (const auto& I : enumerate_ideals(Z12)) instances.push_back({Z12, SZ, I});

  ASSERT_GE(instances.size(), 10u);
  const std::size_t jmax = 4;
  for (const auto& [R, S, I] : instances) {
    auto chain = ideal_chain(R, I, S, jmax + 1);
    ASSERT_EQ(chain.levels.size(), jmax + 2);
    for (std::size_t j = 0; j + 1 < chain.levels.size(); ++j)
      EXPECT_TRUE(chain.levels[j + 1].subset_of(chain.levels[j]));  // (i)
    for (std::size_t j = 2; j < chain.levels.size(); ++j)
      for (const auto& d : S.deltas)
        for (const auto& x : chain.levels[j].elements())
          EXPECT_TRUE(chain.levels[j - 1].contains(d.apply(x)));  // (ii)
    for (std::size_t j = 1; j < chain.levels.size(); ++j)
      EXPECT_TRUE(invariance(chain.levels[j], S).sigma_invariant);  // (iii)
    for (std::size_t j = 1; j + 1 < chain.levels.size(); ++j)
      for (const auto& a : I.elements())
        for (const auto& x : chain.levels[j].elements())
          EXPECT_TRUE(chain.levels[j + 1].contains(a * x));  // (iv)
  }
}

TEST(Quotient, ResidueSystemIsValid) {
  auto Z6 = Ring::zmod(6);
  auto I3 = ideal_closure(Z6, {Z6->from_int(3)});
  auto qs = quotient_system(Z6, I3, SigmaDeltaSystem::trivial(Z6));
  EXPECT_EQ(*qs.quotient->cardinality(), 3u);
  // arithmetic matches Z/3 through the projection
  auto two = qs.quotient->project(Z6->from_int(2));
  EXPECT_EQ(two + two, qs.quotient->project(Z6->from_int(4)));
  EXPECT_TRUE((two + two + two).is_zero());
  ASSERT_EQ(qs.induced.arity(), 1u);
  EXPECT_TRUE(qs.induced.sigmas[0].is_identity());
  EXPECT_TRUE(qs.induced.deltas[0].is_zero_map());

  // swap system descends to the zero ideal quotient (isomorphic copy)
  auto P = Ring::product({3, 3});
  auto swp = swap_map(P);
  auto SP = SigmaDeltaSystem::make(P, {swp}, {DerMap::zero(P)});
  auto qz = quotient_system(P, FiniteIdeal::zero_ideal(P), SP);
  EXPECT_EQ(*qz.quotient->cardinality(), 9u);
  EXPECT_FALSE(qz.induced.sigmas[0].is_identity());

  auto left = ideal_closure(P, {P->tuple({1, 0})});
  EXPECT_SPBW_ERROR(quotient_system(P, left, SP), Errc::NotInvariant);
  EXPECT_SPBW_ERROR(quotient_system(P, FiniteIdeal::whole_ring(P), SP), Errc::ImproperIdeal);
}

TEST(Quotient, InducedMapNeedNotBeInjective) {
  // the evaluation t -> 0 is a legitimate system map even though it is not
  // injective, and it descends to quotients unchanged
  auto QP = Ring::quotient_poly(2, {0, 0, 1});
  std::vector<RingElement> collapse;
  for (std::uint64_t i = 0; i < 4; ++i)
    collapse.push_back(QP->qp_from({QP->element_at(i).words()[0]}));
  auto S = SigmaDeltaSystem::make(QP, {EndoMap::table(QP, collapse)}, {DerMap::zero(QP)});
  auto qs = quotient_system(QP, FiniteIdeal::zero_ideal(QP), S);
  EXPECT_EQ(*qs.quotient->cardinality(), 4u);
  EXPECT_FALSE(qs.induced.sigmas[0].is_identity());
  EXPECT_FALSE(validate_endomorphism(qs.quotient, qs.induced.sigmas[0]).injective);

  // quotient by (t): the two constants survive and the collapse becomes id
  auto It = ideal_closure(QP, {QP->t_gen()});
  auto qt = quotient_system(QP, It, S);
  EXPECT_EQ(*qt.quotient->cardinality(), 2u);
  EXPECT_TRUE(qt.induced.sigmas[0].is_identity());
}

TEST(UniPolyIdeals, PrincipalInvariance) {
  auto Qt = Ring::unipoly(Ring::rationals());
  auto t = Qt->t_gen();
  auto id = EndoMap::identity(Qt);
  auto ddt = DerMap::t_image(Qt, Qt->one(), id);
  auto S = SigmaDeltaSystem::make(Qt, {id}, {ddt});

  auto f = t * t;
  auto inv = unipoly_principal_invariance(Qt, f, S);
  EXPECT_TRUE(inv.sigma_invariant);
  EXPECT_FALSE(inv.delta_invariant);  // (t^2)' = 2t is not a multiple of t^2

  auto shift = EndoMap::t_image(Qt, t - Qt->one());
  auto S2 = SigmaDeltaSystem::make(Qt, {shift}, {DerMap::zero(Qt)});
  EXPECT_FALSE(unipoly_principal_invariance(Qt, t, S2).sigma_invariant);
  EXPECT_TRUE(unipoly_principal_invariance(Qt, t, S).sigma_invariant);
  EXPECT_TRUE(unipoly_principal_invariance(Qt, Qt->zero(), S2).sigma_invariant);
}

TEST(Systems, MakeValidatesLaws) {
  auto Z6 = Ring::zmod(6);
  std::vector<RingElement> imgs;
  for (std::uint64_t i = 0; i < 6; ++i) imgs.push_back(Z6->element_at(i));
  EXPECT_SPBW_ERROR(
      SigmaDeltaSystem::make(Z6, {EndoMap::identity(Z6)}, {DerMap::table(Z6, imgs)}),
      Errc::InvalidMap);
  EXPECT_SPBW_ERROR(SigmaDeltaSystem::make(Z6, {EndoMap::identity(Z6)}, {}),
                    Errc::MismatchedArity);

  // non-injective endomorphisms are allowed in systems
  auto QP = Ring::quotient_poly(2, {0, 0, 1});
  std::vector<RingElement> collapse;
  for (std::uint64_t i = 0; i < 4; ++i)
    collapse.push_back(QP->qp_from({QP->element_at(i).words()[0]}));
  EXPECT_NO_THROW(
      SigmaDeltaSystem::make(QP, {EndoMap::table(QP, collapse)}, {DerMap::zero(QP)}));
}
