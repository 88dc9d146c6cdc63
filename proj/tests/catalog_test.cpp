#include <gtest/gtest.h>

#include <spbw/catalog.hpp>

#include "test_support.hpp"

using namespace spbw;
using namespace testsupport;

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

// forward difference p(t+1) - p(t), the faithful action of the difference variable
QtPoly diff_act_var(const QtPoly& p) {
  return qt_add(qt_shift_arg(p, Rational(-1)), qt_scale(Rational(-1), p));
}

QtPoly difference_act(const SkewPolynomial& f, const QtPoly& p) {
  QtPoly out;
  for (const auto& [exp, coeff] : f.terms()) {
    QtPoly acc = p;
    for (std::uint32_t k = 0; k < exp[0]; ++k) acc = diff_act_var(acc);
    out = qt_add(out, qt_mul(ring_to_qt(coeff), acc));
  }
  return out;
}

QtPoly random_qt(std::mt19937_64& rng) {
  QtPoly p;
  for (int i = 0; i <= 4; ++i)
    p.push_back(Rational(static_cast<std::int64_t>(rng() % 13) - 6));
  return qt_trim(p);
}

}  // namespace

TEST(Entries, AllBuildersPassConsistency) {
  auto Z6 = Ring::zmod(6);
  auto Z5 = Ring::zmod(5);
  auto P = Ring::product({3, 3});
  std::vector<ExtensionSpec> specs;
  specs.push_back(catalog_habitual(Z6, 2));
  specs.push_back(catalog_weyl(Ring::rationals(), 2));
  specs.push_back(catalog_quantum_plane(Z5, Z5->from_int(2)));
  specs.push_back(catalog_quantum_space(P, {{P->one()}}, {swap_map(P)}));
  specs.push_back(catalog_shift(Rational(1)));
  specs.push_back(catalog_differential(Ring::rationals()));
  specs.push_back(catalog_difference());
  specs.push_back(catalog_multiplicative_weyl(
      Z5, {{Z5->one(), Z5->from_int(2)}, {Z5->from_int(3), Z5->one()}}));
  for (const auto& E : specs) {
    auto rep = E.check_pbw_consistency();
    EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures[0].detail);
  }
}

TEST(Entries, DeclaredShapes) {
  auto W = catalog_weyl(Ring::rationals(), 2);
  EXPECT_EQ(W.nvars(), 4u);
  EXPECT_TRUE(W.flags().derivation_type);
  EXPECT_FALSE(W.flags().quasi_commutative);
  EXPECT_TRUE(W.flags().automorphism_type);
  EXPECT_TRUE(W.flags().bijective);

  auto Sh = catalog_shift(Rational(2));
  EXPECT_TRUE(Sh.flags().quasi_commutative);
  EXPECT_TRUE(Sh.flags().automorphism_type);
  EXPECT_FALSE(Sh.flags().derivation_type);

  auto D = catalog_differential(Ring::rationals());
  EXPECT_TRUE(D.flags().derivation_type);
  EXPECT_FALSE(D.flags().endomorphism_type);
  EXPECT_FALSE(D.flags().quasi_commutative);

  auto Df = catalog_difference();
  EXPECT_FALSE(Df.flags().derivation_type);
  EXPECT_FALSE(Df.flags().endomorphism_type);
  EXPECT_TRUE(Df.flags().bijective);

  auto Z5 = Ring::zmod(5);
  auto Qp = catalog_quantum_plane(Z5, Z5->from_int(3));
  EXPECT_TRUE(Qp.flags().quasi_commutative);
  EXPECT_TRUE(Qp.flags().bijective);
}

TEST(Entries, FieldRequirementsAndBadMatrices) {
  auto Z6 = Ring::zmod(6);
  EXPECT_SPBW_ERROR(catalog_weyl(Z6, 1), Errc::BadParams);
  EXPECT_SPBW_ERROR(catalog_quantum_plane(Z6, Z6->one()), Errc::BadParams);
  EXPECT_SPBW_ERROR(catalog_differential(Z6), Errc::BadParams);
  auto Z5 = Ring::zmod(5);
  EXPECT_SPBW_ERROR(catalog_quantum_plane(Z5, Z5->zero()), Errc::BadParams);
  EXPECT_SPBW_ERROR(catalog_weyl(Ring::rationals(), 0), Errc::BadParams);

  auto P = Ring::product({3, 3});
  auto one = P->one();
  auto two = P->tuple({2, 2});
  // q_ii must be 1
  EXPECT_SPBW_ERROR(catalog_quantum_space(P, {{two}}, {EndoMap::identity(P)}),
                    Errc::BadParams);
  // zero off-diagonal entry
  EXPECT_SPBW_ERROR(
      catalog_quantum_space(P, {{one, P->zero()}, {P->zero(), one}},
                            {EndoMap::identity(P), EndoMap::identity(P)}),
      Errc::BadParams);
  // q_ij q_ji must be 1, but (1,2)*(1,1) = (1,2)
  EXPECT_SPBW_ERROR(
      catalog_quantum_space(P, {{one, P->tuple({1, 2})}, {one, one}},
                            {EndoMap::identity(P), EndoMap::identity(P)}),
      Errc::BadParams);
  // non-square
  EXPECT_SPBW_ERROR(
      catalog_quantum_space(P, {{one, one}}, {EndoMap::identity(P)}), Errc::BadParams);

  auto Q = Ring::rationals();
  EXPECT_SPBW_ERROR(
      catalog_multiplicative_weyl(Q, {{Q->one(), Q->one()}, {Q->zero(), Q->one()}}),
      Errc::BadParams);
}

TEST(Weyl, DifferentiationOracle) {
  auto E = catalog_weyl(Ring::rationals(), 1);
  auto Q = E.ring();
  auto x2 = E.var_poly(1);
  for (std::uint32_t k = 1; k <= 10; ++k) {
    auto prod = E.multiply(x2, E.monomial({k, 0}));
    auto expected = E.monomial({k, 1}) +
                    E.monomial({k - 1, 0}).scale_left(Q->from_int(k));
    EXPECT_EQ(prod, expected) << "k=" << k;
    // the same identity on the function side: d/dt(t^k) = k t^(k-1)
    EXPECT_EQ(weyl_act(prod, {Rational(1)}), qt_ddt(qt_monomial(k)));
  }
}

TEST(Weyl, ProductsActAsComposedOperators) {
  auto E = catalog_weyl(Ring::rationals(), 1);
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_poly(E, rng, 3, 3);
    auto g = random_poly(E, rng, 3, 3);
    auto p = random_qt(rng);
    EXPECT_EQ(weyl_act(E.multiply(f, g), p), weyl_act(f, weyl_act(g, p)));
  }
}

TEST(Shift, SubstitutionOracle) {
  Rational h(3, 2);
  auto E = catalog_shift(h);
  auto R = E.ring();
  auto t = R->t_gen();
  // x^a t = (t - a h) x^a
  for (std::uint32_t a = 1; a <= 5; ++a) {
    auto prod = E.multiply(E.monomial({a}), E.constant(t));
    auto expected = E.monomial({a}).scale_left(t - R->from_rational(Rational(a) * h));
    EXPECT_EQ(prod, expected);
  }
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    auto f = random_poly(E, rng, 3, 3);
    auto g = random_poly(E, rng, 3, 3);
    auto p = random_qt(rng);
    EXPECT_EQ(shift_act(E.multiply(f, g), h, p),
              shift_act(f, h, shift_act(g, h, p)));
  }
}

TEST(Difference, ForwardDifferenceOracle) {
  auto E = catalog_difference();
  auto R = E.ring();
  auto t = R->t_gen();
  auto x = E.var_poly(0);

  // x t = (t + 1) x + 1
  auto xt = E.multiply(x, E.constant(t));
  auto expected = x.scale_left(t + R->one()) + E.one_poly();
  EXPECT_EQ(xt, expected);

  // x t^2 = (t + 1)^2 x + (2t + 1)
  auto xt2 = E.multiply(x, E.constant(t * t));
  auto sq = (t + R->one()) * (t + R->one());
  auto expected2 = x.scale_left(sq) + E.constant(t + t + R->one());
  EXPECT_EQ(xt2, expected2);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto f = random_poly(E, rng, 3, 3);
    auto g = random_poly(E, rng, 3, 3);
    auto p = random_qt(rng);
    EXPECT_EQ(difference_act(E.multiply(f, g), p),
              difference_act(f, difference_act(g, p)));
  }
}

TEST(MultiplicativeWeyl, ConstantsComeFromLambdaTransposed) {
  auto Q = Ring::rationals();
  // x_j x_i = lambda_ji x_i x_j, so the relation constant for (0,1) is lambda[1][0]
  auto E = catalog_multiplicative_weyl(
      Q, {{Q->from_int(5), Q->from_int(2)}, {Q->from_rational(Rational(1, 2)), Q->one()}});
  EXPECT_EQ(E.relation(0, 1).c, Q->from_rational(Rational(1, 2)));
  auto x1 = E.var_poly(0), x2 = E.var_poly(1);
  auto lhs = E.multiply(x2, x1);
  auto rhs = E.multiply(x1, x2).scale_left(Q->from_rational(Rational(1, 2)));
  EXPECT_EQ(lhs, rhs);
  EXPECT_TRUE(E.flags().quasi_commutative);
}

TEST(QuantumPlane, UnitQDegeneratesToHabitual) {
  auto Z5 = Ring::zmod(5);
  auto E = catalog_quantum_plane(Z5, Z5->one());
  auto H = catalog_habitual(Z5, 2);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_poly(E, rng, 2, 3);
    auto g = random_poly(E, rng, 2, 3);
    EXPECT_EQ(E.multiply(f, g), H.multiply(f, g));
  }
}

TEST(Builder, StringParameters) {
  auto W = build_catalog("weyl", {});
  EXPECT_EQ(W.nvars(), 2u);
  EXPECT_EQ(W.ring()->kind(), RingKind::Rationals);

  auto H = build_catalog("habitual", {{"ring", "Z6"}, {"n", "2"}});
  EXPECT_EQ(H.nvars(), 2u);
  EXPECT_EQ(H.ring()->modulus(), 6u);

  auto Qp = build_catalog("quantum_plane", {{"ring", "Z5"}, {"q", "2"}});
  EXPECT_EQ(Qp.relation(0, 1).c, Qp.ring()->from_int(2));

  auto S = build_catalog("quantum_space", {{"ring", "Z3xZ3"}, {"n", "1"}, {"sigma", "swap"}});
  auto P = S.ring();
  EXPECT_EQ(S.sigma(0).apply(P->tuple({1, 0})), P->tuple({0, 1}));

  auto Sh = build_catalog("shift", {{"h", "3/2"}});
  auto R = Sh.ring();
  EXPECT_EQ(Sh.sigma(0).apply(R->t_gen()),
            R->t_gen() - R->from_rational(Rational(3, 2)));

  auto M = build_catalog("multiplicative_weyl", {{"lambda", "1,2,1/2,1"}});
  EXPECT_EQ(M.relation(0, 1).c, M.ring()->from_rational(Rational(1, 2)));

  auto Hp = build_catalog("habitual", {{"ring", "Z5[t]"}});
  EXPECT_EQ(Hp.ring()->kind(), RingKind::UniPoly);
  EXPECT_TRUE(Hp.check_pbw_consistency().ok());

  auto D = build_catalog("difference", {});
  EXPECT_FALSE(D.flags().endomorphism_type);
}

TEST(Builder, RejectsBadRequests) {
  EXPECT_SPBW_ERROR(build_catalog("enveloping", {}), Errc::UnknownEntry);
  EXPECT_SPBW_ERROR(build_catalog("quantum_plane", {{"ring", "Z5"}}), Errc::BadParams);
  EXPECT_SPBW_ERROR(build_catalog("habitual", {{"ring", "R"}}), Errc::BadParams);
  EXPECT_SPBW_ERROR(build_catalog("habitual", {{"ring", "Z6[t]"}}), Errc::BadParams);
  EXPECT_SPBW_ERROR(build_catalog("habitual", {{"n", "-1"}}), Errc::BadParams);
  EXPECT_SPBW_ERROR(build_catalog("weyl", {{"ring", "Z6"}}), Errc::BadParams);
  EXPECT_SPBW_ERROR(build_catalog("multiplicative_weyl", {{"lambda", "1,2,3"}}),
                    Errc::BadParams);
  EXPECT_SPBW_ERROR(
      build_catalog("quantum_space", {{"ring", "Z3xZ3"}, {"sigma", "frobenius"}}),
      Errc::BadParams);
}

TEST(Builder, EntryListIsComplete) {
  auto names = catalog_entries();
  ASSERT_EQ(names.size(), 8u);
  std::set<std::string> got(names.begin(), names.end());
  std::set<std::string> want{"habitual",     "weyl",         "quantum_plane",
                             "quantum_space", "shift",        "differential",
                             "difference",   "multiplicative_weyl"};
  EXPECT_EQ(got, want);
  // every named entry builds with benign parameters
  std::map<std::string, std::map<std::string, std::string>> params{
      {"habitual", {}},
      {"weyl", {}},
      {"quantum_plane", {{"q", "2"}}},
      {"quantum_space", {{"ring", "Z3xZ3"}, {"sigma", "swap"}}},
      {"shift", {}},
      {"differential", {}},
      {"difference", {}},
      {"multiplicative_weyl", {{"lambda", "1,2,1/2,1"}}}};
  for (const auto& name : names) {
    auto E = build_catalog(name, params.at(name));
    EXPECT_TRUE(E.check_pbw_consistency().ok()) << name;
  }
}
