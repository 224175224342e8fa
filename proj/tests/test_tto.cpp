#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ttolab/errors.hpp"
#include "ttolab/tto.hpp"

using namespace ttolab;
using testutil::random_blaschke;
using testutil::random_element;

namespace {
SymbolSpec random_pair(std::mt19937_64& rng, const ModelSpace& s) {
  return SymbolSpec::pair(random_element(rng, s), random_element(rng, s));
}
}  // namespace

TEST(Build, PolynomialSymbolOnMonomialSpaceIsToeplitz) {
  auto s = ModelSpace::create(InnerFunction::monomial(5));
  FourierPolynomial p({{-2, {1, 1}}, {0, 3.0}, {1, {0, -2}}});
  auto m = build(s, SymbolSpec::polynomial(p)).matrix();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(std::abs(m(i, j) - p[i - j]), 0, 1e-13) << i << "," << j;
}

TEST(Build, AdjointIdentity) {
  std::mt19937_64 rng(21);
  auto s = ModelSpace::create(random_blaschke(rng, 8));
  auto sym = random_pair(rng, s);
  auto a = build(s, sym);
  EXPECT_LE((build(s, sym.conj()).matrix() - a.matrix().adjoint()).norm(), 1e-10);
  EXPECT_LE((adjoint(a).matrix() - a.matrix().adjoint()).norm(), 1e-14);
}

TEST(Build, ZeroSymbolClass) {
  std::mt19937_64 rng(22);
  auto th = random_blaschke(rng, 6);
  auto s = ModelSpace::create(th);
  const int n = s.grid();
  auto T = *s.theta_on_grid(n);
  FourierPolynomial g({{0, {0.3, 0.1}}, {2, {1, -1}}}), h({{1, {-0.5, 0.2}}, {3, 2.0}});
  auto phi = T.pointwise(g.on_grid(n)) + T.pointwise(h.on_grid(n)).conj();
  EXPECT_LE(build(s, SymbolSpec::boundary(phi)).matrix().norm(), 1e-10 * (l2_norm(g.on_grid(n)) + l2_norm(h.on_grid(n))));
}

TEST(Build, StandardSymbolGivesSameOperator) {
  std::mt19937_64 rng(23);
  auto s = ModelSpace::create(random_blaschke(rng, 5));
  FourierPolynomial p({{-4, 1.0}, {-1, {0, 2}}, {3, {1, 1}}, {7, -0.5}});
  auto phi = p.on_grid(s.grid());
  auto a = build(s, SymbolSpec::boundary(phi)).matrix();
  auto b = build(s, SymbolSpec::boundary(standard_symbol(s, phi))).matrix();
  EXPECT_LE((a - b).norm(), 1e-10);
}

TEST(Build, DecomposeRecoversPair) {
  std::mt19937_64 rng(24);
  auto s = ModelSpace::create(random_blaschke(rng, 6));
  auto plus = random_element(rng, s), minus = random_element(rng, s);
  const cd mu(0.1, 0.2);
  auto pr = decompose(s, SymbolSpec::pair(plus, minus).on_grid(s.grid()), mu);
  EXPECT_NEAR(std::abs(pr.minus(mu)), 0, 1e-10);
  auto rebuilt = build(s, SymbolSpec::pair(pr.plus, pr.minus)).matrix();
  EXPECT_LE((rebuilt - build(s, SymbolSpec::pair(plus, minus)).matrix()).norm(), 1e-9);
}

TEST(Build, TruncatedModeMatchesExactAction) {
  auto th = InnerFunction::monomial(8);
  FourierPolynomial p({{-3, 1.0}, {2, {0, 1}}});
  auto e = build(ModelSpace::create(th), SymbolSpec::polynomial(p));
  auto ts = ModelSpace::create(th, {256, SpaceMode::Truncated});
  auto t = build(ts, SymbolSpec::polynomial(p));
  auto k = kernel(ts, KernelPoint::interior(cd(0.2, 0.4)));
  auto ke = kernel(e.space(), KernelPoint::interior(cd(0.2, 0.4)));
  EXPECT_LE(l2_norm(t.apply(k).to_circle(256) - e.apply(ke).to_circle(256)), 1e-12);
}

TEST(Build, BandwidthOverflowInTruncatedMode) {
  auto ts = ModelSpace::create(InnerFunction::singular({{0.0, 1.0}}), {64, SpaceMode::Truncated});
  FourierPolynomial p({{20, 1.0}});
  EXPECT_THROW(build(ts, SymbolSpec::polynomial(p)), DomainError);
}

TEST(Measure, AtomGivesRankOneKernelProduct) {
  std::mt19937_64 rng(25);
  auto s = ModelSpace::create(random_blaschke(rng, 6));
  auto m = measure_operator(s, MeasureSpec{{Atom{1.1, 1.0}}, std::nullopt}).matrix();
  auto k = kernel(s, KernelPoint::boundary(1.1));
  EXPECT_LE((m - rank_one_matrix(k, k)).norm(), 1e-10);
}

TEST(Measure, LebesgueDensityGivesIdentity) {
  auto s = ModelSpace::create(InnerFunction::monomial(5));
  MeasureSpec mu;
  mu.density = CircleFunction::constant(s.grid(), 1.0);
  EXPECT_LE((measure_operator(s, mu).matrix() - Eigen::MatrixXcd::Identity(5, 5)).norm(), 1e-12);
}

TEST(Rho, ConstantSymbolHasRhoOne) {
  auto s = ModelSpace::create(InnerFunction::monomial(6));
  auto a = build(s, SymbolSpec::polynomial(FourierPolynomial({{0, 1.0}})));
  auto samples = default_sample_set(s.theta(), 6, 16);
  EXPECT_NEAR(rho_r(a, samples), 1.0, 1e-12);
  EXPECT_NEAR(rho_d(a, samples), 1.0, 1e-12);
  EXPECT_NEAR(operator_norm(a), 1.0, 1e-12);
}

TEST(Rho, BoundedByOperatorNorm) {
  std::mt19937_64 rng(26);
  auto s = ModelSpace::create(random_blaschke(rng, 7));
  auto a = build(s, random_pair(rng, s));
  EXPECT_LE(rho(a, default_sample_set(s.theta(), 8, 24)), operator_norm(a) * (1 + 1e-10));
}

TEST(Rho, RotationTableMatchesDenseTable) {
  auto s = ModelSpace::create(InnerFunction::monomial(12));
  FourierPolynomial p({{-5, {1, 2}}, {0, 0.5}, {7, {0, -1}}});
  auto a = build(s, SymbolSpec::polynomial(p));
  auto fast = rho_rotation_table(a, 5, 32);
  auto dense = rho_table(a, rotation_closed_sample_set(5, 32));
  ASSERT_EQ(fast.size(), dense.size());
  for (std::size_t i = 0; i < fast.size(); ++i) {
    EXPECT_NEAR(fast[i].kernel, dense[i].kernel, 1e-12);
    EXPECT_NEAR(fast[i].dq, dense[i].dq, 1e-12);
  }
}

TEST(Norm, PowerIterationAgreesWithSvdInTruncatedMode) {
  auto th = InnerFunction::monomial(10);
  FourierPolynomial p({{-2, 1.0}, {1, {0, 0.5}}});
  const double exact = operator_norm(build(ModelSpace::create(th), SymbolSpec::polynomial(p)));
  const double trunc = operator_norm(build(ModelSpace::create(th, {256, SpaceMode::Truncated}), SymbolSpec::polynomial(p)),
                                     {1e-12, 5000});
  EXPECT_NEAR(trunc, exact, 1e-6);
}

TEST(Hankel, AnalyticSymbolFactorization) {
  std::mt19937_64 rng(27);
  auto s = ModelSpace::create(random_blaschke(rng, 6));
  FourierPolynomial p({{0, 1.0}, {2, {0.5, 0.5}}, {5, -1.0}});
  auto a = build(s, SymbolSpec::polynomial(p));
  EXPECT_LE(hankel_factor_check(a, random_element(rng, s)), 1e-10);
  auto b = build(s, SymbolSpec::polynomial(FourierPolynomial({{-1, 1.0}})));
  EXPECT_THROW(hankel_factor_check(b, random_element(rng, s)), ValidationError);
}
