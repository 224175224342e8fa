#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ttolab/errors.hpp"
#include "ttolab/recovery.hpp"

using namespace ttolab;
using testutil::random_blaschke;
using testutil::random_element;

TEST(Recover, RoundTripPairSymbol) {
  std::mt19937_64 rng(31);
  auto s = ModelSpace::create(random_blaschke(rng, 7));
  auto plus = random_element(rng, s), minus = random_element(rng, s);
  auto op = build(s, SymbolSpec::pair(plus, minus));
  auto r = recover(KernelActionOracle::from_operator(op));
  auto ref = renormalize(RecoveredSymbol{plus, minus, 0.0}, r.mu);
  EXPECT_LE((r.plus.coeffs() - ref.plus.coeffs()).norm(), 1e-8);
  EXPECT_LE((r.minus.coeffs() - ref.minus.coeffs()).norm(), 1e-8);
  EXPECT_LE(r.residual, 1e-8);
  EXPECT_GT(r.measured_constant, 0.0);
}

TEST(Recover, AgreesWithBoundarySystem) {
  std::mt19937_64 rng(32);
  auto s = ModelSpace::create(random_blaschke(rng, 5));
  auto op = build(s, SymbolSpec::pair(random_element(rng, s), random_element(rng, s)));
  auto oracle = KernelActionOracle::from_operator(op);
  auto a = recover(oracle);
  auto b = renormalize(recover_via_k0(oracle), a.mu);
  EXPECT_LE((a.plus.coeffs() - b.plus.coeffs()).norm(), 1e-8);
  EXPECT_LE((a.minus.coeffs() - b.minus.coeffs()).norm(), 1e-8);
}

TEST(Recover, FromKernelActionTable) {
  std::mt19937_64 rng(33);
  auto s = ModelSpace::create(random_blaschke(rng, 4));
  auto op = build(s, SymbolSpec::pair(random_element(rng, s), random_element(rng, s)));
  std::vector<std::pair<cd, Eigen::VectorXcd>> table;
  for (int i = 0; i < 12; ++i) {
    const cd l = testutil::random_disk(rng, 0.8);
    table.emplace_back(l, op.apply(kernel(s, KernelPoint::interior(l))).coeffs());
  }
  double fit = 1;
  auto oracle = KernelActionOracle::from_table(s, table, &fit);
  EXPECT_LE(fit, 1e-10);
  auto r = recover(oracle);
  EXPECT_LE((build(s, SymbolSpec::pair(r.plus, r.minus)).matrix() - op.matrix()).norm(), 1e-8);
}

TEST(Recover, DegenerateNormalizationPoint) {
  auto th = InnerFunction::blaschke_from_points({cd(0.5, 0.0), cd(-0.3, 0.2)});
  auto s = ModelSpace::create(th);
  auto op = build(s, SymbolSpec::polynomial(FourierPolynomial({{0, 1.0}})));
  RecoverOptions o;
  o.mu = cd(0.5, 0.0);
  EXPECT_THROW(recover(KernelActionOracle::from_operator(op), o), DomainError);
}

TEST(Recover, InconsistentOracleDetected) {
  auto s = ModelSpace::create(InnerFunction::monomial(4));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 3) = 1.0;  // not a Toeplitz matrix, hence not a truncated Toeplitz operator on K_{z^4}
  m(1, 0) = 2.0;
  EXPECT_THROW(recover(KernelActionOracle::from_operator(TTOperator::from_matrix(s, m))), DomainError);
}

TEST(RankOne, SymbolProducesKernelTensor) {
  std::mt19937_64 rng(34);
  auto s = ModelSpace::create(random_blaschke(rng, 8));
  for (int i = 0; i < 5; ++i) {
    const auto pt = KernelPoint::interior(testutil::random_disk(rng, 0.9));
    auto a = build(s, rank_one_symbol(s, pt)).matrix();
    auto b = rank_one_matrix(difference_quotient(s, pt), kernel(s, pt));
    EXPECT_LE((a - b).norm(), 1e-8 * std::max(1.0, b.norm()));
  }
}

TEST(ShiftResolvent, PolynomialDivision) {
  FourierPolynomial p({{0, 1.0}, {1, 2.0}, {2, 3.0}});
  auto q = shift_resolvent(p.on_grid(64), 0.5);
  // (f - f(1/2))/(z - 1/2) = 3 z + 3.5
  EXPECT_NEAR(std::abs(q.coeff(0) - 3.5), 0, 1e-13);
  EXPECT_NEAR(std::abs(q.coeff(1) - 3.0), 0, 1e-13);
  EXPECT_NEAR(std::abs(q.coeff(2)), 0, 1e-13);
}

TEST(LpBound, SymbolEstimateHolds) {
  std::mt19937_64 rng(35);
  auto s = ModelSpace::create(random_blaschke(rng, 5));
  auto plus = random_element(rng, s), minus = random_element(rng, s);
  auto sym = SymbolSpec::pair(plus, minus).on_grid(s.grid());
  auto std_sym = standard_symbol(s, sym);
  auto b = symbol_lp_bound_check(s, std_sym, sym, 4.0);
  EXPECT_GT(b.rhs, 0.0);
  EXPECT_TRUE(std::isfinite(b.ratio));
}
