#include <gtest/gtest.h>

#include <random>

#include "ttolab/boundedsymbol.hpp"
#include "ttolab/errors.hpp"

using namespace ttolab;

TEST(Rational, Arithmetic) {
  Rational a(2, 4), b(1, 3);
  EXPECT_EQ(a, Rational(1, 2));
  EXPECT_EQ(a + b, Rational(5, 6));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 6));
  EXPECT_EQ(Rational(3, -6), Rational(-1, 2));
}

TEST(Fejer, KernelCoefficientsAndNorm) {
  EXPECT_EQ(fejer_hat(4, 1), Rational(3, 4));
  EXPECT_EQ(fejer_hat(4, 4), Rational(0));
  EXPECT_EQ(fejer_hat(4, -5), Rational(0));
  for (int m : {1, 5, 32}) EXPECT_NEAR(l1_norm(fejer_kernel(m)), 1.0, 1e-10);
}

TEST(Fejer, WindowsSumToOneOnTheirRange) {
  for (int N : {15, 16, 17, 64}) {
    auto w = fejer_windows(N);
    EXPECT_EQ(w.M, (N + 1) / 3);
    EXPECT_TRUE(w.partition_failures(3 * w.M).empty()) << N;
    EXPECT_LE(l1_norm(w.eta2), 3.0 + 1e-10);
  }
  // at |n| = N the windows miss when N = 1 mod 3
  auto w = fejer_windows(16);
  auto f = w.partition_failures(16);
  EXPECT_EQ(f, (std::vector<int>{-16, 16}));
}

TEST(Fejer, SplitReassembles) {
  FourierPolynomial p({{-10, 1.0}, {-3, {0, 2}}, {0, 0.5}, {4, {1, -1}}, {10, 3.0}});
  auto s = fejer_split(p, 16);
  for (int k = -12; k <= 12; ++k) {
    const cd sum = s.phi1[k] + s.phi2[k] + s.phi3[k];
    EXPECT_NEAR(std::abs(sum - p[k]), 0, 1e-13) << k;
  }
  EXPECT_GE(s.phi2.min_index(), 0);  // analytic part
  EXPECT_LE(s.phi3.max_index(), 0);  // coanalytic part
  EXPECT_THROW(fejer_split(FourierPolynomial({{17, 1.0}}), 16), DomainError);
}

TEST(CF, GoldenRatio) {
  auto r = minimal_analytic_extension({1.0, 1.0});
  EXPECT_NEAR(r.norm, (1 + std::sqrt(5.0)) / 2, 1e-12);
  EXPECT_LE(r.taylor_error, 1e-10);
  EXPECT_LE(r.modulus_spread, 1e-6);
}

TEST(CF, NormIsLowerToeplitzSpectralNorm) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  std::vector<cd> c(10);
  for (auto& v : c) v = {g(rng), g(rng)};
  auto r = minimal_analytic_extension(c);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(lower_toeplitz(c));
  EXPECT_NEAR(r.norm, svd.singularValues()(0), 1e-12);
  EXPECT_NEAR(r.sup_norm, r.norm, 1e-6 * r.norm);
  EXPECT_LE(r.taylor_error, 1e-8);
}

TEST(CF, DegenerateInputFallsBackToPolynomial) {
  auto r = minimal_analytic_extension({1.0, 0.0, 0.0});
  EXPECT_NEAR(r.norm, 1.0, 1e-14);
  EXPECT_LE(r.taylor_error, 1e-12);
}

TEST(Toeplitz, SymbolFromDiagonals) {
  auto s = ModelSpace::create(InnerFunction::monomial(4));
  FourierPolynomial p({{-3, 1.0}, {1, {0, 2}}});
  auto m = build(s, SymbolSpec::polynomial(p)).matrix();
  auto q = toeplitz_symbol(m);
  EXPECT_NEAR(std::abs(q[-3] - 1.0), 0, 1e-14);
  EXPECT_NEAR(std::abs(q[1] - cd(0, 2)), 0, 1e-14);
  m(0, 1) += 1.0;
  EXPECT_THROW(toeplitz_symbol(m), DomainError);
}

TEST(Assemble, ReproducesOperator) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  const int N = 12;
  auto s = ModelSpace::create(InnerFunction::monomial(N));
  FourierPolynomial p;
  for (int k = -(N - 1); k < N; ++k) p.set(k, {g(rng), g(rng)});
  auto a = build(s, SymbolSpec::polynomial(p));
  auto r = assemble_bounded_symbol(a);
  EXPECT_LE(r.build_error, 1e-10);
  EXPECT_GE(r.sup_norm, operator_norm(a) * (1 - 1e-9));
  EXPECT_GT(r.measured_constant, 0.0);
  EXPECT_LE(r.rho, operator_norm(a) * (1 + 1e-10));
}

TEST(Transport, SameMatrixNewSpace) {
  auto s = ModelSpace::create(InnerFunction::monomial(5));
  auto a = build(s, SymbolSpec::polynomial(FourierPolynomial({{-1, 1.0}, {2, 0.5}})));
  auto t = blaschke_transport(a, cd(0.3, -0.2));
  EXPECT_EQ(t.space().dimension(), 5);
  EXPECT_LE((t.matrix() - a.matrix()).norm(), 0.0);
  EXPECT_NEAR(operator_norm(t), operator_norm(a), 1e-12);
}

TEST(Rotation, KernelCovarianceAndOperatorConjugation) {
  EXPECT_LE(rotation_covariance_check(8, 0.7, {cd(0.3, 0.1), cd(-0.5, 0.4)}), 1e-12);
  EXPECT_LE(rotation_operator_check(FourierPolynomial({{-2, 1.0}, {3, {0, 1}}}), 8, 1.3), 1e-12);
}

TEST(CentralBound, SupNormDominatedByRho) {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> g;
  const int M = 4, N = 12;
  FourierPolynomial p;
  for (int k = -(M - 1); k < M; ++k) p.set(k, {g(rng), g(rng)});
  auto phi = p.on_grid(256);
  auto r = central_bound_check(phi, InnerFunction::monomial(M), InnerFunction::monomial(N),
                               rotation_closed_sample_set(24, 64));
  EXPECT_LE(r.sup_norm, 1.05 * r.two_rho_r);
  EXPECT_THROW(central_bound_check(phi, InnerFunction::monomial(M), InnerFunction::monomial(20),
                                   rotation_closed_sample_set(4, 8)),
               DomainError);
}
