#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "ttolab/circlefn.hpp"
#include "ttolab/errors.hpp"

using namespace ttolab;

TEST(BoundaryGrid, RejectsBadSizes) {
  EXPECT_THROW(BoundaryGrid(8), ValidationError);
  EXPECT_THROW(BoundaryGrid(48), ValidationError);
  EXPECT_NO_THROW(BoundaryGrid(16));
  EXPECT_EQ(BoundaryGrid(64).point(16), cd(0.0, 1.0));
}

TEST(CircleFunction, AnalysisSynthesisRoundTrip) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::vector<cd> s(128);
  for (auto& v : s) v = {g(rng), g(rng)};
  auto f = CircleFunction::from_samples(s);
  auto back = synthesize(analyze(f));
  double err = 0, nrm = 0;
  for (int j = 0; j < 128; ++j) {
    err += std::norm(back[j] - s[j]);
    nrm += std::norm(s[j]);
  }
  EXPECT_LE(std::sqrt(err / nrm), 1e-12);
}

TEST(CircleFunction, MonomialCoefficients) {
  auto f = CircleFunction::monomial(64, -3);
  EXPECT_NEAR(std::abs(f.coeff(-3) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.coeff(3)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.coeff(61)), 1.0, 1e-14);  // index taken modulo n
}

TEST(CircleFunction, RieszProjectionsSplit) {
  FourierPolynomial p({{-3, {1, 2}}, {0, {0.5, 0}}, {2, {0, -1}}});
  auto f = p.on_grid(64);
  auto plus = riesz_plus(f), minus = riesz_minus(f);
  EXPECT_NEAR(std::abs(plus.coeff(0) - 0.5), 0, 1e-14);
  EXPECT_NEAR(std::abs(plus.coeff(-3)), 0, 1e-14);
  EXPECT_NEAR(std::abs(minus.coeff(-3) - cd(1, 2)), 0, 1e-14);
  EXPECT_NEAR(l2_norm((plus + minus) - f), 0, 1e-13);
  EXPECT_NEAR(negative_content(plus), 0, 1e-14);
}

TEST(CircleFunction, PaddedProductIsExact) {
  FourierPolynomial a({{-5, {1, 1}}, {7, {2, 0}}}), b({{3, {0, 1}}, {-6, {1, -1}}});
  auto prod = multiply_padded(a.on_grid(32), b.on_grid(32));
  // direct convolution
  std::map<int, cd> ref;
  for (auto& [i, x] : a.coeffs())
    for (auto& [j, y] : b.coeffs()) ref[i + j] += x * y;
  for (auto& [k, v] : ref) EXPECT_NEAR(std::abs(prod.coeff(k) - v), 0, 1e-13) << k;
}

TEST(CircleFunction, ProductRejectsBandwidthOverflow) {
  auto f = CircleFunction::from_samples(FourierPolynomial({{10, 1.0}}).on_grid(32).samples(), 10);
  EXPECT_THROW(multiply(f, f), DomainError);
}

TEST(CircleFunction, LpNormsOfUnimodularAndConstant) {
  auto z = CircleFunction::monomial(64, 5);
  for (double p : {1.0, 2.0, 3.5}) EXPECT_NEAR(lp_norm(z, p), 1.0, 1e-13);
  auto c = CircleFunction::constant(64, 2.0);
  EXPECT_NEAR(lp_norm(c, 3.0), 2.0, 1e-13);
  EXPECT_THROW(lp_norm(c, 0.5), ValidationError);
}

TEST(CircleFunction, PoissonExtension) {
  FourierPolynomial p({{2, 1.0}, {-1, {0, 1}}});
  auto f = p.on_grid(64);
  const cd z(0.3, 0.4);
  EXPECT_NEAR(std::abs(poisson_extension(f, z) - (z * z + cd(0, 1) * std::conj(z))), 0, 1e-13);
}

TEST(CircleFunction, InnerProductIsNormalized) {
  auto a = CircleFunction::monomial(64, 2), b = CircleFunction::monomial(64, 3);
  EXPECT_NEAR(std::abs(inner_product(a, a) - 1.0), 0, 1e-14);
  EXPECT_NEAR(std::abs(inner_product(a, b)), 0, 1e-14);
}

TEST(CircleFunction, RotationShiftsPhases) {
  FourierPolynomial p({{3, 1.0}});
  auto r = rotate(p.on_grid(64), 0.7);
  EXPECT_NEAR(std::abs(r.coeff(3) - std::polar(1.0, 2.1)), 0, 1e-14);
}

TEST(FourierPolynomial, DropsZeroCoefficients) {
  FourierPolynomial p;
  p.set(3, 1.0);
  p.set(3, 0.0);
  EXPECT_TRUE(p.empty());
  p.set(-2, 1.0);
  EXPECT_EQ(p.bandwidth(), 2);
}
