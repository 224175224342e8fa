#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ttolab/errors.hpp"
#include "ttolab/modelspace.hpp"

using namespace ttolab;
using testutil::random_blaschke;
using testutil::random_disk;
using testutil::random_element;

namespace {
ModelSpace sample_space(std::uint64_t seed, int degree) {
  std::mt19937_64 rng(seed);
  return ModelSpace::create(random_blaschke(rng, degree));
}
}  // namespace

TEST(ModelSpace, ModeSelection) {
  EXPECT_TRUE(ModelSpace::create(InnerFunction::monomial(4)).exact());
  EXPECT_EQ(ModelSpace::create(InnerFunction::monomial(4)).dimension(), 4);
  auto s = ModelSpace::create(InnerFunction::singular({{0.0, 1.0}}));
  EXPECT_FALSE(s.exact());
  EXPECT_EQ(s.dimension(), -1);
  EXPECT_THROW(ModelSpace::create(InnerFunction::singular({{0.0, 1.0}}), {0, SpaceMode::Exact}), DomainError);
}

TEST(ModelSpace, BasisIsOrthonormal) {
  auto s = sample_space(1, 9);
  auto B = s.basis_samples(s.grid());
  Eigen::MatrixXcd G = B->adjoint() * (*B) / double(s.grid());
  EXPECT_LE((G - Eigen::MatrixXcd::Identity(9, 9)).norm(), 1e-10);
}

TEST(ModelSpace, MonomialBasisIsPowers) {
  auto s = ModelSpace::create(InnerFunction::monomial(3));
  auto v = s.basis_values(cd(0.5, 0.1));
  EXPECT_NEAR(std::abs(v(0) - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(v(2) - std::pow(cd(0.5, 0.1), 2)), 0, 1e-15);
}

TEST(ModelSpace, ReproducingProperty) {
  std::mt19937_64 rng(2);
  auto s = sample_space(3, 8);
  auto f = random_element(rng, s);
  for (int i = 0; i < 30; ++i) {
    const cd l = random_disk(rng, 0.95);
    auto k = kernel(s, KernelPoint::interior(l));
    EXPECT_NEAR(std::abs(inner_product(f, k) - f(l)), 0, 1e-10 * f.norm());
  }
}

TEST(ModelSpace, KernelNormMatchesClosedForm) {
  std::mt19937_64 rng(4);
  auto s = sample_space(5, 7);
  for (int i = 0; i < 10; ++i) {
    const auto pt = KernelPoint::interior(random_disk(rng));
    EXPECT_NEAR(std::pow(kernel(s, pt).norm(), 2), kernel_norm2(s.theta(), pt.p), 1e-10);
    EXPECT_NEAR(normalized_kernel(s, pt).norm(), 1.0, 1e-12);
  }
}

TEST(ModelSpace, KernelMatchesReferenceValue) {
  auto th = InnerFunction::blaschke({{DiskPoint::from_complex(0.5), 1},
                                     {DiskPoint::from_complex(cd(0.3, 0.4)), 2},
                                     {DiskPoint::from_complex(cd(0, -0.2)), 1}});
  auto s = ModelSpace::create(th);
  auto k = kernel(s, KernelPoint::interior(cd(-0.4, 0.25)));
  const cd v = k(cd(0.1, 0.7));
  EXPECT_NEAR(v.real(), 1.0530330689762912428, 1e-12);
  EXPECT_NEAR(v.imag(), -0.38968193403275396907, 1e-12);
}

TEST(ModelSpace, ConjugationIsAnInvolution) {
  std::mt19937_64 rng(6);
  auto s = sample_space(7, 10);
  auto f = random_element(rng, s);
  EXPECT_LE((omega(omega(f)).coeffs() - f.coeffs()).norm(), 1e-10 * f.norm());
  // antilinear isometry
  EXPECT_NEAR(omega(f).norm(), f.norm(), 1e-10 * f.norm());
  auto g = random_element(rng, s);
  EXPECT_NEAR(std::abs(inner_product(omega(f), omega(g)) - inner_product(g, f)), 0, 1e-10 * f.norm() * g.norm());
}

TEST(ModelSpace, ConjugationCommutesWithProjection) {
  std::mt19937_64 rng(8);
  auto s = sample_space(9, 6);
  const int n = s.grid();
  std::normal_distribution<double> g;
  std::vector<cd> smp(n);
  for (auto& v : smp) v = {g(rng), g(rng)};
  auto f = CircleFunction::from_samples(smp);
  auto lhs = omega(project(s, f));
  auto rhs = project(s, omega(s, f));
  EXPECT_LE((lhs.coeffs() - rhs.coeffs()).norm(), 1e-9 * l2_norm(f));
}

TEST(ModelSpace, DifferenceQuotientIsConjugateKernel) {
  auto s = sample_space(10, 6);
  const auto pt = KernelPoint::interior(cd(0.2, -0.6));
  EXPECT_LE((difference_quotient(s, pt).coeffs() - omega(kernel(s, pt)).coeffs()).norm(), 1e-11);
}

TEST(ModelSpace, BoundaryKernelNeedsAngularDerivative) {
  auto s = ModelSpace::create(InnerFunction::monomial(4));
  auto k = kernel(s, KernelPoint::boundary(0.3));
  EXPECT_NEAR(std::pow(k.norm(), 2), 4.0, 1e-12);  // |Theta'| = N on the circle
  auto t = ModelSpace::create(InnerFunction::singular({{0.3, 1.0}}), {1024, SpaceMode::Truncated});
  EXPECT_THROW(kernel(t, KernelPoint::boundary(0.3)), DomainError);
}

TEST(ModelSpace, TruncatedAgreesWithExactOnPolynomialSpace) {
  auto th = InnerFunction::monomial(6);
  auto e = ModelSpace::create(th);
  auto t = ModelSpace::create(th, {256, SpaceMode::Truncated});
  const auto pt = KernelPoint::interior(cd(0.3, 0.5));
  auto ke = kernel(e, pt).to_circle(256), kt = kernel(t, pt).to_circle(256);
  EXPECT_LE(l2_norm(ke - kt), 1e-12);
}

// Theta times an analytic function aliases on a finite grid, so P is idempotent only up to the
// reported residual, which must shrink as the grid grows
TEST(ModelSpace, TruncatedProjectionResidualShrinks) {
  auto th = InnerFunction::singular({{0.1, 0.5}});
  double prev = 1.0;
  for (int n : {1024, 4096, 16384}) {
    auto s = ModelSpace::create(th, {n, SpaceMode::Truncated});
    auto k = kernel_samples(th, KernelPoint::interior(cd(0.1, 0.2)), n);
    auto f = project(s, k);
    auto p1 = project_circle(s, k);
    auto p2 = project_circle(s, p1);
    EXPECT_NEAR(f.residual(), l2_norm(p1 - p2) / l2_norm(p1), 1e-12);
    EXPECT_LT(f.residual(), prev);
    prev = f.residual();
  }
  EXPECT_LT(prev, 0.05);
}

TEST(ModelSpace, InteriorPointValidation) {
  EXPECT_THROW(KernelPoint::interior(cd(1.0, 0.0)), ValidationError);
}
