#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ttolab/counterexamples.hpp"
#include "ttolab/errors.hpp"

using namespace ttolab;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST(KernelNorms, OriginKernelOfVanishingTheta) {
  auto th = InnerFunction::blaschke_from_points({0.0, cd(0.5, 0.2)});
  EXPECT_NEAR(growth_ratio(th, DiskPoint{0.0, 1.0}, 3.0), 1.0, 1e-9);
}

TEST(KernelNorms, L2MatchesClosedForm) {
  auto th = truncate(TangentialBlaschkeFamily(), 10);
  for (double d : {0.5, 1e-4, 1e-12, 0.0}) {
    auto k = kernel_norms(th, DiskPoint{0.2, d}, 2.0);
    EXPECT_NEAR(k.l2sq, k.l2sq_closed, 1e-8 * k.l2sq_closed) << d;
    EXPECT_NEAR(k.lp * k.lp, k.l2sq, 1e-8 * k.l2sq);
  }
}

TEST(KernelNorms, L3MatchesIndependentQuadrature) {
  // adaptive mpmath quadrature at 25 digits
  auto th = truncate(TangentialBlaschkeFamily(), 8);
  auto k = kernel_norms(th, DiskPoint::boundary(0.0), 3.0);
  EXPECT_NEAR(k.lp, 2.745768831633, 1e-8);
  EXPECT_NEAR(k.l2sq, 2.01700847098827, 1e-10);
}

TEST(KernelNorms, SupNormOfMonomialKernel) {
  const int N = 9;
  for (double r : {0.0, 0.3, 0.9, 1 - 1e-6}) {
    auto k = kernel_norms(InnerFunction::monomial(N), DiskPoint{0.4, 1 - r}, kInf);
    EXPECT_NEAR(k.lp / k.l2sq_closed, (1 + r) / (1 + std::pow(r, N)), 1e-9) << r;
  }
}

TEST(KernelNorms, SingularThetaUsesDilation) {
  auto th = InnerFunction::singular({{0.0, 1.0}});
  auto k = kernel_norms(th, DiskPoint{0.0, 0.5}, 2.0);
  // dilated kernel norm is close to the closed form
  EXPECT_NEAR(k.l2sq, k.l2sq_closed, 1e-2 * k.l2sq_closed);
  EXPECT_THROW(kernel_norms(th, DiskPoint::boundary(0.0), 2.0), DomainError);
  EXPECT_THROW(kernel_norms(th, DiskPoint{0.0, 0.5}, 0.5), ValidationError);
}

TEST(Families, BlaschkeCertificates) {
  auto f = gen_blaschke_counterexample(3.0, 20);
  EXPECT_EQ(f.terms.size(), 20u);
  EXPECT_TRUE(f.cert.p2_certified);
  EXPECT_LT(f.cert.p2_tail_bound, 1e-5);
  EXPECT_NEAR(f.cert.p2_partial, 2.0248190650742569546, 1e-12);
  EXPECT_EQ(f.cert.p2_cauchy_K, 40);
  EXPECT_GE(f.cert.p_increment_min, 0.5);
  EXPECT_LE(f.cert.p_increment_max, 2.5);
  EXPECT_TRUE(f.cert.p_diverges);
  EXPECT_GT(f.cert.fitted_slope, 1.0);
  EXPECT_NEAR(f.cert.df3_max_step, 0.5, 1e-3);
  EXPECT_THROW(gen_blaschke_counterexample(2.0, 20), ValidationError);
}

TEST(Families, TailBoundDominatesTrueTail) {
  for (long K : {4, 10, 20}) {
    auto f = gen_blaschke_counterexample(3.0, K);
    const double tail = cohn_sum(TangentialBlaschkeFamily(), 0.0, 2.0, 200) - f.cert.p2_partial;
    EXPECT_LE(tail, f.cert.p2_tail_bound) << K;
    auto g = gen_singular_counterexample(3.0, K);
    const double gtail = cohn_sum(TangentialAtomFamily(), 0.0, 2.0, 200) - g.cert.p2_partial;
    EXPECT_LE(gtail, g.cert.p2_tail_bound) << K;
  }
}

TEST(Families, SingularCertificates) {
  auto f = gen_singular_counterexample(3.0, 20);
  double mass = 0;
  for (auto& t : f.terms) mass += t.mass;
  EXPECT_LE(mass, 1.0 / 7.0);
  EXPECT_NEAR(f.cert.p2_partial, 1.0120395301706183654, 1e-12);
  EXPECT_GE(f.cert.p_increment_min, 1.0);
  EXPECT_TRUE(f.cert.p_diverges);
  EXPECT_TRUE(f.cert.df3.empty());
}

TEST(Families, GenericTangentialDominance) {
  auto f = gen_tangential_counterexample(0.5, 3.0, 10);
  EXPECT_GE(f.cert.dominance_min, 0.9);
  EXPECT_TRUE(f.cert.p_diverges);
  EXPECT_LT(f.cert.df3_max_step, 1.0);
  EXPECT_THROW(gen_tangential_counterexample(0.2, 3.0, 10), ValidationError);
}

TEST(Growth, FamilyRatioDoesNotStabilize) {
  auto rep = growth_scan(TangentialBlaschkeFamily(), "family", 0.0, 3.0, {8, 16, 32}, {0x1p-20, 0.0});
  ASSERT_EQ(rep.rows.size(), 6u);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) EXPECT_LE(rep.rows[i].deficit, rep.rows[i - 1].deficit);
  EXPECT_FALSE(rep.ratio_stabilized);
  EXPECT_TRUE(rep.l2_stabilized);
  for (double g : rep.ratio_growth) EXPECT_GT(g, 1.2);
}

TEST(Cls, MonomialRatioBelowTwo) {
  auto rep = cls_ratio_scan(InnerFunction::monomial(12), radial_scan_points(30, 4));
  EXPECT_LE(rep.max_ratio, 2.0 + 1e-9);
  EXPECT_NEAR(rep.rows.front().ratio, 1.0, 1e-12);  // lambda = 0
}

TEST(Cls, FamilyRatioGrowsWithDegree) {
  std::vector<DiskPoint> pts{DiskPoint{0.0, 0x1p-40}};
  double prev = 0;
  for (long K : {8, 16, 32}) {
    auto rep = cls_ratio_scan(truncate(TangentialBlaschkeFamily(), K), pts);
    EXPECT_GT(rep.max_ratio, prev);
    prev = rep.max_ratio;
  }
}

TEST(Rkt, ClosedFormValues) {
  EXPECT_NEAR(rkt_closed_form(std::exp(-2.0), 0.5), 0.268941421369995, 1e-14);
  for (double s : {0.1, 0.5, 0.9})
    for (double y = 0.0; y < 1.0; y += 0.01) EXPECT_LE(rkt_closed_form(y, s), 1 - s + 8 * 2.2e-16);
}

TEST(Rkt, ScanReportsClosedFormAndIsometry) {
  auto th = InnerFunction::singular({{0.0, 1.0}});
  auto rep = rkt_failure_scan(th, 0.5, {cd(0.0), cd(0.3, -0.4)}, 1 << 12);
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_NEAR(rep.rows[0].normsq_closed, 0.268941421369995, 1e-12);
  EXPECT_TRUE(rep.sup_bound_holds);
  for (auto& r : rep.rows) {
    EXPECT_LE(r.identity_err_fine, r.identity_err);
    EXPECT_NEAR(r.isometry_ratio, 1.0, 2e-2);
    EXPECT_NEAR(r.normsq, r.normsq_closed, 2e-2);
  }
  EXPECT_THROW(rkt_failure_scan(InnerFunction::monomial(3), 0.5, {cd(0.0)}, 1024), ValidationError);
  EXPECT_THROW(rkt_failure_scan(th, 1.0, {cd(0.0)}, 1024), ValidationError);
}

TEST(Theorem, GrowthAtThreeStabilityAtTwo) {
  auto v3 = counterex_theorem_check(TangentialBlaschkeFamily(), 0.0, 3.0, {8, 16, 32});
  EXPECT_TRUE(v3.kernel_grows);
  EXPECT_TRUE(v3.symbol_grows);
  EXPECT_TRUE(v3.comparison_holds);
  EXPECT_EQ(v3.verdict, "unbounded (finite signature)");
  auto v2 = counterex_theorem_check(TangentialBlaschkeFamily(), 0.0, 2.0, {8, 16, 32});
  EXPECT_TRUE(v2.stabilizes);
  EXPECT_EQ(v2.verdict, "stable");
  EXPECT_THROW(counterex_theorem_check(RadialBlaschkeFamily(), 0.0, 3.0, {8, 16}), DomainError);
}

TEST(KernelNorms, SupNormAtInteriorPoint) {
  // mpmath: dense scan plus golden-section refinement at 30 digits
  std::vector<BlaschkeZero> z = {{DiskPoint{0.3, 0.01}}, {DiskPoint{-1.0, 0.05}}, {DiskPoint{2.0, 0.001}}};
  auto th = InnerFunction::blaschke(z);
  auto k = kernel_norms(th, DiskPoint::from_complex(cd(0.2, 0.1)), INFINITY);
  EXPECT_NEAR(k.lp, 2.48245281923386771, 1e-9);
}
