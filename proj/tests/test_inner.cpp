#include <gtest/gtest.h>

#include "ttolab/errors.hpp"
#include "ttolab/inner.hpp"

using namespace ttolab;

// reference values computed with mpmath at 40 digits

TEST(Inner, MonomialAndSingleZero) {
  EXPECT_NEAR(std::abs(eval(InnerFunction::monomial(3), cd(0.5)) - 0.125), 0, 1e-15);
  auto b = InnerFunction::blaschke_from_points({cd(0.3, -0.2)});
  EXPECT_NEAR(std::abs(eval(b, cd(0.3, -0.2))), 0, 1e-15);
}

TEST(Inner, BlaschkeWithMultiplicityMatchesReference) {
  auto b = InnerFunction::blaschke({{DiskPoint::from_complex(0.5), 1},
                                    {DiskPoint::from_complex(cd(0.3, 0.4)), 2},
                                    {DiskPoint::from_complex(cd(0, -0.2)), 1}});
  const cd v = eval(b, cd(0.1, 0.7));
  EXPECT_NEAR(v.real(), -0.12416323029066973348, 1e-14);
  EXPECT_NEAR(v.imag(), 0.10531238018271761975, 1e-14);
  EXPECT_EQ(b.zero_count(), 4);
}

TEST(Inner, SingularMatchesReference) {
  auto s = InnerFunction::singular({{0.0, 1.0}, {2.0, 0.5}});
  const cd v = eval(s, cd(0.1, 0.7));
  EXPECT_NEAR(v.real(), 0.3004086497048174427, 1e-14);
  EXPECT_NEAR(v.imag(), 0.047013279711445954783, 1e-14);
  EXPECT_NEAR(std::abs(eval(InnerFunction::singular({{1.0, 0.7}}), cd(0.0)) - std::exp(-0.7)), 0, 1e-15);
}

TEST(Inner, PowerMatchesReference) {
  auto p = power(InnerFunction::singular({{0.0, 1.0}}), 0.3);
  const cd v = eval(p, cd(0.1, 0.7));
  EXPECT_NEAR(v.real(), 0.84492452616780241974, 1e-14);
  EXPECT_NEAR(v.imag(), -0.28288726181655098139, 1e-14);
  EXPECT_THROW(power(InnerFunction::singular({{0.0, 1.0}}), 1.5), ValidationError);
}

TEST(Inner, UnimodularOnTheCircle) {
  auto th = InnerFunction::product({InnerFunction::monomial(2), InnerFunction::blaschke_from_points({0.9, cd(0, 0.5)}),
                                    InnerFunction::singular({{1.0, 0.3}})});
  for (double t = 0.05; t < 6.2; t += 0.37) EXPECT_NEAR(std::abs(boundary_value(th, t)), 1.0, 1e-12);
  EXPECT_THROW(boundary_value(th, 1.0), DomainError);
  EXPECT_EQ(boundary_sample(th, 1.0), cd(0.0));
}

TEST(Inner, InvalidSpecsRejected) {
  EXPECT_THROW(InnerFunction::monomial(0), ValidationError);
  EXPECT_THROW(InnerFunction::blaschke_from_points({cd(1.0, 0.0)}), ValidationError);
  EXPECT_THROW(InnerFunction::singular({{0.0, -1.0}}), ValidationError);
  EXPECT_THROW(InnerFunction::product({}), ValidationError);
}

TEST(Cohn, SingleZeroAtOrigin) {
  auto b = InnerFunction::blaschke_from_points({0.0});
  EXPECT_NEAR(cohn_sum(b, 0.0, 2.0, 1), 1.0, 1e-15);
}

TEST(Cohn, FamilyPartialSumsMatchReference) {
  TangentialBlaschkeFamily fam;
  EXPECT_NEAR(cohn_sum(fam, 0.0, 2.0, 20), 2.0248190650742569546, 1e-12);
  EXPECT_NEAR(cohn_sum(fam, 0.0, 3.0, 20), 40.171279629651844958, 1e-10);
  EXPECT_NEAR(cohn_sum(TangentialAtomFamily(), 0.0, 2.0, 20), 1.0120395301706183654, 1e-12);
}

TEST(Cohn, PartialSumsMonotone) {
  auto s = cohn_partial_sums(TangentialBlaschkeFamily(), 0.0, 3.0, 30);
  for (std::size_t k = 1; k < s.size(); ++k) EXPECT_GE(s[k], s[k - 1]);
  EXPECT_THROW(cohn_sum(InnerFunction::singular({{0.5, 1.0}}), 0.5, 2.0, 1), DomainError);
}

TEST(AngularDerivative, FamilyHasOne) {
  auto ad = has_angular_derivative(TangentialBlaschkeFamily(), 0.0);
  ASSERT_EQ(ad.verdict, AngularDerivative::Verdict::Yes);
  // S_20 plus at most the tail bound 2.85 * 2^-20
  EXPECT_GE(ad.value, 2.0248190650742569546 - 1e-12);
  EXPECT_LE(ad.value, 2.0248190650742569546 + 2.85 * std::ldexp(1.0, -20));
}

TEST(AngularDerivative, RadialFamilyHasNone) {
  auto ad = has_angular_derivative(RadialBlaschkeFamily(), 0.0);
  EXPECT_EQ(ad.verdict, AngularDerivative::Verdict::No);
}

TEST(AngularDerivative, FiniteProductValueIsThetaPrime) {
  auto b = InnerFunction::blaschke_from_points({cd(0.2, 0.3), cd(-0.5, 0.1)});
  const double t = 0.8;
  // numerical derivative along the circle: |d/dt Theta(e^{it})| = |Theta'|
  const double h = 1e-6;
  const double num = std::abs(boundary_value(b, t + h) - boundary_value(b, t - h)) / (2 * h);
  EXPECT_NEAR(boundary_derivative_modulus(b, t), num, 1e-8);
  EXPECT_NEAR(has_angular_derivative(b, t).value, num, 1e-8);
}

TEST(Kernel, ValueAndNormMatchReference) {
  auto b = InnerFunction::blaschke({{DiskPoint::from_complex(0.5), 1},
                                    {DiskPoint::from_complex(cd(0.3, 0.4)), 2},
                                    {DiskPoint::from_complex(cd(0, -0.2)), 1}});
  const auto lam = DiskPoint::from_complex(cd(-0.4, 0.25));
  EXPECT_NEAR(kernel_norm2(b, lam), 1.2310300439984625517, 1e-13);
}

TEST(Kernel, NumeratorKeepsPrecisionNearTheCircle) {
  // Theta = z: 1 - conj(lambda) z at lambda = (1 - 1e-14), z = boundary point at offset 1e-12
  auto th = InnerFunction::monomial(1);
  DiskPoint lam{0.0, 1e-14};
  BoundaryNode z{0.0, 1e-12, 0.0};
  const cd ref = 1.0 - (1.0 - 1e-14) * std::polar(1.0, 1e-12);
  const cd got = kernel_numerator(th, lam, z);
  // ref itself loses digits in double; compare with the series 1e-14 - i 1e-12
  EXPECT_NEAR(got.real(), 1e-14 + 0.5e-24, 1e-26);
  EXPECT_NEAR(got.imag(), -1e-12 * (1 - 1e-14), 1e-26);
  (void)ref;
}

TEST(Divides, MonomialsAndZeros) {
  EXPECT_TRUE(divides(InnerFunction::monomial(2), InnerFunction::monomial(5)));
  EXPECT_FALSE(divides(InnerFunction::monomial(5), InnerFunction::monomial(2)));
  auto a = InnerFunction::blaschke_from_points({cd(0.2, 0.1)});
  auto ab = InnerFunction::product({a, InnerFunction::monomial(1)});
  EXPECT_TRUE(divides(a, ab));
  EXPECT_FALSE(divides(ab, a));
}

TEST(Truncate, FamilyTruncationHasKZeros) {
  auto th = truncate(TangentialBlaschkeFamily(), 12);
  EXPECT_EQ(th.zero_count(), 12);
  EXPECT_DOUBLE_EQ(th.zeros()[2].a.deficit, std::ldexp(1.0, -9));
}
