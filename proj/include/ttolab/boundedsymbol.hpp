#pragma once

#include <cstdint>
#include <vector>

#include "ttolab/circlefn.hpp"
#include "ttolab/tto.hpp"

namespace ttolab {

// exact rational p/q, q > 0, reduced
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  Rational() = default;
  Rational(std::int64_t p, std::int64_t q = 1);
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Fourier coefficient of the Fejer kernel F_m at n: 1 - |n|/m for |n| <= m
Rational fejer_hat(int m, int n);
FourierPolynomial fejer_kernel(int m);

struct FejerWindowSet {
  int N = 0;
  int M = 0;
  FourierPolynomial eta1, eta2, eta3;
  Rational eta_hat(int i, int n) const;  // i = 1, 2, 3
  // indices |n| <= range where eta1^ + eta2^ + eta3^ != 1
  std::vector<int> partition_failures(int range) const;
};
FejerWindowSet fejer_windows(int N);
// L^1 norm by quadrature on an n-point grid
double l1_norm(const FourierPolynomial& p, int n = 1 << 16);

struct FejerSplit {
  FourierPolynomial phi1, phi2, phi3;
};
FejerSplit fejer_split(const FourierPolynomial& phi, int N);

struct CFExtension {
  CircleFunction phi0;
  double norm = 0;          // sigma_max of the lower-triangular Toeplitz matrix
  double sup_norm = 0;      // max |phi0| on the grid
  double taylor_error = 0;  // max |phi0^(k) - c_k|, k < N, before the final roundoff correction
  double modulus_spread = 0;  // max ||phi0| - sigma|
  bool suboptimal = false;  // degenerate top singular value: phi0 is the polynomial itself
};
Eigen::MatrixXcd lower_toeplitz(const std::vector<cd>& c);
CFExtension minimal_analytic_extension(const std::vector<cd>& c, int grid = 0);

struct CentralBound {
  double sup_norm = 0;
  double two_rho_r = 0;
};
CentralBound central_bound_check(const CircleFunction& phi, const InnerFunction& small, const InnerFunction& big,
                                 const std::vector<DiskPoint>& samples);

struct BoundedSymbolResult {
  CircleFunction phi0;
  double sup_norm = 0;
  CircleFunction phi1, phi2, phi3;  // phi1 and the replaced analytic / coanalytic parts
  double rho = 0;
  double measured_constant = 0;
  double build_error = 0;  // max-entry difference between build(phi0) and the input matrix
  bool suboptimal = false;
};
// symbol coefficients read from the diagonals of a matrix on K_{z^N}; NotToeplitz otherwise
FourierPolynomial toeplitz_symbol(const Eigen::MatrixXcd& m);
BoundedSymbolResult assemble_bounded_symbol(const TTOperator& a, const std::vector<DiskPoint>& samples);
// rho taken as the max over a precomputed table
BoundedSymbolResult assemble_bounded_symbol(const TTOperator& a, const std::vector<RhoRow>& table);
BoundedSymbolResult assemble_bounded_symbol(const TTOperator& a);

// U A U* on K_{b_alpha^N}: the same matrix read in the Takenaka-Malmquist basis
TTOperator blaschke_transport(const TTOperator& a, cd alpha);
// samples of phi o b_alpha on an n-point grid
CircleFunction compose_with_blaschke(const FourierPolynomial& phi, cd alpha, int n);

// max over sampled lambda of |tau_t h_lambda - h_{e^{-it} lambda}| and the difference-quotient analogue,
// Theta = z^N
double rotation_covariance_check(int N, double t, const std::vector<cd>& lambdas, int grid = 256);
// || tau_{-t} A_phi tau_t - A_{phi(e^{-it} .)} || on K_{z^N}
double rotation_operator_check(const FourierPolynomial& phi, int N, double t);

}  // namespace ttolab
