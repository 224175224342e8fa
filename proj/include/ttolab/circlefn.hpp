#pragma once

#include <complex>
#include <map>
#include <vector>

namespace ttolab {

using cd = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

class BoundaryGrid {
 public:
  explicit BoundaryGrid(int n);
  int size() const { return n_; }
  double angle(int j) const { return kTwoPi * j / n_; }
  cd point(int j) const;
  bool operator==(const BoundaryGrid& o) const { return n_ == o.n_; }

 private:
  int n_;
};

bool is_power_of_two(long n);
int next_power_of_two(long n);

// Samples on the n-th roots of unity with eagerly computed Fourier coefficients.
// bandwidth() is the declared max |k| of nonzero coefficients, or -1 if unknown.
class CircleFunction {
 public:
  CircleFunction() = default;
  static CircleFunction from_samples(std::vector<cd> samples, int bandwidth = -1);
  // coeffs indexed -n/2 .. n/2-1
  static CircleFunction from_coefficients(const std::vector<cd>& coeffs, int bandwidth = -1);
  static CircleFunction from_fft_order(std::vector<cd> fft_coeffs, int bandwidth = -1);
  template <class F>
  static CircleFunction sample(int n, F&& f, int bandwidth = -1) {
    BoundaryGrid g(n);
    std::vector<cd> s(n);
    for (int j = 0; j < n; ++j) s[j] = f(g.angle(j));
    return from_samples(std::move(s), bandwidth);
  }
  static CircleFunction constant(int n, cd c);
  static CircleFunction monomial(int n, int k);

  int size() const { return static_cast<int>(samples_.size()); }
  BoundaryGrid grid() const { return BoundaryGrid(size()); }
  const std::vector<cd>& samples() const { return samples_; }
  cd operator[](int j) const { return samples_[j]; }
  // coefficient of z^k, k taken modulo n into [-n/2, n/2)
  cd coeff(int k) const;
  // coefficients in FFT order (index k mod n)
  const std::vector<cd>& fft_coeffs() const { return coeffs_; }
  int bandwidth() const { return bandwidth_; }
  int effective_bandwidth() const { return bandwidth_ < 0 ? size() / 2 : bandwidth_; }

  CircleFunction conj() const;
  CircleFunction operator+(const CircleFunction& o) const;
  CircleFunction operator-(const CircleFunction& o) const;
  CircleFunction operator*(cd c) const;
  CircleFunction pointwise(const CircleFunction& o) const;  // no bandwidth check

 private:
  std::vector<cd> samples_;
  std::vector<cd> coeffs_;
  int bandwidth_ = -1;
};

// Sparse trigonometric polynomial.
class FourierPolynomial {
 public:
  FourierPolynomial() = default;
  explicit FourierPolynomial(const std::map<int, cd>& coeffs);
  void set(int k, cd c);
  cd operator[](int k) const;
  const std::map<int, cd>& coeffs() const { return c_; }
  int bandwidth() const;
  int min_index() const;
  int max_index() const;
  bool empty() const { return c_.empty(); }
  cd eval(double angle) const;
  CircleFunction on_grid(int n) const;
  FourierPolynomial conj() const;
  static FourierPolynomial from_circle(const CircleFunction& f, double drop_below = 0.0);

 private:
  std::map<int, cd> c_;
};

std::vector<cd> analyze(const CircleFunction& f);
CircleFunction synthesize(const std::vector<cd>& coeffs);
CircleFunction riesz_plus(const CircleFunction& f);
CircleFunction riesz_minus(const CircleFunction& f);
// throws BandwidthOverflow when both bandwidths are declared and their sum is >= n/2
CircleFunction multiply(const CircleFunction& f, const CircleFunction& g);
// zero-pads to 2n first; exact for band-limited inputs with total bandwidth < n
CircleFunction multiply_padded(const CircleFunction& f, const CircleFunction& g);
cd inner_product(const CircleFunction& f, const CircleFunction& g);
double lp_norm(const CircleFunction& f, double p);
double l2_norm(const CircleFunction& f);
// trigonometric interpolation onto an m-point grid (truncates if m < n)
CircleFunction resample(const CircleFunction& f, int m);
// sum_k c_k z^k + sum_{k<0} c_k conj(z)^{|k|} (Poisson extension), |z| <= 1
cd poisson_extension(const CircleFunction& f, cd z);
// coefficients of z^0..z^{n/2-1}
std::vector<cd> analytic_coeffs(const CircleFunction& f);
CircleFunction from_analytic_coeffs(int n, const std::vector<cd>& c);
double negative_content(const CircleFunction& f);
CircleFunction rotate(const CircleFunction& f, double t);  // z -> f(e^{it} z)

}  // namespace ttolab
