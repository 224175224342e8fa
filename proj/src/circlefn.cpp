#include "ttolab/circlefn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "ttolab/errors.hpp"

namespace ttolab {

BoundaryGrid::BoundaryGrid(int n) : n_(n) {
  if (n < 16 || !is_power_of_two(n))
    throw ValidationError("grid size must be a power of two >= 16, got " + std::to_string(n));
}

cd BoundaryGrid::point(int j) const {
  // exact at the quarter points
  const int q = n_ / 4;
  if (j % q == 0) {
    static const cd quarters[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return quarters[(j / q) % 4];
  }
  return std::polar(1.0, angle(j));
}

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

int next_power_of_two(long n) {
  long p = 1;
  while (p < n) p <<= 1;
  return static_cast<int>(p);
}

CircleFunction CircleFunction::from_samples(std::vector<cd> samples, int bandwidth) {
  BoundaryGrid g(static_cast<int>(samples.size()));
  CircleFunction f;
  f.coeffs_ = detail::fft_forward(samples);
  f.samples_ = std::move(samples);
  f.bandwidth_ = bandwidth;
  return f;
}

CircleFunction CircleFunction::from_fft_order(std::vector<cd> fft_coeffs, int bandwidth) {
  BoundaryGrid g(static_cast<int>(fft_coeffs.size()));
  CircleFunction f;
  f.samples_ = detail::fft_backward(fft_coeffs);
  f.coeffs_ = std::move(fft_coeffs);
  f.bandwidth_ = bandwidth;
  return f;
}

CircleFunction CircleFunction::from_coefficients(const std::vector<cd>& coeffs, int bandwidth) {
  const int n = static_cast<int>(coeffs.size());
  std::vector<cd> c(n);
  for (int i = 0; i < n; ++i) {
    int k = i - n / 2;
    c[(k + n) % n] = coeffs[i];
  }
  return from_fft_order(std::move(c), bandwidth);
}

CircleFunction CircleFunction::constant(int n, cd c) {
  std::vector<cd> fc(n, 0.0);
  fc[0] = c;
  return from_fft_order(std::move(fc), 0);
}

CircleFunction CircleFunction::monomial(int n, int k) {
  std::vector<cd> fc(n, 0.0);
  fc[((k % n) + n) % n] = 1.0;
  return from_fft_order(std::move(fc), std::abs(k));
}

cd CircleFunction::coeff(int k) const {
  const int n = size();
  return coeffs_[((k % n) + n) % n];
}

CircleFunction CircleFunction::conj() const {
  std::vector<cd> s(samples_.size());
  for (size_t j = 0; j < s.size(); ++j) s[j] = std::conj(samples_[j]);
  return from_samples(std::move(s), bandwidth_);
}

static int merged_bandwidth(int a, int b) { return (a < 0 || b < 0) ? -1 : std::max(a, b); }

static void require_same_grid(const CircleFunction& a, const CircleFunction& b) {
  if (a.size() != b.size())
    throw ValidationError("grid mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
}

CircleFunction CircleFunction::operator+(const CircleFunction& o) const {
  require_same_grid(*this, o);
  std::vector<cd> s(samples_.size()), c(samples_.size());
  for (size_t j = 0; j < s.size(); ++j) {
    s[j] = samples_[j] + o.samples_[j];
    c[j] = coeffs_[j] + o.coeffs_[j];
  }
  CircleFunction f;
  f.samples_ = std::move(s);
  f.coeffs_ = std::move(c);
  f.bandwidth_ = merged_bandwidth(bandwidth_, o.bandwidth_);
  return f;
}

CircleFunction CircleFunction::operator-(const CircleFunction& o) const { return *this + o * cd(-1.0); }

CircleFunction CircleFunction::operator*(cd a) const {
  CircleFunction f = *this;
  for (auto& v : f.samples_) v *= a;
  for (auto& v : f.coeffs_) v *= a;
  return f;
}

CircleFunction CircleFunction::pointwise(const CircleFunction& o) const {
  require_same_grid(*this, o);
  std::vector<cd> s(samples_.size());
  for (size_t j = 0; j < s.size(); ++j) s[j] = samples_[j] * o.samples_[j];
  int bw = (bandwidth_ < 0 || o.bandwidth_ < 0) ? -1 : bandwidth_ + o.bandwidth_;
  if (bw >= size() / 2) bw = -1;
  return from_samples(std::move(s), bw);
}

FourierPolynomial::FourierPolynomial(const std::map<int, cd>& coeffs) {
  for (auto& [k, c] : coeffs) set(k, c);
}

void FourierPolynomial::set(int k, cd c) {
  if (c == cd(0.0))
    c_.erase(k);
  else
    c_[k] = c;
}

cd FourierPolynomial::operator[](int k) const {
  auto it = c_.find(k);
  return it == c_.end() ? cd(0.0) : it->second;
}

int FourierPolynomial::bandwidth() const {
  int b = 0;
  for (auto& kv : c_) b = std::max(b, std::abs(kv.first));
  return b;
}

int FourierPolynomial::min_index() const { return c_.empty() ? 0 : c_.begin()->first; }
int FourierPolynomial::max_index() const { return c_.empty() ? 0 : c_.rbegin()->first; }

cd FourierPolynomial::eval(double angle) const {
  cd s = 0.0;
  for (auto& [k, c] : c_) s += c * std::polar(1.0, k * angle);
  return s;
}

CircleFunction FourierPolynomial::on_grid(int n) const {
  if (2 * bandwidth() >= n)
    throw DomainError(DomainKind::BandwidthOverflow,
                      "polynomial of bandwidth " + std::to_string(bandwidth()) +
                          " does not fit a grid of " + std::to_string(n));
  std::vector<cd> fc(n, 0.0);
  for (auto& [k, c] : c_) fc[((k % n) + n) % n] = c;
  return CircleFunction::from_fft_order(std::move(fc), bandwidth());
}

FourierPolynomial FourierPolynomial::conj() const {
  FourierPolynomial p;
  for (auto& [k, c] : c_) p.set(-k, std::conj(c));
  return p;
}

FourierPolynomial FourierPolynomial::from_circle(const CircleFunction& f, double drop_below) {
  FourierPolynomial p;
  const int n = f.size();
  for (int k = -n / 2; k < n / 2; ++k) {
    cd c = f.coeff(k);
    if (std::abs(c) > drop_below) p.set(k, c);
  }
  return p;
}

std::vector<cd> analyze(const CircleFunction& f) {
  const int n = f.size();
  std::vector<cd> out(n);
  for (int i = 0; i < n; ++i) out[i] = f.coeff(i - n / 2);
  return out;
}

CircleFunction synthesize(const std::vector<cd>& coeffs) { return CircleFunction::from_coefficients(coeffs); }

CircleFunction riesz_plus(const CircleFunction& f) {
  const int n = f.size();
  std::vector<cd> c = f.fft_coeffs();
  for (int i = n / 2; i < n; ++i) c[i] = 0.0;
  int bw = f.bandwidth() < 0 ? -1 : std::min(f.bandwidth(), n / 2 - 1);
  return CircleFunction::from_fft_order(std::move(c), bw);
}

CircleFunction riesz_minus(const CircleFunction& f) {
  const int n = f.size();
  std::vector<cd> c = f.fft_coeffs();
  for (int i = 0; i < n / 2; ++i) c[i] = 0.0;
  return CircleFunction::from_fft_order(std::move(c), f.bandwidth());
}

CircleFunction multiply(const CircleFunction& f, const CircleFunction& g) {
  require_same_grid(f, g);
  if (f.bandwidth() >= 0 && g.bandwidth() >= 0 && f.bandwidth() + g.bandwidth() >= f.size() / 2)
    throw DomainError(DomainKind::BandwidthOverflow,
                      "combined bandwidth " + std::to_string(f.bandwidth() + g.bandwidth()) +
                          " >= n/2 = " + std::to_string(f.size() / 2));
  return f.pointwise(g);
}

CircleFunction multiply_padded(const CircleFunction& f, const CircleFunction& g) {
  require_same_grid(f, g);
  const int m = 2 * f.size();
  return resample(f, m).pointwise(resample(g, m));
}

cd inner_product(const CircleFunction& f, const CircleFunction& g) {
  require_same_grid(f, g);
  cd s = 0.0;
  const auto& a = f.samples();
  const auto& b = g.samples();
  for (size_t j = 0; j < a.size(); ++j) s += a[j] * std::conj(b[j]);
  return s / static_cast<double>(a.size());
}

double lp_norm(const CircleFunction& f, double p) {
  double mx = 0.0;
  for (auto& v : f.samples()) mx = std::max(mx, std::abs(v));
  if (std::isinf(p) || mx == 0.0) return mx;
  if (p < 1.0) throw ValidationError("lp_norm requires p >= 1");
  double s = 0.0;
  for (auto& v : f.samples()) s += std::pow(std::abs(v) / mx, p);
  return mx * std::pow(s / f.size(), 1.0 / p);
}

double l2_norm(const CircleFunction& f) {
  double s = 0.0;
  for (auto& v : f.samples()) s += std::norm(v);
  return std::sqrt(s / f.size());
}

CircleFunction resample(const CircleFunction& f, int m) {
  const int n = f.size();
  if (m == n) return f;
  BoundaryGrid g(m);
  std::vector<cd> c(m, 0.0);
  const int lo = std::max(-n / 2, -m / 2), hi = std::min(n / 2, m / 2);
  for (int k = lo; k < hi; ++k) c[((k % m) + m) % m] = f.coeff(k);
  int bw = f.bandwidth();
  if (bw >= 0 && 2 * bw >= m) bw = -1;
  return CircleFunction::from_fft_order(std::move(c), bw);
}

cd poisson_extension(const CircleFunction& f, cd z) {
  const int n = f.size();
  cd pos = 0.0, neg = 0.0;
  for (int k = n / 2 - 1; k >= 0; --k) pos = pos * z + f.coeff(k);
  const cd zb = std::conj(z);
  for (int k = n / 2; k >= 1; --k) neg = neg * zb + f.coeff(-k);
  return pos + neg * zb;
}

std::vector<cd> analytic_coeffs(const CircleFunction& f) {
  const int n = f.size();
  return std::vector<cd>(f.fft_coeffs().begin(), f.fft_coeffs().begin() + n / 2);
}

CircleFunction from_analytic_coeffs(int n, const std::vector<cd>& c) {
  std::vector<cd> fc(n, 0.0);
  const int m = std::min<int>(n / 2, static_cast<int>(c.size()));
  for (int k = 0; k < m; ++k) fc[k] = c[k];
  return CircleFunction::from_fft_order(std::move(fc));
}

double negative_content(const CircleFunction& f) {
  const int n = f.size();
  double s = 0.0;
  for (int i = n / 2; i < n; ++i) s += std::norm(f.fft_coeffs()[i]);
  return std::sqrt(s);
}

CircleFunction rotate(const CircleFunction& f, double t) {
  const int n = f.size();
  std::vector<cd> c = f.fft_coeffs();
  for (int i = 0; i < n; ++i) {
    int k = i < n / 2 ? i : i - n;
    c[i] *= std::polar(1.0, k * t);
  }
  return CircleFunction::from_fft_order(std::move(c), f.bandwidth());
}

}  // namespace ttolab
