#include "ttolab/boundedsymbol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ttolab/errors.hpp"

namespace ttolab {

// ---------------- Rational ----------------

Rational::Rational(std::int64_t p, std::int64_t q) {
  if (q == 0) throw ValidationError("zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
  num = g ? p / g : 0;
  den = g ? q / g : 1;
}

Rational Rational::operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
Rational Rational::operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }

// ---------------- Fejer windows ----------------

Rational fejer_hat(int m, int n) {
  if (m < 1) throw ValidationError("Fejer kernel order must be >= 1");
  const int a = std::abs(n);
  if (a >= m) return Rational(0);
  return Rational(m - a, m);
}

FourierPolynomial fejer_kernel(int m) {
  FourierPolynomial p;
  for (int n = -m + 1; n <= m - 1; ++n) p.set(n, fejer_hat(m, n).value());
  return p;
}

Rational FejerWindowSet::eta_hat(int i, int n) const {
  switch (i) {
    case 1: return fejer_hat(M, n);
    case 2: return Rational(2) * fejer_hat(2 * M, n - 2 * M) - fejer_hat(M, n - 2 * M);
    case 3: return eta_hat(2, -n);
  }
  throw ValidationError("window index must be 1, 2 or 3");
}

std::vector<int> FejerWindowSet::partition_failures(int range) const {
  std::vector<int> bad;
  for (int n = -range; n <= range; ++n)
    if (!(eta_hat(1, n) + eta_hat(2, n) + eta_hat(3, n) == Rational(1))) bad.push_back(n);
  return bad;
}

FejerWindowSet fejer_windows(int N) {
  if (N < 2) throw ValidationError("Fejer splitting needs N >= 2");
  FejerWindowSet w;
  w.N = N;
  w.M = (N + 1) / 3;
  for (int n = -4 * w.M; n <= 4 * w.M; ++n) {
    w.eta1.set(n, w.eta_hat(1, n).value());
    w.eta2.set(n, w.eta_hat(2, n).value());
    w.eta3.set(n, w.eta_hat(3, n).value());
  }
  return w;
}

double l1_norm(const FourierPolynomial& p, int n) {
  CircleFunction f = p.on_grid(n);
  double s = 0;
  for (auto& v : f.samples()) s += std::abs(v);
  return s / n;
}

FejerSplit fejer_split(const FourierPolynomial& phi, int N) {
  FejerWindowSet w = fejer_windows(N);
  if (!phi.empty() && (phi.bandwidth() > N || phi.bandwidth() > 3 * w.M))
    throw DomainError(DomainKind::SupportOverflow,
                      "symbol coefficient at |n| = " + std::to_string(phi.bandwidth()) +
                          " exceeds the window range " + std::to_string(std::min(N, 3 * w.M)));
  FejerSplit s;
  for (auto& [n, c] : phi.coeffs()) {
    s.phi1.set(n, c * w.eta_hat(1, n).value());
    s.phi2.set(n, c * w.eta_hat(2, n).value());
    s.phi3.set(n, c * w.eta_hat(3, n).value());
  }
  return s;
}

// ---------------- Caratheodory-Fejer ----------------

Eigen::MatrixXcd lower_toeplitz(const std::vector<cd>& c) {
  const int N = static_cast<int>(c.size());
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j <= i; ++j) T(i, j) = c[i - j];
  return T;
}

namespace {

void cf_diagnostics(CFExtension& r, const std::vector<cd>& c) {
  r.sup_norm = lp_norm(r.phi0, INFINITY);
  r.taylor_error = 0;
  for (size_t k = 0; k < c.size(); ++k)
    r.taylor_error = std::max(r.taylor_error, std::abs(r.phi0.coeff(static_cast<int>(k)) - c[k]));
  r.modulus_spread = 0;
  for (auto& v : r.phi0.samples()) r.modulus_spread = std::max(r.modulus_spread, std::abs(std::abs(v) - r.norm));
}

}  // namespace

CFExtension minimal_analytic_extension(const std::vector<cd>& c, int grid) {
  const int N = static_cast<int>(c.size());
  if (N < 1) throw ValidationError("minimal_analytic_extension needs at least one coefficient");
  int n = grid > 0 ? grid : std::max(1024, next_power_of_two(64L * N));
  if (n < 2 * N) n = next_power_of_two(2L * N);
  Eigen::MatrixXcd T = lower_toeplitz(c);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(T, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& S = svd.singularValues();
  CFExtension r;
  r.norm = S(0);
  if (r.norm == 0.0) {
    r.phi0 = CircleFunction::constant(n, 0.0);
    cf_diagnostics(r, c);
    return r;
  }
  const bool degenerate = N > 1 && S(0) - S(1) <= 1e-9 * S(0);
  if (!degenerate) {
    std::vector<cd> u(N), v(N);
    for (int i = 0; i < N; ++i) {
      u[i] = svd.matrixU()(i, 0);
      v[i] = svd.matrixV()(i, 0);
    }
    for (;;) {
      CircleFunction U = from_analytic_coeffs(n, u), V = from_analytic_coeffs(n, v);
      std::vector<cd> s(n);
      double vmin = INFINITY;
      for (int j = 0; j < n; ++j) {
        vmin = std::min(vmin, std::abs(V[j]));
        s[j] = r.norm * U[j] / V[j];
      }
      if (!(vmin > 1e-12)) break;
      r.phi0 = CircleFunction::from_samples(std::move(s));
      cf_diagnostics(r, c);
      // wrapped-around tail of U/V shows up as negative-frequency content
      if (negative_content(r.phi0) <= 1e-12 * std::max(1.0, r.norm) || n >= (1 << 20)) {
        // remove the roundoff-level Taylor mismatch with a degree < N polynomial
        std::vector<cd> d(N);
        for (int k = 0; k < N; ++k) d[k] = c[k] - r.phi0.coeff(k);
        const double raw = r.taylor_error;
        r.phi0 = r.phi0 + from_analytic_coeffs(n, d);
        cf_diagnostics(r, c);
        r.taylor_error = raw;
        return r;
      }
      n *= 2;
    }
  }
  // degenerate top singular value (or a Schmidt vector vanishing on the circle)
  r.suboptimal = true;
  r.phi0 = from_analytic_coeffs(n, c);
  cf_diagnostics(r, c);
  r.modulus_spread = 0;
  return r;
}

// ---------------- central bound ----------------

CentralBound central_bound_check(const CircleFunction& phi, const InnerFunction& small, const InnerFunction& big,
                                 const std::vector<DiskPoint>& samples) {
  const InnerFunction t3 = InnerFunction::product({small, small, small});
  const InnerFunction t4 = InnerFunction::product({small, small, small, small});
  const InnerFunction zT = InnerFunction::product({InnerFunction::monomial(1), big});
  if (!divides(t3, zT) || !divides(big, t4))
    throw DomainError(DomainKind::DivisibilityViolated, "needs theta^3 | z Theta and Theta | theta^4");
  ModelSpace sp = ModelSpace::create(big);
  TTOperator a = build(sp, SymbolSpec::boundary(phi));
  return {lp_norm(phi, INFINITY), 2.0 * rho_r(a, samples)};
}

// ---------------- assembly ----------------

FourierPolynomial toeplitz_symbol(const Eigen::MatrixXcd& m) {
  const int N = static_cast<int>(m.rows());
  if (m.cols() != N) throw ValidationError("matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  FourierPolynomial p;
  for (int k = -(N - 1); k <= N - 1; ++k) {
    const int i0 = std::max(0, k), j0 = std::max(0, -k);
    const int len = N - std::abs(k);
    cd s = 0;
    for (int t = 0; t < len; ++t) s += m(i0 + t, j0 + t);
    s /= double(len);
    for (int t = 0; t < len; ++t)
      if (std::abs(m(i0 + t, j0 + t) - s) > 1e-10 * scale)
        throw DomainError(DomainKind::NotToeplitz, "diagonal " + std::to_string(k) + " is not constant");
    if (s != cd(0.0)) p.set(k, s);
  }
  return p;
}

namespace {

int toeplitz_degree(const TTOperator& a) {
  const InnerFunction& th = a.space().theta();
  if (!th.zeros().empty() || !th.atoms().empty() || th.monomial_degree() < 1)
    throw DomainError(DomainKind::UnsupportedVariant, "needs an operator on K_{z^N}");
  return th.monomial_degree();
}

int toeplitz_radii(int N) {
  int lg = 0;
  while ((1 << lg) < N) ++lg;
  return lg + 8;
}

}  // namespace

BoundedSymbolResult assemble_bounded_symbol(const TTOperator& a) {
  const int N = toeplitz_degree(a);
  return assemble_bounded_symbol(a, rho_rotation_table(a, toeplitz_radii(N), std::max(64, 4 * N)));
}

BoundedSymbolResult assemble_bounded_symbol(const TTOperator& a, const std::vector<DiskPoint>& samples) {
  return assemble_bounded_symbol(a, rho_table(a, samples));
}

BoundedSymbolResult assemble_bounded_symbol(const TTOperator& a, const std::vector<RhoRow>& table) {
  const int N = toeplitz_degree(a);
  const FourierPolynomial sym = toeplitz_symbol(a.matrix());
  BoundedSymbolResult r;
  int n = std::max(1024, next_power_of_two(64L * N));
  if (N == 1) {
    r.phi1 = sym.on_grid(n);
    r.phi2 = CircleFunction::constant(n, 0.0);
    r.phi3 = r.phi2;
  } else {
    FejerSplit s = fejer_split(sym, N);
    std::vector<cd> c2(N), c3(N);
    for (int k = 0; k < N; ++k) {
      c2[k] = s.phi2[k];
      c3[k] = std::conj(s.phi3[-k]);
    }
    CFExtension e2 = minimal_analytic_extension(c2, n);
    CFExtension e3 = minimal_analytic_extension(c3, e2.phi0.size());
    if (e3.phi0.size() > e2.phi0.size()) e2 = minimal_analytic_extension(c2, e3.phi0.size());
    n = e2.phi0.size();
    r.phi1 = s.phi1.on_grid(n);
    r.phi2 = e2.phi0;
    r.phi3 = e3.phi0.conj();
    r.suboptimal = e2.suboptimal || e3.suboptimal;
  }
  r.phi0 = r.phi1 + r.phi2 + r.phi3;
  r.sup_norm = lp_norm(r.phi0, INFINITY);
  TTOperator b = build(a.space(), SymbolSpec::boundary(r.phi0));
  r.build_error = (b.matrix() - a.matrix()).cwiseAbs().maxCoeff();
  r.rho = 0;
  for (auto& row : table) r.rho = std::max({r.rho, row.kernel, row.dq});
  r.measured_constant = r.rho > 0 ? r.sup_norm / r.rho : 0.0;
  return r;
}

// ---------------- transport / rotation ----------------

TTOperator blaschke_transport(const TTOperator& a, cd alpha) {
  const int N = toeplitz_degree(a);
  if (std::abs(alpha) >= 1.0) throw ValidationError("alpha must lie in the open disk");
  InnerFunction th = InnerFunction::blaschke({{DiskPoint::from_complex(alpha), N}});
  SpaceOptions o;
  o.mode = SpaceMode::Exact;
  return TTOperator::from_matrix(ModelSpace::create(th, o), a.matrix());
}

CircleFunction compose_with_blaschke(const FourierPolynomial& phi, cd alpha, int n) {
  return CircleFunction::sample(n, [&](double t) {
    const cd z = std::polar(1.0, t);
    return phi.eval(std::arg((alpha - z) / (1.0 - std::conj(alpha) * z)));
  });
}

double rotation_covariance_check(int N, double t, const std::vector<cd>& lambdas, int grid) {
  const InnerFunction th = InnerFunction::monomial(N);
  const int n = std::max(grid, next_power_of_two(4L * N));
  double res = 0;
  const cd phase = std::polar(1.0, (N - 1) * t);
  for (cd l : lambdas) {
    const KernelPoint p = KernelPoint::interior(l), q = KernelPoint::interior(std::polar(1.0, -t) * l);
    const double s = kernel_scale(th, p);
    CircleFunction a = rotate(kernel_samples(th, p, n), t) - kernel_samples(th, q, n);
    CircleFunction b = rotate(difference_quotient_samples(th, p, n), t) - difference_quotient_samples(th, q, n) * phase;
    res = std::max({res, s * lp_norm(a, INFINITY), s * lp_norm(b, INFINITY)});
  }
  return res;
}

double rotation_operator_check(const FourierPolynomial& phi, int N, double t) {
  ModelSpace sp = ModelSpace::create(InnerFunction::monomial(N));
  Eigen::MatrixXcd A = build(sp, SymbolSpec::polynomial(phi)).matrix();
  Eigen::VectorXcd d(N);
  for (int j = 0; j < N; ++j) d[j] = std::polar(1.0, j * t);
  Eigen::MatrixXcd lhs = d.conjugate().asDiagonal() * A * d.asDiagonal();
  FourierPolynomial pt;
  for (auto& [k, c] : phi.coeffs()) pt.set(k, c * std::polar(1.0, -k * t));
  Eigen::MatrixXcd rhs = build(sp, SymbolSpec::polynomial(pt)).matrix();
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace ttolab
