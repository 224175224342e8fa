#include "ttolab/tto.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "fft.hpp"
#include "ttolab/errors.hpp"

namespace ttolab {

// ---------------- SymbolSpec ----------------

SymbolSpec SymbolSpec::pair(ModelFunction plus, ModelFunction minus) {
  if (!plus.space().same_as(minus.space())) throw ValidationError("pair components must share a space");
  if (plus.residual() > 1e-9 || minus.residual() > 1e-9)
    throw ValidationError("pair components are not in the model space (residual > 1e-9)");
  return SymbolSpec(PairSymbol{std::move(plus), std::move(minus)});
}

SymbolSpec SymbolSpec::measure(MeasureSpec m) {
  for (auto& a : m.atoms)
    if (!(a.mass > 0)) throw ValidationError("measure atoms need positive mass");
  if (m.density)
    for (auto& v : m.density->samples())
      if (v.real() < 0 || std::abs(v.imag()) > 1e-12) throw ValidationError("measure density must be nonnegative");
  return SymbolSpec(std::move(m));
}

CircleFunction SymbolSpec::on_grid(int n) const {
  switch (kind()) {
    case Kind::Samples: {
      auto& f = samples();
      return f.size() == n ? f : resample(f, n);
    }
    case Kind::Polynomial:
      return poly().on_grid(n);
    case Kind::Pair:
      return pair().plus.to_circle(n) + pair().minus.to_circle(n).conj();
    case Kind::Measure:
      break;
  }
  throw ValidationError("a measure symbol has no boundary samples");
}

int SymbolSpec::bandwidth() const {
  switch (kind()) {
    case Kind::Samples: return samples().bandwidth();
    case Kind::Polynomial: return poly().bandwidth();
    default: return -1;
  }
}

SymbolSpec SymbolSpec::conj() const {
  switch (kind()) {
    case Kind::Samples: return boundary(samples().conj());
    case Kind::Polynomial: return polynomial(poly().conj());
    case Kind::Pair: return SymbolSpec(PairSymbol{pair().minus, pair().plus});
    case Kind::Measure: break;
  }
  return *this;
}

// ---------------- TTOperator ----------------

TTOperator TTOperator::from_matrix(ModelSpace space, Eigen::MatrixXcd m, std::optional<SymbolSpec> symbol) {
  if (!space.exact()) throw ValidationError("matrix operators need an exact space");
  if (m.rows() != space.dimension() || m.cols() != space.dimension())
    throw ValidationError("matrix size does not match the space dimension");
  TTOperator op(std::move(space));
  op.m_ = std::make_shared<const Eigen::MatrixXcd>(std::move(m));
  op.symbol_ = std::move(symbol);
  return op;
}

TTOperator TTOperator::from_closure(ModelSpace space, Apply apply, Apply apply_adjoint,
                                    std::optional<SymbolSpec> symbol) {
  TTOperator op(std::move(space));
  op.apply_ = std::make_shared<const Apply>(std::move(apply));
  op.apply_adj_ = std::make_shared<const Apply>(std::move(apply_adjoint));
  op.symbol_ = std::move(symbol);
  return op;
}

const Eigen::MatrixXcd& TTOperator::matrix() const {
  if (!m_) throw DomainError(DomainKind::UnsupportedVariant, "truncated-mode operators have no matrix");
  return *m_;
}

ModelFunction TTOperator::apply(const ModelFunction& f) const {
  if (!f.space().same_as(space_)) throw ValidationError("operand lives in a different space");
  if (m_) return ModelFunction(space_, Eigen::VectorXcd(*m_ * f.coeffs()));
  return (*apply_)(f);
}

ModelFunction TTOperator::apply_adjoint(const ModelFunction& f) const {
  if (!f.space().same_as(space_)) throw ValidationError("operand lives in a different space");
  if (m_) return ModelFunction(space_, Eigen::VectorXcd(m_->adjoint() * f.coeffs()));
  return (*apply_adj_)(f);
}

TTOperator adjoint(const TTOperator& op) {
  TTOperator out(op.space_);
  if (op.m_) {
    out.m_ = std::make_shared<const Eigen::MatrixXcd>(op.m_->adjoint());
  } else {
    out.apply_ = op.apply_adj_;
    out.apply_adj_ = op.apply_;
  }
  if (op.symbol_) out.symbol_ = op.symbol_->conj();
  return out;
}

Eigen::MatrixXcd rank_one_matrix(const ModelFunction& u, const ModelFunction& v) {
  return u.coeffs() * v.coeffs().adjoint();
}

// ---------------- build ----------------

namespace {

bool pure_monomial(const InnerFunction& t) { return t.zeros().empty() && t.atoms().empty(); }

Eigen::MatrixXcd gram_with_weight(const ModelSpace& space, const CircleFunction& w) {
  const int n = w.size();
  auto E = space.basis_samples(n);
  Eigen::Map<const Eigen::VectorXcd> wv(w.samples().data(), n);
  return E->adjoint() * (wv.asDiagonal() * *E) / static_cast<double>(n);
}

Eigen::MatrixXcd toeplitz_from(int N, const std::function<cd(int)>& c) {
  Eigen::MatrixXcd M(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) M(i, j) = c(i - j);
  return M;
}

Eigen::MatrixXcd exact_matrix(const ModelSpace& space, const SymbolSpec& s) {
  const int N = space.dimension();
  const bool toeplitz = pure_monomial(space.theta());
  switch (s.kind()) {
    case SymbolSpec::Kind::Polynomial: {
      if (toeplitz) return toeplitz_from(N, [&](int k) { return s.poly()[k]; });
      const int n = std::max(space.grid(), next_power_of_two(4L * (s.poly().bandwidth() + 1)));
      return gram_with_weight(space, s.poly().on_grid(n));
    }
    case SymbolSpec::Kind::Samples: {
      const auto& f = s.samples();
      if (toeplitz && f.size() >= 2 * N) return toeplitz_from(N, [&](int k) { return f.coeff(k); });
      const int n = std::max(space.grid(), f.size());
      return gram_with_weight(space, f.size() == n ? f : resample(f, n));
    }
    case SymbolSpec::Kind::Pair: {
      if (!s.pair().plus.space().same_as(space)) throw ValidationError("pair symbol from a different space");
      return gram_with_weight(space, s.on_grid(space.grid()));
    }
    case SymbolSpec::Kind::Measure:
      break;
  }
  throw ValidationError("unreachable");
}

}  // namespace

TTOperator build(const ModelSpace& space, const SymbolSpec& symbol) {
  if (symbol.kind() == SymbolSpec::Kind::Measure) return measure_operator(space, symbol.measure());
  if (space.exact()) return TTOperator::from_matrix(space, exact_matrix(space, symbol), symbol);

  const int n = space.grid();
  const int bw = symbol.bandwidth();
  if (bw >= 0 && 4 * bw >= n)
    throw DomainError(DomainKind::BandwidthOverflow,
                      "symbol bandwidth " + std::to_string(bw) + " needs a grid larger than " + std::to_string(n));
  auto phi = std::make_shared<const CircleFunction>(symbol.on_grid(n));
  auto phic = std::make_shared<const CircleFunction>(phi->conj());
  ModelSpace sp = space;
  auto mk = [sp, n](std::shared_ptr<const CircleFunction> w) {
    return [sp, n, w](const ModelFunction& f) { return project(sp, w->pointwise(f.to_circle(n))); };
  };
  return TTOperator::from_closure(space, mk(phi), mk(phic), symbol);
}

// ---------------- standard symbol / decomposition ----------------

CircleFunction q_theta(const ModelSpace& space, const CircleFunction& f) {
  auto th = space.theta_on_grid(f.size());
  return project_circle(space, f) + th->conj().pointwise(project_circle(space, th->pointwise(f)));
}

CircleFunction standard_symbol(const ModelSpace& space, const CircleFunction& phi) {
  auto th = space.theta_on_grid(phi.size());
  CircleFunction q = q_theta(space, th->conj());
  const double qn = l2_norm(q);
  q = q * cd(1.0 / qn);
  return q_theta(space, phi) - q * inner_product(phi, q);
}

PairSymbol decompose(const ModelSpace& space, const CircleFunction& phi, cd mu) {
  if (std::abs(mu) >= 1.0) throw ValidationError("normalization point must lie in the open disk");
  const int n = std::max(phi.size(), space.grid());
  CircleFunction f = phi.size() == n ? phi : resample(phi, n);
  auto th = space.theta_on_grid(n);
  CircleFunction psi = standard_symbol(space, f);
  CircleFunction p0 = project_circle(space, psi);
  CircleFunction g = project_circle(space, th->pointwise(psi));
  CircleFunction m0 = project_circle(space, CircleFunction::monomial(n, 1).pointwise(omega(space, g)));
  ModelFunction plus = project(space, p0), minus = project(space, m0);
  ModelFunction k0 = kernel(space, KernelPoint::interior(0.0));
  const cd cbar = minus(mu) / k0(mu);
  return PairSymbol{plus + k0 * std::conj(cbar), minus - k0 * cbar};
}

// ---------------- rho ----------------

std::vector<DiskPoint> rotation_closed_sample_set(int radii, int angles) {
  std::vector<DiskPoint> out;
  for (int m = 1; m <= radii; ++m)
    for (int k = 0; k < angles; ++k) out.push_back({kTwoPi * k / angles, std::ldexp(1.0, -m)});
  return out;
}

std::vector<DiskPoint> default_sample_set(const InnerFunction& theta, int radii, int angles) {
  auto out = rotation_closed_sample_set(radii, angles);
  std::set<double> dirs;
  for (auto& z : theta.zeros()) dirs.insert(z.a.angle);
  for (double a : dirs)
    for (int m = 1; m <= radii; ++m) out.push_back({a, std::ldexp(1.0, -m)});
  return out;
}

std::vector<RhoRow> rho_table(const TTOperator& op, const std::vector<DiskPoint>& samples) {
  const ModelSpace& sp = op.space();
  std::vector<RhoRow> rows;
  rows.reserve(samples.size());
  if (sp.exact()) {
    std::vector<double> scale;
    for (auto& p : samples) {
      try {
        scale.push_back(kernel_scale(sp.theta(), KernelPoint{p}));
        rows.push_back(RhoRow{p});
      } catch (const DomainError&) {
      }
    }
    Eigen::MatrixXcd K(sp.dimension(), rows.size());
    for (size_t i = 0; i < rows.size(); ++i) K.col(i) = kernel_coeffs(sp, KernelPoint{rows[i].lambda}) * scale[i];
    Eigen::MatrixXcd AK = op.matrix() * K;
    Eigen::MatrixXcd AW = op.matrix() * (sp.omega_matrix() * K.conjugate());
    for (size_t i = 0; i < rows.size(); ++i) {
      rows[i].kernel = AK.col(i).norm();
      rows[i].dq = AW.col(i).norm();
    }
    return rows;
  }
  for (auto& p : samples) {
    KernelPoint kp{p};
    double s;
    try {
      s = kernel_scale(sp.theta(), kp);
    } catch (const DomainError&) {
      continue;
    }
    RhoRow r{p};
    ModelFunction h = kernel(sp, kp) * cd(s);
    r.kernel = op.apply(h).norm();
    r.dq = op.apply(omega(h)).norm();
    rows.push_back(r);
  }
  return rows;
}

std::vector<RhoRow> rho_rotation_table(const TTOperator& op, int radii, int angles) {
  const ModelSpace& sp = op.space();
  if (!sp.exact() || !pure_monomial(sp.theta())) return rho_table(op, rotation_closed_sample_set(radii, angles));
  const auto& A = op.matrix();
  const int N = sp.dimension(), L = angles;
  std::vector<RhoRow> rows;
  rows.reserve(static_cast<size_t>(radii) * L);
  std::vector<cd> x(L), y(L);
  for (int m = 1; m <= radii; ++m) {
    const double dm = std::ldexp(1.0, -m), r = 1.0 - dm;
    const double s = kernel_scale(sp.theta(), KernelPoint{DiskPoint{0.0, dm}});
    std::vector<double> nk(L, 0.0), nd(L, 0.0);
    for (int i = 0; i < N; ++i) {
      std::fill(x.begin(), x.end(), cd(0.0));
      std::fill(y.begin(), y.end(), cd(0.0));
      double rj = 1.0;
      for (int j = 0; j < N; ++j, rj *= r) {
        x[j % L] += A(i, j) * rj;
        y[j % L] += A(i, N - 1 - j) * rj;
      }
      auto fx = detail::fft_forward(x);
      auto fy = detail::fft_backward(y);
      for (int k = 0; k < L; ++k) {
        nk[k] += std::norm(fx[k]) * double(L) * double(L);
        nd[k] += std::norm(fy[k]);
      }
    }
    for (int k = 0; k < L; ++k)
      rows.push_back(RhoRow{DiskPoint{kTwoPi * k / L, dm}, s * std::sqrt(nk[k]), s * std::sqrt(nd[k])});
  }
  return rows;
}

double rho_r(const TTOperator& op, const std::vector<DiskPoint>& samples) {
  double m = 0;
  for (auto& r : rho_table(op, samples)) m = std::max(m, r.kernel);
  return m;
}

double rho_d(const TTOperator& op, const std::vector<DiskPoint>& samples) {
  double m = 0;
  for (auto& r : rho_table(op, samples)) m = std::max(m, r.dq);
  return m;
}

double rho(const TTOperator& op, const std::vector<DiskPoint>& samples) {
  double m = 0;
  for (auto& r : rho_table(op, samples)) m = std::max({m, r.kernel, r.dq});
  return m;
}

double operator_norm(const TTOperator& op, const NormOptions& opts) {
  if (op.exact()) {
    const auto& M = op.matrix();
    if (M.size() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    return svd.singularValues()(0);
  }
  const ModelSpace& sp = op.space();
  const int n = sp.grid();
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> nd;
  std::vector<cd> s(n);
  for (auto& v : s) v = cd(nd(rng), nd(rng));
  ModelFunction x = project(sp, riesz_plus(CircleFunction::from_samples(std::move(s))));
  double nx = x.norm();
  if (nx == 0) return 0.0;
  x = x * cd(1.0 / nx);
  double prev = 0;
  for (int it = 0; it < opts.budget; ++it) {
    ModelFunction y = op.apply_adjoint(op.apply(x));
    const double lam = y.norm();
    if (lam == 0) return 0.0;
    x = y * cd(1.0 / lam);
    if (it > 0 && std::abs(lam - prev) <= opts.tol * lam) return std::sqrt(lam);
    prev = lam;
  }
  throw NoConvergence("power iteration did not converge within " + std::to_string(opts.budget) + " steps");
}

TTOperator measure_operator(const ModelSpace& space, const MeasureSpec& mu) {
  if (!space.exact())
    throw DomainError(DomainKind::UnsupportedVariant, "measure operators are built in exact spaces only");
  for (auto& a : mu.atoms)
    if (!(a.mass > 0)) throw ValidationError("measure atoms need positive mass");
  const int N = space.dimension();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
  for (auto& a : mu.atoms) {
    auto ad = has_angular_derivative(space.theta(), a.angle);
    if (ad.verdict != AngularDerivative::Verdict::Yes)
      throw DomainError(DomainKind::NoAngularDerivative,
                        "measure atom at angle " + std::to_string(a.angle) + " is outside E(Theta) (" +
                            to_string(ad.verdict) + ")");
    Eigen::VectorXcd v = space.basis_values(std::polar(1.0, a.angle));
    M += a.mass * (v.conjugate() * v.transpose());
  }
  if (mu.density) {
    const int n = std::max(space.grid(), mu.density->size());
    CircleFunction d = mu.density->size() == n ? *mu.density : resample(*mu.density, n);
    M += gram_with_weight(space, d);
  }
  return TTOperator::from_matrix(space, std::move(M), SymbolSpec::measure(mu));
}

double hankel_factor_check(const TTOperator& op, const ModelFunction& f) {
  if (!op.symbol() || !op.symbol()->is_boundary())
    throw ValidationError("Hankel factorization needs an operator with a boundary symbol");
  const ModelSpace& sp = op.space();
  const int n = sp.grid();
  CircleFunction phi = op.symbol()->on_grid(n);
  if (negative_content(phi) > 1e-10 * std::max(1.0, l2_norm(phi)))
    throw ValidationError("Hankel factorization needs an analytic symbol");
  auto th = sp.theta_on_grid(n);
  CircleFunction g = phi.pointwise(f.to_circle(n));
  CircleFunction rhs = th->pointwise(riesz_minus(th->conj().pointwise(g)));
  return l2_norm(op.apply(f).to_circle(n) - rhs);
}

}  // namespace ttolab
