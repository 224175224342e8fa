#include "ttolab/modelspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "ttolab/errors.hpp"

namespace ttolab {

namespace {

struct TmZero {
  cd a;
  double one_minus_a2;
  bool monomial;
};

std::vector<TmZero> expand_zeros(const InnerFunction& theta) {
  std::vector<TmZero> out;
  for (int i = 0; i < theta.monomial_degree(); ++i) out.push_back({0.0, 1.0, true});
  for (auto& z : theta.zeros()) {
    const double d = z.a.deficit;
    for (int m = 0; m < z.mult; ++m) out.push_back({z.a.value(), d * (2.0 - d), false});
  }
  return out;
}

Eigen::VectorXcd tm_values(const std::vector<TmZero>& tm, cd z) {
  Eigen::VectorXcd e(tm.size());
  cd B = 1.0;
  for (size_t j = 0; j < tm.size(); ++j) {
    const auto& t = tm[j];
    if (t.monomial) {
      e[j] = B;
      B *= z;
    } else {
      const cd den = 1.0 - std::conj(t.a) * z;
      e[j] = std::sqrt(t.one_minus_a2) / den * B;
      B *= (t.a - z) / den;
    }
  }
  return e;
}

int auto_exact_grid(const InnerFunction& theta) {
  const int N = theta.zero_count();
  long n = std::max<long>(256, next_power_of_two(8L * N));
  double dmin = 1.0;
  int mmax = 1;
  for (auto& z : theta.zeros()) {
    dmin = std::min(dmin, z.a.deficit);
    mmax = std::max(mmax, z.mult);
  }
  const double need = (48.0 + 8.0 * std::log2(1.0 + mmax)) / dmin;
  if (need > (1L << 22))
    throw ValidationError("zeros too close to the circle for an exact basis (deficit " +
                          std::to_string(dmin) + ")");
  n = std::max<long>(n, next_power_of_two(static_cast<long>(std::ceil(need))));
  if (n * static_cast<long>(N) > (1L << 26))
    throw ValidationError("exact basis too large for the required grid");
  return static_cast<int>(n);
}

}  // namespace

KernelPoint KernelPoint::interior(cd lambda) {
  if (std::abs(lambda) >= 1.0) throw ValidationError("interior kernel point must satisfy |lambda| < 1");
  return {DiskPoint::from_complex(lambda)};
}

struct ModelSpace::Impl {
  InnerFunction theta;
  SpaceMode mode = SpaceMode::Truncated;
  int grid = 4096;
  std::vector<TmZero> tm;
  Eigen::MatrixXcd W;
  mutable std::mutex mu;
  mutable std::map<int, std::shared_ptr<const Eigen::MatrixXcd>> basis_cache;
  mutable std::map<int, std::shared_ptr<const CircleFunction>> theta_cache;
};

ModelSpace ModelSpace::create(const InnerFunction& theta, const SpaceOptions& opts) {
  auto impl = std::make_shared<Impl>();
  impl->theta = theta;
  const bool exact_ok = !theta.has_singular_part() && theta.zero_count() <= 512;
  SpaceMode mode = opts.mode.value_or(exact_ok ? SpaceMode::Exact : SpaceMode::Truncated);
  if (mode == SpaceMode::Exact && !exact_ok)
    throw DomainError(DomainKind::UnsupportedVariant,
                      "exact mode needs a monomial or finite Blaschke product of degree <= 512");
  impl->mode = mode;
  if (mode == SpaceMode::Exact) {
    impl->tm = expand_zeros(theta);
    impl->grid = auto_exact_grid(theta);
    if (opts.grid > impl->grid) impl->grid = opts.grid;
  } else {
    impl->grid = opts.grid > 0 ? opts.grid : 4096;
  }
  BoundaryGrid check(impl->grid);
  ModelSpace s;
  s.impl_ = impl;
  if (mode == SpaceMode::Exact) {
    const int n = impl->grid;
    auto E = s.basis_samples(n);
    auto th = s.theta_on_grid(n);
    BoundaryGrid g(n);
    Eigen::VectorXcd w(n);
    for (int k = 0; k < n; ++k) w[k] = std::conj(g.point(k)) * (*th)[k];
    impl->W = (E->adjoint() * (w.asDiagonal() * E->conjugate())) / static_cast<double>(n);
  }
  return s;
}

const InnerFunction& ModelSpace::theta() const { return impl_->theta; }
SpaceMode ModelSpace::mode() const { return impl_->mode; }
int ModelSpace::dimension() const { return impl_->mode == SpaceMode::Exact ? static_cast<int>(impl_->tm.size()) : -1; }
int ModelSpace::grid() const { return impl_->grid; }

const Eigen::MatrixXcd& ModelSpace::omega_matrix() const {
  if (!exact()) throw DomainError(DomainKind::UnsupportedVariant, "omega matrix needs exact mode");
  return impl_->W;
}

std::shared_ptr<const Eigen::MatrixXcd> ModelSpace::basis_samples(int n) const {
  if (!exact()) throw DomainError(DomainKind::UnsupportedVariant, "basis needs exact mode");
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->basis_cache.find(n);
    if (it != impl_->basis_cache.end()) return it->second;
  }
  BoundaryGrid g(n);
  auto E = std::make_shared<Eigen::MatrixXcd>(n, impl_->tm.size());
  for (int k = 0; k < n; ++k) E->row(k) = tm_values(impl_->tm, g.point(k)).transpose();
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->basis_cache.emplace(n, E).first->second;
}

std::vector<CircleFunction> ModelSpace::basis() const {
  auto E = basis_samples(grid());
  std::vector<CircleFunction> out;
  for (int j = 0; j < E->cols(); ++j) {
    std::vector<cd> s(E->rows());
    for (int k = 0; k < E->rows(); ++k) s[k] = (*E)(k, j);
    out.push_back(CircleFunction::from_samples(std::move(s)));
  }
  return out;
}

Eigen::VectorXcd ModelSpace::basis_values(cd z) const {
  if (!exact()) throw DomainError(DomainKind::UnsupportedVariant, "basis needs exact mode");
  return tm_values(impl_->tm, z);
}

std::shared_ptr<const CircleFunction> ModelSpace::theta_on_grid(int n) const {
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->theta_cache.find(n);
    if (it != impl_->theta_cache.end()) return it->second;
  }
  const InnerFunction& th = impl_->theta;
  auto f = std::make_shared<const CircleFunction>(
      CircleFunction::sample(n, [&](double t) { return boundary_sample(th, t); }));
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->theta_cache.emplace(n, f).first->second;
}

std::vector<CircleFunction> tm_basis(const InnerFunction& theta, int n) {
  if (theta.has_singular_part())
    throw DomainError(DomainKind::UnsupportedVariant, "Takenaka-Malmquist basis needs a finite Blaschke product");
  SpaceOptions o;
  o.grid = n;
  o.mode = SpaceMode::Exact;
  auto s = ModelSpace::create(theta, o);
  auto E = s.basis_samples(n);
  std::vector<CircleFunction> out;
  for (int j = 0; j < E->cols(); ++j) {
    std::vector<cd> v(n);
    for (int k = 0; k < n; ++k) v[k] = (*E)(k, j);
    out.push_back(CircleFunction::from_samples(std::move(v)));
  }
  return out;
}

// ---------------- ModelFunction ----------------

ModelFunction::ModelFunction(ModelSpace space, Eigen::VectorXcd coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (!space_.exact()) throw ValidationError("coefficient representation needs an exact space");
  if (coeffs_.size() != space_.dimension()) throw ValidationError("coefficient vector has wrong length");
}

ModelFunction::ModelFunction(ModelSpace space, CircleFunction samples, double residual)
    : space_(std::move(space)), samples_(std::move(samples)), residual_(residual) {
  if (space_.exact()) throw ValidationError("sample representation needs a truncated space");
}

const Eigen::VectorXcd& ModelFunction::coeffs() const {
  if (!exact()) throw DomainError(DomainKind::UnsupportedVariant, "coefficients need exact mode");
  return coeffs_;
}

CircleFunction ModelFunction::to_circle(int n) const {
  if (n == 0) n = space_.grid();
  if (!exact()) return n == samples_->size() ? *samples_ : resample(*samples_, n);
  auto E = space_.basis_samples(n);
  Eigen::VectorXcd v = (*E) * coeffs_;
  return CircleFunction::from_samples(std::vector<cd>(v.data(), v.data() + v.size()));
}

cd ModelFunction::operator()(cd z) const {
  if (exact()) return (space_.basis_values(z).transpose() * coeffs_)(0);
  return poisson_extension(*samples_, z);
}

double ModelFunction::norm() const { return exact() ? coeffs_.norm() : l2_norm(*samples_); }

ModelFunction ModelFunction::operator+(const ModelFunction& o) const {
  if (!space_.same_as(o.space_)) throw ValidationError("model functions from different spaces");
  if (exact()) return ModelFunction(space_, Eigen::VectorXcd(coeffs_ + o.coeffs_));
  return ModelFunction(space_, *samples_ + *o.samples_, std::max(residual_, o.residual_));
}

ModelFunction ModelFunction::operator-(const ModelFunction& o) const { return *this + o * cd(-1.0); }

ModelFunction ModelFunction::operator*(cd a) const {
  if (exact()) return ModelFunction(space_, Eigen::VectorXcd(coeffs_ * a));
  return ModelFunction(space_, *samples_ * a, residual_);
}

cd inner_product(const ModelFunction& f, const ModelFunction& g) {
  if (f.exact() && g.exact()) return g.coeffs().dot(f.coeffs());
  const int n = std::max(f.space().grid(), g.space().grid());
  return inner_product(f.to_circle(n), g.to_circle(n));
}

// ---------------- projections ----------------

CircleFunction project_circle(const ModelSpace& space, const CircleFunction& f) {
  const int n = f.size();
  if (space.exact()) {
    auto E = space.basis_samples(n);
    Eigen::Map<const Eigen::VectorXcd> fv(f.samples().data(), n);
    Eigen::VectorXcd c = E->adjoint() * fv / static_cast<double>(n);
    Eigen::VectorXcd v = (*E) * c;
    return CircleFunction::from_samples(std::vector<cd>(v.data(), v.data() + n));
  }
  auto th = space.theta_on_grid(n);
  return riesz_plus(f) - th->pointwise(riesz_plus(th->conj().pointwise(f)));
}

namespace {

ModelFunction truncated_from_samples(const ModelSpace& space, const CircleFunction& g) {
  CircleFunction f = g.size() == space.grid() ? g : resample(g, space.grid());
  CircleFunction p = project_circle(space, f);
  CircleFunction pp = project_circle(space, p);
  const double nrm = l2_norm(p);
  const double res = nrm > 0 ? l2_norm(pp - p) / nrm : 0.0;
  return ModelFunction(space, pp, res);
}

ModelFunction exact_from_samples(const ModelSpace& space, const CircleFunction& f) {
  const int n = f.size();
  auto E = space.basis_samples(n);
  Eigen::Map<const Eigen::VectorXcd> fv(f.samples().data(), n);
  return ModelFunction(space, Eigen::VectorXcd(E->adjoint() * fv / static_cast<double>(n)));
}

void require_kernel_point(const InnerFunction& theta, const KernelPoint& pt) {
  if (!pt.on_boundary()) return;
  auto ad = has_angular_derivative(theta, pt.p.angle);
  if (ad.verdict != AngularDerivative::Verdict::Yes)
    throw DomainError(DomainKind::NoAngularDerivative,
                      "boundary point without angular derivative (" + std::string(to_string(ad.verdict)) + ")");
}

}  // namespace

ModelFunction project(const ModelSpace& space, const CircleFunction& f) {
  if (space.exact()) {
    if (f.size() < space.grid()) return exact_from_samples(space, resample(f, space.grid()));
    return exact_from_samples(space, f);
  }
  if (f.size() == space.grid()) {
    CircleFunction p = project_circle(space, f);
    CircleFunction pp = project_circle(space, p);
    const double nrm = l2_norm(p);
    return ModelFunction(space, p, nrm > 0 ? l2_norm(pp - p) / nrm : 0.0);
  }
  return truncated_from_samples(space, f);
}

// ---------------- kernels ----------------

CircleFunction kernel_samples(const InnerFunction& theta, const KernelPoint& pt, int n) {
  return CircleFunction::sample(n, [&](double t) { return kernel_at(theta, pt.p, BoundaryNode{t, 0.0, 0.0}); });
}

CircleFunction difference_quotient_samples(const InnerFunction& theta, const KernelPoint& pt, int n) {
  const cd lam = pt.value();
  const cd tl = eval(theta, pt.p);
  BoundaryGrid g(n);
  std::vector<cd> s(n);
  for (int j = 0; j < n; ++j) {
    const cd z = g.point(j);
    if (pt.on_boundary() && std::abs(angle_diff(g.angle(j), pt.p.angle)) == 0.0)
      s[j] = derivative(theta, lam);
    else
      s[j] = (boundary_sample(theta, g.angle(j)) - tl) / (z - lam);
  }
  return CircleFunction::from_samples(std::move(s));
}

Eigen::VectorXcd kernel_coeffs(const ModelSpace& space, const KernelPoint& pt) {
  return space.basis_values(pt.value()).conjugate();
}

ModelFunction kernel(const ModelSpace& space, const KernelPoint& pt) {
  require_kernel_point(space.theta(), pt);
  if (space.exact()) return ModelFunction(space, kernel_coeffs(space, pt));
  return truncated_from_samples(space, kernel_samples(space.theta(), pt, space.grid()));
}

double kernel_scale(const InnerFunction& theta, const KernelPoint& pt) {
  if (pt.on_boundary())
    throw DomainError(DomainKind::BoundaryPointNotNormalizable, "boundary kernels are not normalizable");
  const double oma = one_minus_abs2(theta, pt.p);
  if (!(oma > 0.0))
    throw DomainError(DomainKind::BoundaryPointNotNormalizable, "|Theta(lambda)| = 1 to working precision");
  const double e = pt.p.deficit;
  return std::sqrt(e * (2.0 - e) / oma);
}

ModelFunction normalized_kernel(const ModelSpace& space, const KernelPoint& pt) {
  const double s = kernel_scale(space.theta(), pt);
  return kernel(space, pt) * cd(s);
}

ModelFunction difference_quotient(const ModelSpace& space, const KernelPoint& pt) {
  require_kernel_point(space.theta(), pt);
  const int n = space.grid();
  CircleFunction f = difference_quotient_samples(space.theta(), pt, n);
  if (space.exact()) return exact_from_samples(space, f);
  return truncated_from_samples(space, f);
}

ModelFunction normalized_difference_quotient(const ModelSpace& space, const KernelPoint& pt) {
  const double s = kernel_scale(space.theta(), pt);
  return difference_quotient(space, pt) * cd(s);
}

// ---------------- conjugation ----------------

CircleFunction omega(const ModelSpace& space, const CircleFunction& f) {
  const int n = f.size();
  auto th = space.theta_on_grid(n);
  BoundaryGrid g(n);
  std::vector<cd> s(n);
  for (int j = 0; j < n; ++j) s[j] = std::conj(g.point(j) * f[j]) * (*th)[j];
  return CircleFunction::from_samples(std::move(s));
}

ModelFunction omega(const ModelFunction& f) {
  const ModelSpace& sp = f.space();
  if (sp.exact()) return ModelFunction(sp, Eigen::VectorXcd(sp.omega_matrix() * f.coeffs().conjugate()));
  return ModelFunction(sp, omega(sp, f.to_circle()), f.residual());
}

}  // namespace ttolab
