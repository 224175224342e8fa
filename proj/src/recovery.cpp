#include "ttolab/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ttolab/errors.hpp"

namespace ttolab {

KernelActionOracle::KernelActionOracle(ModelSpace space, Action kernel_action, Action dq_action)
    : space_(std::move(space)), act_(std::move(kernel_action)), dq_(std::move(dq_action)) {}

ModelFunction KernelActionOracle::dq_action(cd lambda) const {
  if (!dq_) throw ValidationError("oracle provides no action on difference quotients");
  return dq_(lambda);
}

KernelActionOracle KernelActionOracle::from_operator(const TTOperator& op) {
  const ModelSpace& sp = op.space();
  return KernelActionOracle(
      sp, [op, sp](cd l) { return op.apply(kernel(sp, KernelPoint::interior(l))); },
      [op, sp](cd l) { return op.apply(omega(kernel(sp, KernelPoint::interior(l)))); });
}

KernelActionOracle KernelActionOracle::from_table(const ModelSpace& space,
                                                  const std::vector<std::pair<cd, Eigen::VectorXcd>>& table,
                                                  double* fit_residual) {
  if (!space.exact()) throw ValidationError("kernel-action tables need an exact space");
  const int N = space.dimension();
  const int m = static_cast<int>(table.size());
  if (m < N) throw ValidationError("kernel-action table needs at least " + std::to_string(N) + " points");
  Eigen::MatrixXcd K(N, m), Y(N, m);
  for (int j = 0; j < m; ++j) {
    if (table[j].second.size() != N) throw ValidationError("table entry has wrong coefficient count");
    K.col(j) = kernel_coeffs(space, KernelPoint::interior(table[j].first));
    Y.col(j) = table[j].second;
  }
  Eigen::MatrixXcd KT = K.transpose();
  Eigen::MatrixXcd AT = KT.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(Eigen::MatrixXcd(Y.transpose()));
  Eigen::MatrixXcd A = AT.transpose();
  if (fit_residual) {
    const double yn = Y.norm();
    *fit_residual = yn > 0 ? (A * K - Y).norm() / yn : (A * K - Y).norm();
  }
  return from_operator(TTOperator::from_matrix(space, std::move(A)));
}

// ---------------- helpers ----------------

namespace {

using Coeffs = std::vector<cd>;

cd horner(const Coeffs& c, cd z) {
  cd s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
  return s;
}

// (I - l S*) on analytic coefficients
Coeffs i_minus_sstar(const Coeffs& a, cd l) {
  Coeffs out(a.size());
  for (size_t k = 0; k < a.size(); ++k) out[k] = a[k] - l * (k + 1 < a.size() ? a[k + 1] : cd(0.0));
  return out;
}

Coeffs sstar(const Coeffs& a) {
  Coeffs out(a.size(), 0.0);
  for (size_t k = 0; k + 1 < a.size(); ++k) out[k] = a[k + 1];
  return out;
}

struct Recap {
  const KernelActionOracle& oracle;
  int n;
  cd mu, theta0, theta_mu;
  Coeffs g_mu;  // (I - mu S*) omega(A k_mu)
  Coeffs kmu;   // coefficients of k_mu

  Recap(const KernelActionOracle& o, cd m) : oracle(o), n(o.space().grid()), mu(m) {
    const auto& th = o.space().theta();
    theta0 = eval(th, cd(0.0));
    theta_mu = eval(th, mu);
    g_mu = g(mu);
    kmu = analytic_coeffs(kernel_samples(th, KernelPoint::interior(mu), n));
  }

  Coeffs g(cd l) const {
    CircleFunction w = omega(oracle.space(), oracle.kernel_action(l).to_circle(n));
    return i_minus_sstar(analytic_coeffs(w), l);
  }

  Coeffs F(cd l) const {
    Coeffs f = g(l);
    for (size_t k = 0; k < f.size(); ++k) f[k] -= g_mu[k];
    return f;
  }

  // phi_-(lambda) from (S - mu)(I - mu S*)^{-1} F
  cd phi_minus(const Coeffs& f) const {
    const size_t m = f.size();
    Coeffs h(m + 1, 0.0);
    for (size_t j = m; j-- > 0;) h[j] = f[j] + mu * h[j + 1];
    cd num = 0.0;
    for (size_t j = 0; j < m; ++j) {
      const cd x = (j > 0 ? h[j - 1] : cd(0.0)) - mu * h[j];
      num += x * std::conj(kmu[j]);
    }
    return num / (theta_mu * (std::conj(theta0) * theta_mu - 1.0));
  }
};

std::vector<cd> lambda_grid(int count, double r) {
  std::vector<cd> out(count);
  for (int i = 0; i < count; ++i) out[i] = std::polar(r, kTwoPi * (i + 0.5) / count);
  return out;
}

double rebuild_residual(const KernelActionOracle& oracle, const ModelFunction& plus, const ModelFunction& minus,
                        const std::vector<cd>& pts) {
  const ModelSpace& sp = oracle.space();
  const int n = sp.grid();
  TTOperator rb = build(sp, SymbolSpec::boundary(plus.to_circle(n) + minus.to_circle(n).conj()));
  double maxdiff = 0, maxnorm = 0;
  for (cd l : pts) {
    ModelFunction want = oracle.kernel_action(l);
    ModelFunction got = rb.apply(kernel(sp, KernelPoint::interior(l)));
    maxdiff = std::max(maxdiff, (got - want).norm());
    maxnorm = std::max(maxnorm, want.norm());
  }
  return maxnorm > 0 ? maxdiff / maxnorm : maxdiff;
}

}  // namespace

CircleFunction shift_resolvent(const CircleFunction& f, cd lambda) {
  if (negative_content(f) > 1e-10 * std::max(1.0, l2_norm(f)))
    throw ValidationError("shift_resolvent needs an analytic function");
  if (std::abs(lambda) >= 1.0) throw ValidationError("shift_resolvent needs |lambda| < 1");
  Coeffs c = analytic_coeffs(f);
  const size_t m = c.size();
  Coeffs q(m, 0.0);
  for (size_t j = m - 1; j-- > 0;) q[j] = c[j + 1] + lambda * q[j + 1];
  return from_analytic_coeffs(f.size(), q);
}

CircleFunction f_lambda_mu(const KernelActionOracle& oracle, cd lambda, cd mu) {
  const int n = oracle.space().grid();
  auto g = [&](cd l) {
    CircleFunction w = omega(oracle.space(), oracle.kernel_action(l).to_circle(n));
    return i_minus_sstar(analytic_coeffs(w), l);
  };
  Coeffs a = g(lambda), b = g(mu);
  for (size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return from_analytic_coeffs(n, a);
}

cd default_mu(const InnerFunction& theta) {
  std::vector<cd> zs;
  if (theta.monomial_degree() > 0) zs.push_back(0.0);
  for (auto& z : theta.zeros()) zs.push_back(z.a.value());
  cd best = 0.0;
  double score = -1;
  for (double r : {0.2, 0.4, 0.6})
    for (int k = 0; k < 16; ++k) {
      const cd m = std::polar(r, kTwoPi * k / 16);
      double d = 1.0;
      for (cd a : zs) d = std::min(d, std::abs(m - a));
      const double s = std::abs(eval(theta, m)) * d;
      if (s > score) {
        score = s;
        best = m;
      }
    }
  return best;
}

double oracle_rho_r(const KernelActionOracle& oracle, const std::vector<DiskPoint>& samples) {
  double m = 0;
  for (auto& p : samples) {
    double s;
    try {
      s = kernel_scale(oracle.space().theta(), KernelPoint{p});
    } catch (const DomainError&) {
      continue;
    }
    m = std::max(m, s * oracle.kernel_action(p.value()).norm());
  }
  return m;
}

RecoveredSymbol recover(const KernelActionOracle& oracle, const RecoverOptions& opts) {
  const ModelSpace& sp = oracle.space();
  const InnerFunction& th = sp.theta();
  const cd mu = opts.mu.value_or(default_mu(th));
  if (std::abs(mu) >= 1.0) throw ValidationError("mu must lie in the open disk");
  if (std::abs(eval(th, mu)) < 1e-8)
    throw DomainError(DomainKind::DegenerateMu, "|Theta(mu)| < 1e-8; choose another normalization point");
  if (opts.lambda_factor < 1) throw ValidationError("lambda_factor must be >= 1");
  Recap rc(oracle, mu);
  const int n = rc.n;

  std::optional<ModelFunction> minus;
  std::vector<cd> pts;
  if (sp.exact()) {
    const int N = sp.dimension();
    pts = lambda_grid(opts.lambda_factor * N, opts.radius);
    Eigen::MatrixXcd V(pts.size(), N);
    Eigen::VectorXcd y(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      V.row(i) = sp.basis_values(pts[i]).transpose();
      y[i] = rc.phi_minus(rc.F(pts[i]));
    }
    Eigen::VectorXcd x = V.colPivHouseholderQr().solve(y);
    minus = ModelFunction(sp, x);
  } else {
    pts = lambda_grid(16, opts.radius);
    const cd tmu = rc.theta_mu;
    cd l0 = pts[0];
    for (cd l : pts)
      if (std::abs(eval(th, l) - tmu) > std::abs(eval(th, l0) - tmu)) l0 = l;
    const Coeffs f = rc.F(l0);
    const cd c = rc.phi_minus(f);
    const cd D = eval(th, l0) - tmu;
    const Coeffs st = sstar(analytic_coeffs(*sp.theta_on_grid(n)));
    Coeffs s(f.size());
    for (size_t k = 0; k < f.size(); ++k) s[k] = (c * st[k] - f[k]) / D;
    Coeffs pm(f.size(), 0.0);
    pm[0] = -mu * horner(s, mu);
    for (size_t k = 1; k < f.size(); ++k) pm[k] = s[k - 1];
    minus = project(sp, from_analytic_coeffs(n, pm));
  }

  Coeffs psi = rc.g_mu;
  const Coeffs sm = sstar(analytic_coeffs(minus->to_circle(n)));
  for (size_t k = 0; k < psi.size(); ++k) psi[k] += rc.theta_mu * sm[k];
  ModelFunction plus = project(sp, omega(sp, from_analytic_coeffs(n, psi)));

  pts.push_back(mu);
  RecoveredSymbol out{plus, *minus, mu};
  out.residual = rebuild_residual(oracle, plus, *minus, pts);
  if (out.residual > 1e-6)
    throw DomainError(DomainKind::InconsistentOracle,
                      "oracle is not a truncated Toeplitz operator (rebuild residual " + std::to_string(out.residual) + ")");
  const auto samples = opts.rho_samples ? *opts.rho_samples : default_sample_set(th, 24, 64);
  out.rho_r = oracle_rho_r(oracle, samples);
  const double mx = std::max(plus.norm(), minus->norm());
  out.measured_constant = out.rho_r > 0 ? mx / out.rho_r : 0.0;
  return out;
}

RecoveredSymbol recover_via_k0(const KernelActionOracle& oracle) {
  const ModelSpace& sp = oracle.space();
  const int n = sp.grid();
  const cd t0 = eval(sp.theta(), cd(0.0));
  auto th = sp.theta_on_grid(n);
  ModelFunction k0 = kernel(sp, KernelPoint::interior(0.0));
  ModelFunction ak0 = oracle.kernel_action(0.0);
  const cd p0 = inner_product(ak0, k0);
  CircleFunction a = ak0.to_circle(n);
  CircleFunction b = omega(sp, oracle.dq_action(0.0).to_circle(n)).conj();
  const double det = 1.0 - std::norm(t0);
  std::vector<cd> fp(n), fm(n);
  for (int j = 0; j < n; ++j) {
    const cd T = (*th)[j];
    const cd bj = b[j] - p0;
    fp[j] = (a[j] + std::conj(t0) * T * bj) / det;
    fm[j] = std::conj((bj + t0 * std::conj(T) * a[j]) / det);
  }
  ModelFunction plus = project(sp, CircleFunction::from_samples(std::move(fp)));
  ModelFunction minus = project(sp, CircleFunction::from_samples(std::move(fm)));
  RecoveredSymbol out{plus, minus, 0.0};
  std::vector<cd> pts = lambda_grid(16, 0.6);
  pts.push_back(0.0);
  out.residual = rebuild_residual(oracle, plus, minus, pts);
  return out;
}

RecoveredSymbol renormalize(const RecoveredSymbol& s, cd mu) {
  const ModelSpace& sp = s.plus.space();
  ModelFunction k0 = kernel(sp, KernelPoint::interior(0.0));
  const cd cbar = s.minus(mu) / k0(mu);
  RecoveredSymbol out = s;
  out.plus = s.plus + k0 * std::conj(cbar);
  out.minus = s.minus - k0 * cbar;
  out.mu = mu;
  return out;
}

SymbolSpec rank_one_symbol(const ModelSpace& space, const KernelPoint& pt) {
  const InnerFunction& th = space.theta();
  if (pt.on_boundary()) {
    auto ad = has_angular_derivative(th, pt.p.angle);
    if (ad.verdict != AngularDerivative::Verdict::Yes)
      throw DomainError(DomainKind::NoAngularDerivative,
                        std::string("rank-one symbol needs an angular derivative (") + to_string(ad.verdict) + ")");
  }
  const int n = space.grid();
  CircleFunction k2 = kernel_samples(InnerFunction::square(th), pt, n);
  CircleFunction z = CircleFunction::monomial(n, 1);
  return SymbolSpec::boundary(space.theta_on_grid(n)->pointwise(z.pointwise(k2).conj()));
}

LpBound symbol_lp_bound_check(const ModelSpace& space, const CircleFunction& phi, const CircleFunction& psi,
                              double p) {
  TTOperator a = build(space, SymbolSpec::boundary(phi));
  TTOperator b = build(space, SymbolSpec::boundary(psi));
  double diff = 0, scale = 0;
  if (space.exact()) {
    Eigen::MatrixXcd d = a.matrix() - b.matrix();
    diff = d.size() ? Eigen::BDCSVD<Eigen::MatrixXcd>(d).singularValues()(0) : 0.0;
    scale = operator_norm(a);
  } else {
    for (cd l : lambda_grid(8, 0.5)) {
      ModelFunction k = kernel(space, KernelPoint::interior(l));
      ModelFunction ya = a.apply(k);
      diff = std::max(diff, (ya - b.apply(k)).norm());
      scale = std::max(scale, ya.norm());
    }
  }
  if (diff > 1e-8 * std::max(1.0, scale))
    throw DomainError(DomainKind::SymbolsDiffer, "the two symbols define different operators (" +
                                                     std::to_string(diff) + ")");
  LpBound out;
  out.lhs = lp_norm(phi, p);
  out.rhs = lp_norm(psi, p) + l2_norm(phi);
  out.ratio = out.rhs > 0 ? out.lhs / out.rhs : 0.0;
  return out;
}

}  // namespace ttolab
