#include "quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "ttolab/errors.hpp"

namespace ttolab::detail {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kMinScale = 1e-15;
constexpr long kMaxPanels = 1L << 20;

struct Anchor {
  double angle;
  double scale;
};

// phase speed of Theta (|Theta'| on the circle, or at the dilated radius) plus the monomial part
double phase_rate(const InnerFunction& theta, const BoundaryNode& node, double dilation) {
  double r = theta.monomial_degree();
  for (auto& z : theta.zeros()) {
    const double del = z.a.deficit;
    const double s = std::sin(0.5 * angle_diff(node, z.a.angle));
    const double d2 = del * del + 4.0 * (1.0 - del) * s * s;
    r += z.mult * del * (2.0 - del) / std::max(d2, 1e-300);
  }
  for (auto& a : theta.atoms()) {
    const double s = std::sin(0.5 * angle_diff(node, a.angle));
    r += 2.0 * a.mass / (4.0 * s * s + dilation * dilation);
  }
  return r;
}
}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw ValidationError("gauss_legendre: n must be positive");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < n; ++i) {
    g.x[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    g.w[i] = 2.0 * v * v;
  }
  // symmetrize to kill eigensolver noise
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (g.x[n - 1 - i] - g.x[i]);
    const double w = 0.5 * (g.w[i] + g.w[n - 1 - i]);
    g.x[i] = -x;
    g.x[n - 1 - i] = x;
    g.w[i] = g.w[n - 1 - i] = w;
  }
  if (n % 2) g.x[n / 2] = 0.0;
  return cache.emplace(n, std::move(g)).first->second;
}

std::vector<Panel> kernel_panels(const InnerFunction& theta, const DiskPoint& lambda, double dilation) {
  std::vector<Anchor> anchors;
  auto norm = [](double t) {
    double a = std::fmod(t, 2.0 * kPi);
    return a < 0 ? a + 2.0 * kPi : a;
  };
  double finest = kMinScale;
  for (auto& z : theta.zeros()) finest = std::min(finest, z.a.deficit);
  // a boundary lambda is smooth on the scale of the nearest zero
  anchors.push_back({norm(lambda.angle), lambda.deficit > 0 ? lambda.deficit : finest});
  for (auto& z : theta.zeros()) anchors.push_back({norm(z.a.angle), z.a.deficit});
  for (auto& a : theta.atoms()) anchors.push_back({norm(a.angle), std::max(dilation, kMinScale)});
  std::sort(anchors.begin(), anchors.end(), [](const Anchor& x, const Anchor& y) {
    return x.angle < y.angle || (x.angle == y.angle && x.scale < y.scale);
  });
  std::vector<Anchor> uniq;
  for (auto& a : anchors)
    if (uniq.empty() || a.angle != uniq.back().angle) uniq.push_back(a);
  // closeness in a single double is fine here; coincident angles were merged above

  std::vector<Panel> out;
  auto push_split = [&](double anchor, double a, double b) {
    const double w = b - a;
    double rate = 0;
    for (double t : {a, 0.5 * (a + b), b}) rate = std::max(rate, phase_rate(theta, {anchor, t, dilation}, dilation));
    long pieces = static_cast<long>(std::ceil(std::max(rate * w / 2.0, w / (kPi / 4.0))));
    pieces = std::max(pieces, 1L);
    if (static_cast<long>(out.size()) + pieces > kMaxPanels)
      throw NoConvergence("kernel quadrature: panel budget exceeded");
    for (long j = 0; j < pieces; ++j)
      out.push_back({anchor, a + w * j / pieces, a + w * (j + 1) / pieces});
  };
  // graded panels from the anchor out to offset h (sign gives the side)
  auto graded = [&](const Anchor& an, double h) {
    const double sgn = h < 0 ? -1.0 : 1.0;
    const double H = std::abs(h);
    double lo = 0.0, hi = std::min(an.scale, H);
    while (true) {
      if (sgn > 0)
        push_split(an.angle, lo, hi);
      else
        push_split(an.angle, -hi, -lo);
      if (hi >= H) break;
      lo = hi;
      hi = std::min(2.0 * hi, H);
    }
  };
  const std::size_t m = uniq.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Anchor& a = uniq[i];
    const Anchor& b = uniq[(i + 1) % m];
    double gap = (m == 1) ? 2.0 * kPi : b.angle - a.angle;
    if (gap <= 0) gap += 2.0 * kPi;
    graded(a, 0.5 * gap);
    graded(b, -0.5 * gap);
  }
  return out;
}

double integrate(const std::vector<Panel>& panels, int n, const std::function<double(const BoundaryNode&)>& f,
                 double dilation) {
  const GaussRule& g = gauss_legendre(n);
  double total = 0.0;
  for (auto& p : panels) {
    const double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += g.w[i] * f({p.anchor, c + h * g.x[i], dilation});
    total += h * s;
  }
  return total / (2.0 * kPi);
}

}  // namespace ttolab::detail
