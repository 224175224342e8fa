#include "ttolab/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadrature.hpp"
#include "ttolab/errors.hpp"
#include "ttolab/modelspace.hpp"

namespace ttolab {

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); }

// |zeta - a| for zeta = e^{i t}
double boundary_distance(const DiskPoint& a, double t) {
  const double s = std::sin(0.5 * angle_diff(a.angle, t));
  return std::sqrt(a.deficit * a.deficit + 4.0 * (1.0 - a.deficit) * s * s);
}

// Node maxima of |k| are refined by golden-section search between the neighbouring nodes; the
// kernel modulus peaks once per fast phase sweep of Theta, and node sampling alone only finds
// each peak to O(h^2).
double refined_sup(const InnerFunction& theta, const DiskPoint& lambda, const std::vector<detail::Panel>& panels,
                   int n, double dil, const std::vector<double>& values, double sup) {
  const detail::GaussRule& g = detail::gauss_legendre(n);
  struct Cand {
    double v;
    std::size_t panel;
    int node;
  };
  std::vector<Cand> cands;
  for (std::size_t pi = 0; pi < panels.size(); ++pi)
    for (int i = 0; i < n; ++i) {
      const double v = values[pi * n + i];
      if (v < 0.8 * sup) continue;
      const bool left = i == 0 || values[pi * n + i - 1] <= v;
      const bool right = i == n - 1 || values[pi * n + i + 1] <= v;
      if (left && right) cands.push_back({v, pi, i});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.v != b.v ? a.v > b.v : (a.panel != b.panel ? a.panel < b.panel : a.node < b.node);
  });
  if (cands.size() > 256) cands.resize(256);
  constexpr double kGold = 0.6180339887498949;
  for (auto& c : cands) {
    const auto& pn = panels[c.panel];
    const double mid = 0.5 * (pn.a + pn.b), h = 0.5 * (pn.b - pn.a);
    double lo = c.node == 0 ? pn.a : mid + h * g.x[c.node - 1];
    double hi = c.node == n - 1 ? pn.b : mid + h * g.x[c.node + 1];
    auto f = [&](double t) { return std::abs(kernel_at(theta, lambda, {pn.anchor, t, dil})); };
    double x1 = hi - kGold * (hi - lo), x2 = lo + kGold * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kGold * (hi - lo);
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kGold * (hi - lo);
        f1 = f(x1);
      }
    }
    sup = std::max({sup, f1, f2});
  }
  return sup;
}

}  // namespace

KernelNorms kernel_norms(const InnerFunction& theta, const DiskPoint& lambda, double p,
                         const KernelNormOptions& opts) {
  if (!(p >= 1.0)) throw ValidationError("kernel_norms: p must be >= 1");
  if (lambda.deficit < 0 || lambda.deficit > 1) throw ValidationError("kernel_norms: lambda outside the disk");
  if (lambda.on_boundary()) {
    if (is_atom(theta, lambda.angle)) throw DomainError(DomainKind::AtomAtPoint, "kernel at an atom");
    auto ad = has_angular_derivative(theta, lambda.angle);
    if (ad.verdict != AngularDerivative::Verdict::Yes)
      throw DomainError(DomainKind::NoAngularDerivative, "kernel at a boundary point");
  }
  const bool inf = std::isinf(p);
  const double dil = theta.has_singular_part() ? opts.dilation : 0.0;
  const auto panels = detail::kernel_panels(theta, lambda, dil);

  double sup_anchor = 0.0;
  for (auto& pn : panels)
    for (double t : {pn.a, pn.b}) sup_anchor = std::max(sup_anchor, std::abs(kernel_at(theta, lambda, {pn.anchor, t, dil})));

  KernelNorms out;
  out.panels = static_cast<long>(panels.size());
  out.l2sq_closed = kernel_norm2(theta, lambda);
  double prev_p = -1, prev_2 = -1;
  for (int n : {16, 32, 64}) {
    double sup = sup_anchor;
    double ip = 0.0;
    std::vector<double> values;
    if (inf) values.reserve(panels.size() * n);
    const double i2 = detail::integrate(
        panels, n,
        [&](const BoundaryNode& z) {
          const double a = std::abs(kernel_at(theta, lambda, z));
          sup = std::max(sup, a);
          if (inf) values.push_back(a);
          return a * a;
        },
        dil);
    if (inf)
      ip = refined_sup(theta, lambda, panels, n, dil, values, sup);
    else
      ip = detail::integrate(
          panels, n, [&](const BoundaryNode& z) { return std::pow(std::abs(kernel_at(theta, lambda, z)), p); }, dil);
    if (prev_p >= 0 && rel_diff(ip, prev_p) <= opts.tol && rel_diff(i2, prev_2) <= opts.tol) {
      out.lp = inf ? ip : std::pow(ip, 1.0 / p);
      out.l2sq = i2;
      out.nodes_per_panel = n;
      return out;
    }
    prev_p = ip;
    prev_2 = i2;
  }
  throw NoConvergence("kernel_norms: quadrature did not stabilise at 64 nodes per panel");
}

double growth_ratio(const InnerFunction& theta, const DiskPoint& lambda, double p, const KernelNormOptions& opts) {
  auto k = kernel_norms(theta, lambda, p, opts);
  return k.lp / k.l2sq;
}

GrowthScanReport growth_scan(const TermSource& family, const std::string& name, double zeta_angle, double p,
                             const std::vector<long>& degrees, const std::vector<double>& deficits,
                             const KernelNormOptions& opts) {
  if (degrees.empty() || deficits.empty()) throw ValidationError("growth_scan: empty degree or radius list");
  std::vector<long> degs = degrees;
  std::sort(degs.begin(), degs.end());
  std::vector<double> defs = deficits;
  std::sort(defs.begin(), defs.end(), std::greater<>());  // r ascending
  for (double d : defs)
    if (d < 0 || d > 1) throw ValidationError("growth_scan: deficit outside [0, 1]");

  GrowthScanReport rep;
  rep.theta = name;
  rep.zeta_angle = zeta_angle;
  rep.p = p;
  std::vector<InnerFunction> thetas;
  for (long K : degs) thetas.push_back(truncate(family, K));
  for (double d : defs)
    for (std::size_t j = 0; j < degs.size(); ++j) {
      auto k = kernel_norms(thetas[j], DiskPoint{zeta_angle, d}, p, opts);
      rep.rows.push_back({d, degs[j], k.lp, k.l2sq, k.lp / k.l2sq});
    }
  const std::size_t m = degs.size();
  const auto last = rep.rows.end() - static_cast<long>(m);
  rep.ratio_stabilized = true;
  for (std::size_t j = 1; j < m; ++j) {
    const GrowthRow &a = last[j - 1], &b = last[j];
    rep.ratio_growth.push_back(b.ratio / a.ratio);
    rep.l2_change.push_back(rel_diff(b.l2sq, a.l2sq));
    if (b.ratio / a.ratio >= 1.05) rep.ratio_stabilized = false;
  }
  rep.l2_stabilized = !rep.l2_change.empty() && rep.l2_change.back() < 1e-4;
  return rep;
}

// ---- families ----

InnerFunction CounterexampleFamily::theta() const {
  return truncate(FiniteSource(terms), static_cast<long>(terms.size()));
}

namespace {

void fill_certificate(CounterexampleFamily& fam, const TermSource& src, double tail_c, double lower_bound) {
  auto& c = fam.cert;
  const long K = fam.K;
  for (long k = 0; k < K; ++k) {
    auto t = src.term(k);
    fam.terms.push_back(*t);
    c.p2_terms.push_back(cohn_term(*t, fam.zeta_angle, 2.0));
    c.p_terms.push_back(cohn_term(*t, fam.zeta_angle, fam.p));
  }
  auto partial = [](const std::vector<double>& v, long n) {
    double s = 0;
    for (long k = 0; k < n; ++k) s += v[k];
    return s;
  };
  auto cauchy = [&](const std::vector<double>& v, long n) {
    // terms are positive, so max_j |S_n - S_j| over the last quarter is the sum of that quarter
    const long q = std::max(1L, n / 4);
    return partial(v, n) - partial(v, n - q);
  };
  c.p2_partial = partial(c.p2_terms, K);
  c.p2_tail_bound = tail_c * std::ldexp(1.0, -static_cast<int>(std::min(K, 1000L)));
  c.p2_cauchy = cauchy(c.p2_terms, K);
  c.p2_certified = c.p2_tail_bound < 1e-5;
  std::vector<double> ext = c.p2_terms;
  for (long n = K; n <= 256; n *= 2) {
    while (static_cast<long>(ext.size()) < n) ext.push_back(cohn_term(*src.term(static_cast<long>(ext.size())), fam.zeta_angle, 2.0));
    if (cauchy(ext, n) <= 1e-8) {
      c.p2_cauchy_K = n;
      break;
    }
  }

  c.p_increment_min = *std::min_element(c.p_terms.begin(), c.p_terms.end());
  c.p_increment_max = *std::max_element(c.p_terms.begin(), c.p_terms.end());
  c.p_increment_lower_bound = lower_bound;
  double num = 0, den = 0, s = 0;
  for (long k = 0; k < K; ++k) {
    s += c.p_terms[k];
    num += (k + 1) * s;
    den += double(k + 1) * (k + 1);
  }
  c.fitted_slope = num / den;
  c.p_diverges = lower_bound >= 0.5 && c.p_increment_min >= lower_bound;

  for (auto& t : fam.terms)
    if (!t.atom)
      c.df3.push_back(std::pow(t.where.deficit, 1.0 - 1.0 / fam.p) / boundary_distance(t.where, fam.zeta_angle));
  for (std::size_t k = 1; k < c.df3.size(); ++k) c.df3_max_step = std::max(c.df3_max_step, c.df3[k] / c.df3[k - 1]);
}

}  // namespace

CounterexampleFamily gen_blaschke_counterexample(double p, long K) {
  if (!(p > 2)) throw ValidationError("gen_blaschke_counterexample: p must exceed 2");
  if (K < 4 || K > 1000) throw ValidationError("gen_blaschke_counterexample: K must lie in [4, 1000]");
  CounterexampleFamily fam;
  fam.kind = CounterexampleFamily::Kind::BlaschkeTangential;
  fam.p = p;
  fam.K = K;
  // 1-|a|^2 >= 8^-k and |1-a| <= 2^-k (1 + 4^-k) <= 1.25 * 2^-k give term_k >= 2^{k(p-3)} / 1.25^p;
  // 1-|a|^2 <= 2 * 8^-k and |1-a| >= (7/8) sin(2^-k) give the p = 2 tail constant 2.85
  const double lb = p >= 3 ? std::pow(2.0, p - 3.0) / std::pow(1.25, p) : 0.0;
  fill_certificate(fam, TangentialBlaschkeFamily(), 2.85, lb);
  return fam;
}

CounterexampleFamily gen_singular_counterexample(double p, long K) {
  if (!(p > 2)) throw ValidationError("gen_singular_counterexample: p must exceed 2");
  if (K < 4 || K > 1000) throw ValidationError("gen_singular_counterexample: K must lie in [4, 1000]");
  CounterexampleFamily fam;
  fam.kind = CounterexampleFamily::Kind::SingularAtoms;
  fam.p = p;
  fam.K = K;
  // |1 - zeta_k| = 2 sin(2^{-k-1}) lies in [0.989 * 2^-k, 2^-k]
  const double lb = p >= 3 ? 1.0 : 0.0;
  fill_certificate(fam, TangentialAtomFamily(), 1.03, lb);
  return fam;
}

CounterexampleFamily gen_tangential_counterexample(double gamma, double p, long K) {
  if (!(gamma > 0 && gamma < 1)) throw ValidationError("gen_tangential_counterexample: gamma must lie in (0, 1)");
  if (!(p > 2) || !(p > 1.0 / (1.0 - gamma))) throw ValidationError("gen_tangential_counterexample: need p > max(2, 1/(1-gamma))");
  if (!(gamma * p > 1)) throw ValidationError("gen_tangential_counterexample: need gamma * p > 1");
  if (K < 4) throw ValidationError("gen_tangential_counterexample: K must be at least 4");
  const long kmax = static_cast<long>(std::floor(1000.0 / p));
  if (K > kmax) throw ValidationError("gen_tangential_counterexample: K too large for double precision");

  auto cand = [&](long k) { return DiskPoint{std::ldexp(1.0, -static_cast<int>(k)), std::exp2(-p * k)}; };
  auto contrib = [](const DiskPoint& a, double t) {
    const double d = boundary_distance(a, t);
    return a.deficit * (2.0 - a.deficit) / (d * d);
  };
  auto shares = [&](const std::vector<DiskPoint>& z) {
    double mn = 1.0;
    for (auto& zn : z) {
      double tot = 0;
      for (auto& zm : z) tot += contrib(zm, zn.angle);
      mn = std::min(mn, contrib(zn, zn.angle) / tot);
    }
    return mn;
  };
  std::vector<DiskPoint> kept;
  for (long k = 1; k <= kmax && static_cast<long>(kept.size()) < K; ++k) {
    kept.push_back(cand(k));
    if (shares(kept) < 0.9) kept.pop_back();
  }
  if (static_cast<long>(kept.size()) < K)
    throw NoConvergence("gen_tangential_counterexample: greedy selection ran out of candidates");

  std::vector<SequenceTerm> terms;
  for (auto& z : kept) terms.push_back(SequenceTerm{false, z, 0.0, 1});
  FiniteSource src(terms);
  CounterexampleFamily fam;
  fam.kind = CounterexampleFamily::Kind::BlaschkeTangential;
  fam.gamma = gamma;
  fam.p = p;
  fam.K = K;
  // term_k ~ 2 for the target p and ~ 2^{1 - k(p-2)} for p = 2
  const double tail_c = 4.0 / (std::exp2(p - 2.0) - 1.0);
  fill_certificate(fam, src, tail_c, 0.0);
  fam.cert.p2_tail_bound = tail_c * std::exp2(-(p - 2.0) * K);
  fam.cert.p2_certified = fam.cert.p2_tail_bound < 1e-5;
  fam.cert.p_diverges = fam.cert.p_increment_min >= 0.5;
  fam.cert.dominance_min = shares(kept);
  return fam;
}

// ---- CLS ----

std::vector<DiskPoint> radial_scan_points(int radii, int angles) {
  if (radii < 1 || angles < 1) throw ValidationError("radial_scan_points: counts must be positive");
  std::vector<DiskPoint> out;
  out.push_back(DiskPoint{0.0, 1.0});
  for (int a = 0; a < angles; ++a)
    for (int r = 1; r <= radii; ++r) out.push_back(DiskPoint{kTwoPi * a / angles, std::ldexp(1.0, -r)});
  return out;
}

ClsReport cls_ratio_scan(const InnerFunction& theta, const std::vector<DiskPoint>& samples,
                         const KernelNormOptions& opts) {
  ClsReport rep;
  for (auto& l : samples) {
    if (l.on_boundary()) throw ValidationError("cls_ratio_scan: samples must lie in the open disk");
    auto k = kernel_norms(theta, l, std::numeric_limits<double>::infinity(), opts);
    ClsRow row{l, k.lp, k.l2sq_closed, k.lp / k.l2sq_closed};
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    rep.rows.push_back(row);
  }
  return rep;
}

// ---- RKT ----

double rkt_closed_form(double y, double s) {
  if (y <= 0) return 0.0;
  if (y >= 1) return 1.0 - s;  // limit y -> 1
  return (std::pow(y, s) - y) / (1.0 - y);
}

namespace {

struct RktGridResult {
  double identity_err, normsq, iso;
};

RktGridResult rkt_on_grid(const InnerFunction& theta, const InnerFunction& ts, const InnerFunction& t1s, double s,
                          cd lambda, int n) {
  (void)s;
  auto space = ModelSpace::create(theta, {n, SpaceMode::Truncated});
  const auto pt = KernelPoint::interior(lambda);
  const auto ts_grid = CircleFunction::sample(n, [&](double t) { return boundary_sample(ts, t); });
  const auto k = kernel_samples(theta, pt, n);
  const auto Ak = project_circle(space, ts_grid.conj().pointwise(k));
  const auto k1 = kernel_samples(t1s, pt, n);
  const cd tl = std::conj(eval(ts, lambda));
  const auto target = k1 * tl;
  RktGridResult r;
  r.identity_err = l2_norm(Ak - target) / l2_norm(target);
  const double sc = kernel_scale(theta, pt);
  r.normsq = sc * sc * std::pow(l2_norm(Ak), 2);
  const auto f = ts_grid.pointwise(k1);
  const auto Af = project_circle(space, ts_grid.conj().pointwise(f));
  r.iso = l2_norm(Af) / l2_norm(f);
  return r;
}

}  // namespace

RktReport rkt_failure_scan(const InnerFunction& theta, double s, const std::vector<cd>& lambdas, int grid) {
  if (!(s > 0 && s < 1)) throw ValidationError("rkt_failure_scan: s must lie in (0, 1)");
  if (!theta.has_singular_part() || !theta.zeros().empty() || theta.monomial_degree() != 0)
    throw ValidationError("rkt_failure_scan: Theta must be singular with atoms only");
  if (!is_power_of_two(grid) || grid < 64) throw ValidationError("rkt_failure_scan: grid must be a power of two >= 64");
  const auto ts = power(theta, s);
  const auto t1s = power(theta, 1.0 - s);
  RktReport rep;
  rep.s = s;
  rep.grid = grid;
  rep.sup_bound_holds = true;
  for (cd l : lambdas) {
    if (std::abs(l) >= 1) throw ValidationError("rkt_failure_scan: lambda must lie in the open disk");
    RktRow row;
    row.lambda = l;
    row.y = std::norm(eval(theta, l));
    row.normsq_closed = rkt_closed_form(row.y, s);
    auto coarse = rkt_on_grid(theta, ts, t1s, s, l, grid);
    auto fine = rkt_on_grid(theta, ts, t1s, s, l, 2 * grid);
    row.identity_err = coarse.identity_err;
    row.identity_err_fine = fine.identity_err;
    row.order = std::log2(coarse.identity_err / fine.identity_err);
    row.normsq = coarse.normsq;
    row.isometry_ratio = coarse.iso;
    if (fine.identity_err > coarse.identity_err)
      throw NoConvergence("rkt_failure_scan: identity error grew under grid doubling");
    rep.max_closed = std::max(rep.max_closed, row.normsq_closed);
    if (row.normsq_closed > (1.0 - s) + 8 * std::numeric_limits<double>::epsilon()) rep.sup_bound_holds = false;
    rep.rows.push_back(row);
  }
  return rep;
}

// ---- theorem check ----

TheoremVerdict counterex_theorem_check(const TermSource& family, double zeta_angle, double p,
                                       const std::vector<long>& degrees, const KernelNormOptions& opts) {
  if (!(p >= 2)) throw ValidationError("counterex_theorem_check: p must be >= 2");
  if (degrees.size() < 2) throw ValidationError("counterex_theorem_check: need at least two degrees");
  auto ad = has_angular_derivative(family, zeta_angle);
  if (ad.verdict != AngularDerivative::Verdict::Yes)
    throw DomainError(DomainKind::NoAngularDerivative, "counterex_theorem_check: no angular derivative certificate");
  std::vector<long> degs = degrees;
  std::sort(degs.begin(), degs.end());
  TheoremVerdict v;
  v.p = p;
  v.zeta_angle = zeta_angle;
  v.comparison_holds = true;
  const auto zeta = DiskPoint::boundary(zeta_angle);
  for (long K : degs) {
    auto th = truncate(family, K);
    auto k1 = kernel_norms(th, zeta, p, opts);
    auto k2 = kernel_norms(InnerFunction::square(th), zeta, p, opts);
    TheoremRow row{K, k1.lp, k2.lp, k1.l2sq, k2.lp <= 2.0 * k1.lp * (1.0 + 1e-9)};
    v.comparison_holds = v.comparison_holds && row.comparison_holds;
    v.rows.push_back(row);
  }
  v.kernel_grows = v.symbol_grows = true;
  for (std::size_t j = 1; j < v.rows.size(); ++j) {
    if (v.rows[j].kernel_lp < 1.05 * v.rows[j - 1].kernel_lp) v.kernel_grows = false;
    if (v.rows[j].symbol_lp < 1.05 * v.rows[j - 1].symbol_lp) v.symbol_grows = false;
  }
  const auto &a = v.rows[v.rows.size() - 2], &b = v.rows.back();
  v.stabilizes = rel_diff(b.kernel_lp, a.kernel_lp) < 1e-4 && rel_diff(b.symbol_lp, a.symbol_lp) < 1e-4;
  if (v.kernel_grows && v.symbol_grows)
    v.verdict = "unbounded (finite signature)";
  else if (v.stabilizes)
    v.verdict = "stable";
  else
    v.verdict = "inconclusive";
  return v;
}

}  // namespace ttolab
