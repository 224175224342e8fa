#include "commands.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "json_io.hpp"
#include "ttolab/boundedsymbol.hpp"
#include "ttolab/counterexamples.hpp"
#include "ttolab/errors.hpp"
#include "ttolab/recovery.hpp"
#include "ttolab/tto.hpp"

namespace ttolab::cmd {

using json = nlohmann::json;

namespace {

// every command produces an optional table plus scalar/structured fields
struct Output {
  json meta = json::object();
  std::vector<std::string> columns;
  std::set<std::size_t> int_columns;
  std::vector<std::vector<double>> rows;
  std::string default_format = "json";
};

struct Ctx {
  const json& cfg;
  std::set<std::string> used;

  bool has(const char* k) const { return cfg.contains(k) && !cfg.at(k).is_null(); }
  const json& at(const char* k) {
    used.insert(k);
    if (!has(k)) throw ValidationError(std::string("missing required key '") + k + "'");
    return cfg.at(k);
  }
  double number(const char* k, std::optional<double> def = {}) {
    used.insert(k);
    if (!has(k)) {
      if (def) return *def;
      throw ValidationError(std::string("missing required key '") + k + "'");
    }
    if (!cfg.at(k).is_number()) throw ValidationError(std::string("'") + k + "' must be a number");
    return cfg.at(k).get<double>();
  }
  long integer(const char* k, std::optional<long> def = {}) {
    used.insert(k);
    if (!has(k)) {
      if (def) return *def;
      throw ValidationError(std::string("missing required key '") + k + "'");
    }
    if (!cfg.at(k).is_number_integer()) throw ValidationError(std::string("'") + k + "' must be an integer");
    return cfg.at(k).get<long>();
  }
  std::string string(const char* k, const std::string& def) {
    used.insert(k);
    if (!has(k)) return def;
    if (!cfg.at(k).is_string()) throw ValidationError(std::string("'") + k + "' must be a string");
    return cfg.at(k).get<std::string>();
  }
  InnerFunction inner() { return io::parse_inner(at("inner")); }
  ModelSpace space(const InnerFunction& theta) {
    SpaceOptions o;
    o.grid = static_cast<int>(integer("grid", 0));
    const std::string m = string("mode", "auto");
    if (m == "exact")
      o.mode = SpaceMode::Exact;
    else if (m == "truncated")
      o.mode = SpaceMode::Truncated;
    else if (m != "auto")
      throw ValidationError("mode must be auto, exact or truncated");
    return ModelSpace::create(theta, o);
  }
  KernelNormOptions kernel_opts() {
    KernelNormOptions o;
    o.tol = number("tol", o.tol);
    return o;
  }
  NormOptions norm_opts() {
    NormOptions o;
    o.tol = number("tol", o.tol);
    o.budget = static_cast<int>(integer("budget", o.budget));
    return o;
  }
  std::mt19937_64 rng() { return std::mt19937_64(static_cast<std::uint64_t>(integer("seed", 1))); }
  std::vector<cd> points(const char* k) {
    const json& j = at(k);
    if (j.is_array() && !(j.size() == 2 && j[0].is_number())) return io::parse_complex_list(j);
    return {io::parse_complex(j)};
  }
};

const std::set<std::string> kCommon = {"grid", "tol", "budget", "format", "seed", "mode"};

void require_exact(const ModelSpace& s, const char* what) {
  if (!s.exact()) throw ValidationError(std::string(what) + " needs an exact space (finite Blaschke or monomial)");
}

std::string fmt(double v) {
  char buf[64];
  if (v == 0.0) v = 0.0;  // no "-0"
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

Output matrix_output(const Eigen::MatrixXcd& m) {
  Output o;
  o.meta["dimension"] = m.rows();
  o.meta["matrix"] = io::matrix_to_json(m);
  o.columns = {"i", "j", "re", "im"};
  o.int_columns = {0, 1};
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      o.rows.push_back({double(i), double(j), m(i, j).real(), m(i, j).imag()});
  return o;
}

SymbolSpec parse_symbol(const json& j, const ModelSpace& space) {
  if (!j.is_object() || !j.contains("type")) {
    // bare coefficient list/map: a Fourier polynomial
    return SymbolSpec::polynomial(io::parse_polynomial(j));
  }
  const std::string t = j.at("type").get<std::string>();
  if (t == "polynomial") {
    io::require_keys(j, {"type", "coeffs"}, "symbol");
    return SymbolSpec::polynomial(io::parse_polynomial(j.at("coeffs")));
  }
  if (t == "pair") {
    io::require_keys(j, {"type", "plus", "minus"}, "symbol");
    require_exact(space, "pair symbol");
    auto vec = [&](const json& v) {
      auto c = io::parse_complex_list(v);
      if (static_cast<int>(c.size()) != space.dimension()) throw ValidationError("pair symbol: coefficient count must equal the dimension");
      Eigen::VectorXcd x(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) x(i) = c[i];
      return ModelFunction(space, x);
    };
    return SymbolSpec::pair(vec(j.at("plus")), vec(j.at("minus")));
  }
  if (t == "measure") {
    io::require_keys(j, {"type", "atoms"}, "symbol");
    MeasureSpec m;
    for (auto& a : j.at("atoms")) {
      io::require_keys(a, {"angle", "mass"}, "measure atom");
      m.atoms.push_back({a.at("angle").get<double>(), a.at("mass").get<double>()});
    }
    return SymbolSpec::measure(m);
  }
  throw ValidationError("symbol: type must be polynomial, pair or measure");
}

// ---- commands ----

Output cmd_kernels(Ctx& c) {
  auto theta = c.inner();
  auto space = c.space(theta);
  const std::string kind = c.string("kind", "kernel");
  std::vector<KernelPoint> pts;
  if (c.has("boundary")) {
    const json& b = c.at("boundary");
    if (b.is_array())
      for (auto& a : b) pts.push_back(KernelPoint::boundary(a.get<double>()));
    else
      pts.push_back(KernelPoint::boundary(b.get<double>()));
  }
  if (c.has("lambda"))
    for (cd l : c.points("lambda")) pts.push_back(KernelPoint::interior(l));
  if (pts.empty()) throw ValidationError("kernels: give 'lambda' or 'boundary'");
  Output o;
  o.columns = {"point", "index", "re", "im"};
  o.int_columns = {0, 1};
  json arr = json::array();
  for (std::size_t p = 0; p < pts.size(); ++p) {
    ModelFunction f = [&] {
      if (kind == "kernel") return kernel(space, pts[p]);
      if (kind == "normalized_kernel") return normalized_kernel(space, pts[p]);
      if (kind == "dq") return difference_quotient(space, pts[p]);
      if (kind == "normalized_dq") return normalized_difference_quotient(space, pts[p]);
      throw ValidationError("kernels: kind must be kernel, normalized_kernel, dq or normalized_dq");
    }();
    Eigen::VectorXcd v;
    if (space.exact()) {
      v = f.coeffs();
    } else {
      auto a = analytic_coeffs(f.to_circle());
      v = Eigen::Map<Eigen::VectorXcd>(a.data(), static_cast<Eigen::Index>(a.size()));
    }
    for (Eigen::Index i = 0; i < v.size(); ++i) o.rows.push_back({double(p), double(i), v(i).real(), v(i).imag()});
    arr.push_back({{"lambda", io::complex_to_json(pts[p].value())},
                   {"boundary", pts[p].on_boundary()},
                   {"coefficients", io::complex_list_to_json(v)},
                   {"norm", f.norm()},
                   {"norm2_closed", kernel_norm2(theta, pts[p].p)}});
  }
  o.meta["basis"] = space.exact() ? "takenaka-malmquist" : "fourier";
  o.meta["kind"] = kind;
  o.meta["points"] = arr;
  return o;
}

Output cmd_build(Ctx& c) {
  auto theta = c.inner();
  auto space = c.space(theta);
  require_exact(space, "build");
  auto sym = parse_symbol(c.at("symbol"), space);
  TTOperator op = sym.kind() == SymbolSpec::Kind::Measure ? measure_operator(space, sym.measure()) : build(space, sym);
  Output o = matrix_output(op.matrix());
  o.meta["norm"] = operator_norm(op, c.norm_opts());
  return o;
}

Output cmd_recover(Ctx& c) {
  auto theta = c.inner();
  auto space = c.space(theta);
  require_exact(space, "recover");
  double fit = 0.0;
  std::optional<KernelActionOracle> oracle;
  if (c.has("table")) {
    std::vector<std::pair<cd, Eigen::VectorXcd>> table;
    for (auto& row : c.at("table")) {
      io::require_keys(row, {"lambda", "coefficients"}, "table row");
      auto v = io::parse_complex_list(row.at("coefficients"));
      table.emplace_back(io::parse_complex(row.at("lambda")),
                         Eigen::Map<Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size())));
    }
    oracle.emplace(KernelActionOracle::from_table(space, table, &fit));
  } else {
    auto m = io::parse_matrix(c.at("matrix"));
    oracle.emplace(KernelActionOracle::from_operator(TTOperator::from_matrix(space, m)));
  }
  const std::string method = c.string("method", "recap");
  RecoveredSymbol r = [&] {
    if (method == "k0") return recover_via_k0(*oracle);
    if (method != "recap") throw ValidationError("recover: method must be recap or k0");
    RecoverOptions ro;
    if (c.has("mu")) ro.mu = io::parse_complex(c.at("mu"));
    return recover(*oracle, ro);
  }();
  Output o;
  o.meta["method"] = method;
  o.meta["mu"] = io::complex_to_json(r.mu);
  o.meta["plus"] = io::complex_list_to_json(r.plus.coeffs());
  o.meta["minus"] = io::complex_list_to_json(r.minus.coeffs());
  o.meta["residual"] = r.residual;
  o.meta["fit_residual"] = fit;
  o.meta["rho_r"] = r.rho_r;
  o.meta["measured_constant"] = r.measured_constant;
  o.columns = {"index", "plus_re", "plus_im", "minus_re", "minus_im"};
  o.int_columns = {0};
  for (Eigen::Index i = 0; i < r.plus.coeffs().size(); ++i)
    o.rows.push_back({double(i), r.plus.coeffs()(i).real(), r.plus.coeffs()(i).imag(), r.minus.coeffs()(i).real(),
                      r.minus.coeffs()(i).imag()});
  return o;
}

Output cmd_rank_one(Ctx& c) {
  auto theta = c.inner();
  auto space = c.space(theta);
  require_exact(space, "rank-one");
  Eigen::MatrixXcd built, target;
  if (c.has("boundary")) {
    const auto pt = KernelPoint::boundary(c.number("boundary"));
    built = measure_operator(space, MeasureSpec{{Atom{pt.p.angle, 1.0}}, std::nullopt}).matrix();
    auto k = kernel(space, pt);
    target = rank_one_matrix(k, k);
  } else {
    const auto pts = c.points("lambda");
    if (pts.size() != 1) throw ValidationError("rank-one: give a single lambda");
    const auto pt = KernelPoint::interior(pts[0]);
    built = build(space, rank_one_symbol(space, pt)).matrix();
    target = rank_one_matrix(difference_quotient(space, pt), kernel(space, pt));
  }
  Output o = matrix_output(built);
  o.meta["error"] = (built - target).norm();
  o.meta["relative_error"] = (built - target).norm() / std::max(target.norm(), 1e-300);
  return o;
}

Output cmd_fejer_split(Ctx& c) {
  const int N = static_cast<int>(c.integer("N"));
  auto phi = io::parse_polynomial(c.at("symbol"));
  auto w = fejer_windows(N);
  auto s = fejer_split(phi, N);
  Output o;
  o.meta["N"] = N;
  o.meta["M"] = w.M;
  o.meta["phi1"] = io::polynomial_to_json(s.phi1);
  o.meta["phi2"] = io::polynomial_to_json(s.phi2);
  o.meta["phi3"] = io::polynomial_to_json(s.phi3);
  o.meta["eta_l1"] = {l1_norm(w.eta1), l1_norm(w.eta2), l1_norm(w.eta3)};
  o.meta["partition_failures"] = w.partition_failures(N);
  o.columns = {"n", "eta1", "eta2", "eta3"};
  o.int_columns = {0};
  for (int n = -N; n <= N; ++n) o.rows.push_back({double(n), w.eta_hat(1, n).value(), w.eta_hat(2, n).value(), w.eta_hat(3, n).value()});
  return o;
}

Output cmd_cf_extend(Ctx& c) {
  auto coeffs = io::parse_complex_list(c.at("coeffs"));
  if (coeffs.empty()) throw ValidationError("cf-extend: coeffs must be nonempty");
  auto r = minimal_analytic_extension(coeffs, static_cast<int>(c.integer("grid", 0)));
  Output o;
  o.meta["norm"] = r.norm;
  o.meta["sup_norm"] = r.sup_norm;
  o.meta["taylor_error"] = r.taylor_error;
  o.meta["modulus_spread"] = r.modulus_spread;
  o.meta["suboptimal"] = r.suboptimal;
  o.meta["grid"] = r.phi0.size();
  o.columns = {"k", "re", "im"};
  o.int_columns = {0};
  const int n = std::min<int>(r.phi0.size() / 2, 4 * static_cast<int>(coeffs.size()));
  for (int k = 0; k < n; ++k) o.rows.push_back({double(k), r.phi0.coeff(k).real(), r.phi0.coeff(k).imag()});
  return o;
}

Output cmd_assemble(Ctx& c) {
  Output o;
  if (c.has("batch")) {
    const json& b = c.at("batch");
    io::require_keys(b, {"N", "count"}, "batch");
    const int N = b.at("N").get<int>();
    const int count = b.at("count").get<int>();
    if (N < 2 || count < 1) throw ValidationError("batch: need N >= 2 and count >= 1");
    auto rng = c.rng();
    std::normal_distribution<double> g;
    auto space = ModelSpace::create(InnerFunction::monomial(N));
    o.default_format = "csv";
    o.columns = {"index", "N", "sup_norm", "rho", "measured_constant", "build_error", "suboptimal"};
    o.int_columns = {0, 1, 6};
    for (int t = 0; t < count; ++t) {
      FourierPolynomial p;
      for (int k = -(N - 1); k <= N - 1; ++k) p.set(k, {g(rng), g(rng)});
      auto r = assemble_bounded_symbol(build(space, SymbolSpec::polynomial(p)));
      o.rows.push_back({double(t), double(N), r.sup_norm, r.rho, r.measured_constant, r.build_error, r.suboptimal ? 1.0 : 0.0});
    }
    o.meta["N"] = N;
    o.meta["count"] = count;
    return o;
  }
  auto m = io::parse_matrix(c.at("matrix"));
  if (m.rows() != m.cols()) throw ValidationError("assemble: matrix must be square");
  auto space = ModelSpace::create(InnerFunction::monomial(static_cast<int>(m.rows())));
  auto r = assemble_bounded_symbol(TTOperator::from_matrix(space, m));
  o.meta["sup_norm"] = r.sup_norm;
  o.meta["rho"] = r.rho;
  o.meta["measured_constant"] = r.measured_constant;
  o.meta["build_error"] = r.build_error;
  o.meta["suboptimal"] = r.suboptimal;
  auto p0 = FourierPolynomial::from_circle(r.phi0, 1e-13);
  o.meta["phi0_grid"] = r.phi0.size();
  o.columns = {"k", "re", "im"};
  o.int_columns = {0};
  for (auto& [k, v] : p0.coeffs()) o.rows.push_back({double(k), v.real(), v.imag()});
  return o;
}

Output cmd_transport(Ctx& c) {
  auto m = io::parse_matrix(c.at("matrix"));
  if (m.rows() != m.cols()) throw ValidationError("transport: matrix must be square");
  const cd alpha = io::parse_complex(c.at("alpha"));
  auto space = ModelSpace::create(InnerFunction::monomial(static_cast<int>(m.rows())));
  auto a = TTOperator::from_matrix(space, m);
  auto t = blaschke_transport(a, alpha);
  Output o = matrix_output(t.matrix());
  o.meta["inner"] = io::inner_to_json(t.space().theta());
  o.meta["norm"] = operator_norm(a, c.norm_opts());
  o.meta["norm_transported"] = operator_norm(t, c.norm_opts());
  return o;
}

std::unique_ptr<TermSource> family_source(const std::string& name) {
  if (name == "blaschke") return std::make_unique<TangentialBlaschkeFamily>();
  if (name == "singular") return std::make_unique<TangentialAtomFamily>();
  if (name == "radial") return std::make_unique<RadialBlaschkeFamily>();
  throw ValidationError("family must be blaschke, singular or radial");
}

std::vector<long> long_list(Ctx& c, const char* k, std::vector<long> def) {
  if (!c.has(k)) return def;
  std::vector<long> out;
  for (auto& v : c.at(k)) {
    if (!v.is_number_integer()) throw ValidationError(std::string("'") + k + "' must hold integers");
    out.push_back(v.get<long>());
  }
  return out;
}

std::vector<double> double_list(Ctx& c, const char* k, std::vector<double> def) {
  if (!c.has(k)) return def;
  std::vector<double> out;
  for (auto& v : c.at(k)) {
    if (!v.is_number()) throw ValidationError(std::string("'") + k + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Output cmd_cohn_growth(Ctx& c) {
  const std::string fam = c.string("family", "blaschke");
  auto src = family_source(fam);
  const double p = c.number("p", 3.0);
  const double zeta = c.number("zeta", 0.0);
  auto degrees = long_list(c, "degrees", {8, 16, 32});
  auto deficits = double_list(c, "deficits", {0x1p-8, 0x1p-16, 0x1p-32, 0.0});
  auto rep = growth_scan(*src, fam, zeta, p, degrees, deficits, c.kernel_opts());
  Output o;
  o.default_format = "csv";
  o.meta["family"] = fam;
  o.meta["p"] = p;
  o.meta["zeta"] = zeta;
  o.meta["ratio_growth"] = rep.ratio_growth;
  o.meta["l2_change"] = rep.l2_change;
  o.meta["ratio_stabilized"] = rep.ratio_stabilized;
  o.meta["l2_stabilized"] = rep.l2_stabilized;
  o.meta["label"] = "finite-signature";
  o.columns = {"deficit", "degree", "lp_norm", "l2_norm_sq", "ratio", "cohn_2", "cohn_p"};
  o.int_columns = {1};
  for (auto& r : rep.rows)
    o.rows.push_back({r.deficit, double(r.degree), r.lp, r.l2sq, r.ratio, cohn_sum(*src, zeta, 2.0, r.degree),
                      cohn_sum(*src, zeta, p, r.degree)});
  return o;
}

Output cmd_cls_scan(Ctx& c) {
  auto theta = c.inner();
  const int radii = static_cast<int>(c.integer("radii", 24));
  const int angles = static_cast<int>(c.integer("angles", 8));
  auto rep = cls_ratio_scan(theta, radial_scan_points(radii, angles), c.kernel_opts());
  Output o;
  o.default_format = "csv";
  o.meta["max_ratio"] = rep.max_ratio;
  o.meta["zero_count"] = theta.zero_count();
  o.meta["atoms"] = theta.atoms().size();
  o.columns = {"angle", "deficit", "sup_norm", "l2_norm_sq", "ratio"};
  for (auto& r : rep.rows) o.rows.push_back({r.lambda.angle, r.lambda.deficit, r.sup, r.l2sq, r.ratio});
  return o;
}

Output cmd_rkt_scan(Ctx& c) {
  auto theta = c.has("inner") ? c.inner() : InnerFunction::singular({{0.0, 1.0}});
  const double s = c.number("s", 0.5);
  const int grid = static_cast<int>(c.integer("grid", 1 << 13));
  std::vector<cd> lambdas = c.has("lambda") ? c.points("lambda") : std::vector<cd>{0.0};
  auto rep = rkt_failure_scan(theta, s, lambdas, grid);
  Output o;
  o.default_format = "csv";
  o.meta["s"] = s;
  o.meta["grid"] = grid;
  o.meta["max_closed_form"] = rep.max_closed;
  o.meta["sup_bound_holds"] = rep.sup_bound_holds;
  json rows = json::array();
  for (auto& r : rep.rows)
    rows.push_back({{"lambda", io::complex_to_json(r.lambda)},
                    {"y", r.y},
                    {"closed_form", r.normsq_closed},
                    {"norm_sq", r.normsq},
                    {"identity_error", r.identity_err},
                    {"identity_error_fine", r.identity_err_fine},
                    {"order", r.order},
                    {"isometry_ratio", r.isometry_ratio}});
  o.meta["points"] = rows;
  o.columns = {"re", "im", "y", "closed_form", "norm_sq", "identity_error", "identity_error_fine", "order", "isometry_ratio"};
  for (auto& r : rep.rows)
    o.rows.push_back({r.lambda.real(), r.lambda.imag(), r.y, r.normsq_closed, r.normsq, r.identity_err,
                      r.identity_err_fine, r.order, r.isometry_ratio});
  return o;
}

Output cmd_counterex(Ctx& c) {
  const std::string action = c.string("action", "gen");
  const std::string fam = c.string("family", "blaschke");
  const double p = c.number("p", 3.0);
  Output o;
  o.default_format = "csv";
  o.meta["action"] = action;
  o.meta["family"] = fam;
  o.meta["p"] = p;
  if (action == "check") {
    auto src = family_source(fam);
    auto v = counterex_theorem_check(*src, c.number("zeta", 0.0), p, long_list(c, "degrees", {8, 16, 32}), c.kernel_opts());
    o.meta["verdict"] = v.verdict;
    o.meta["kernel_grows"] = v.kernel_grows;
    o.meta["symbol_grows"] = v.symbol_grows;
    o.meta["stabilizes"] = v.stabilizes;
    o.meta["comparison_holds"] = v.comparison_holds;
    o.meta["label"] = "finite-signature";
    o.columns = {"degree", "kernel_lp", "symbol_lp", "kernel_l2_sq", "comparison_holds"};
    o.int_columns = {0, 4};
    for (auto& r : v.rows) o.rows.push_back({double(r.degree), r.kernel_lp, r.symbol_lp, r.kernel_l2sq, r.comparison_holds ? 1.0 : 0.0});
    return o;
  }
  if (action != "gen") throw ValidationError("counterex: action must be gen or check");
  const long K = c.integer("K", 20);
  CounterexampleFamily f = [&] {
    if (fam == "blaschke") return gen_blaschke_counterexample(p, K);
    if (fam == "singular") return gen_singular_counterexample(p, K);
    if (fam == "tangential") return gen_tangential_counterexample(c.number("gamma", 0.5), p, K);
    throw ValidationError("counterex gen: family must be blaschke, singular or tangential");
  }();
  const auto& ce = f.cert;
  o.meta["K"] = K;
  o.meta["gamma"] = f.gamma;
  o.meta["p2_partial"] = ce.p2_partial;
  o.meta["p2_tail_bound"] = ce.p2_tail_bound;
  o.meta["p2_cauchy"] = ce.p2_cauchy;
  o.meta["p2_cauchy_K"] = ce.p2_cauchy_K;
  o.meta["p2_certified"] = ce.p2_certified;
  o.meta["p_increment_min"] = ce.p_increment_min;
  o.meta["p_increment_max"] = ce.p_increment_max;
  o.meta["p_increment_lower_bound"] = ce.p_increment_lower_bound;
  o.meta["fitted_slope"] = ce.fitted_slope;
  o.meta["p_diverges"] = ce.p_diverges;
  o.meta["df3_max_step"] = ce.df3_max_step;
  o.meta["dominance_min"] = ce.dominance_min;
  o.columns = {"k", "angle", "deficit", "mass", "cohn_2_term", "cohn_p_term", "df3"};
  o.int_columns = {0};
  for (std::size_t k = 0; k < f.terms.size(); ++k) {
    const auto& t = f.terms[k];
    o.rows.push_back({double(k + 1), t.where.angle, t.where.deficit, t.mass, ce.p2_terms[k], ce.p_terms[k],
                      k < ce.df3.size() ? ce.df3[k] : 0.0});
  }
  return o;
}

Output cmd_carleson(Ctx& c) {
  auto theta = c.inner();
  auto space = c.space(theta);
  require_exact(space, "carleson");
  const json& mj = c.at("measure");
  io::require_keys(mj, {"atoms", "density"}, "measure");
  MeasureSpec mu;
  if (mj.contains("atoms"))
    for (auto& a : mj.at("atoms")) {
      io::require_keys(a, {"angle", "mass"}, "measure atom");
      mu.atoms.push_back({a.at("angle").get<double>(), a.at("mass").get<double>()});
    }
  if (mj.contains("density")) {
    std::vector<cd> d;
    for (auto& v : mj.at("density")) d.push_back(v.get<double>());
    if (!is_power_of_two(static_cast<long>(d.size()))) throw ValidationError("measure density: sample count must be a power of two");
    mu.density = CircleFunction::from_samples(std::move(d));
  }
  auto op = measure_operator(space, mu);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix());
  const double lmax = es.eigenvalues().maxCoeff();
  const long trials = c.integer("trials", 500);
  auto rng = c.rng();
  std::normal_distribution<double> g;
  double worst = 0.0;
  long violations = 0;
  const Eigen::Index n = op.matrix().rows();
  for (long t = 0; t < trials; ++t) {
    Eigen::VectorXcd f(n);
    for (Eigen::Index i = 0; i < n; ++i) f(i) = {g(rng), g(rng)};
    const double q = (f.adjoint() * op.matrix() * f)(0, 0).real() / f.squaredNorm();
    worst = std::max(worst, q);
    if (q > lmax * (1 + 1e-12)) ++violations;
  }
  Output o;
  o.meta["carleson_constant"] = lmax;
  o.meta["max_rayleigh"] = worst;
  o.meta["trials"] = trials;
  o.meta["violations"] = violations;
  o.columns = {"index", "eigenvalue"};
  o.int_columns = {0};
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) o.rows.push_back({double(i), es.eigenvalues()(i)});
  return o;
}

struct Entry {
  std::function<Output(Ctx&)> fn;
  std::set<std::string> keys;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = {
      {"kernels", {cmd_kernels, {"inner", "lambda", "boundary", "kind"}}},
      {"build", {cmd_build, {"inner", "symbol"}}},
      {"recover", {cmd_recover, {"inner", "table", "matrix", "mu", "method"}}},
      {"rank-one", {cmd_rank_one, {"inner", "lambda", "boundary"}}},
      {"fejer-split", {cmd_fejer_split, {"N", "symbol"}}},
      {"cf-extend", {cmd_cf_extend, {"coeffs"}}},
      {"assemble", {cmd_assemble, {"matrix", "batch"}}},
      {"transport", {cmd_transport, {"matrix", "alpha"}}},
      {"cohn-growth", {cmd_cohn_growth, {"family", "p", "zeta", "degrees", "deficits"}}},
      {"cls-scan", {cmd_cls_scan, {"inner", "radii", "angles"}}},
      {"rkt-scan", {cmd_rkt_scan, {"inner", "s", "lambda"}}},
      {"counterex", {cmd_counterex, {"action", "family", "p", "K", "gamma", "zeta", "degrees"}}},
      {"carleson", {cmd_carleson, {"inner", "measure", "trials"}}},
  };
  return r;
}

std::string render_csv(const std::string& name, const std::string& hash, const Output& o) {
  std::string s = "# ttolab " TTOLAB_VERSION "\n# command " + name + "\n# config_hash " + hash + "\n";
  for (auto it = o.meta.begin(); it != o.meta.end(); ++it)
    if (it.value().is_primitive()) s += "# " + it.key() + " " + it.value().dump() + "\n";
  for (std::size_t i = 0; i < o.columns.size(); ++i) s += (i ? "," : "") + o.columns[i];
  s += "\n";
  for (auto& row : o.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ",";
      if (o.int_columns.count(i))
        s += std::to_string(static_cast<long long>(std::llround(row[i])));
      else
        s += fmt(row[i]);
    }
    s += "\n";
  }
  return s;
}

std::string render_json(const std::string& name, const std::string& hash, const Output& o) {
  json j = o.meta;
  j["version"] = TTOLAB_VERSION;
  j["command"] = name;
  j["config_hash"] = hash;
  if (!o.columns.empty()) {
    j["columns"] = o.columns;
    j["rows"] = o.rows;
  }
  return j.dump(2) + "\n";
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto& [k, e] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

std::string run(const std::string& name, const json& config) {
  auto it = registry().find(name);
  if (it == registry().end()) throw ValidationError("unknown command '" + name + "'");
  if (!config.is_object()) throw ValidationError("configuration must be a JSON object");
  for (auto k = config.begin(); k != config.end(); ++k)
    if (!kCommon.count(k.key()) && !it->second.keys.count(k.key()))
      throw ValidationError("unknown key '" + k.key() + "' for command " + name);
  Ctx ctx{config, {}};
  Output out;
  try {
    out = it->second.fn(ctx);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("configuration: ") + e.what());
  }
  const std::string format = ctx.string("format", out.default_format);
  const std::string hash = io::config_hash(config);
  if (format == "csv") {
    if (out.columns.empty()) throw ValidationError("command " + name + " has no tabular output");
    return render_csv(name, hash, out);
  }
  if (format == "json") return render_json(name, hash, out);
  throw ValidationError("format must be csv or json");
}

}  // namespace ttolab::cmd
