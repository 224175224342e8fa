#include "ttolab/inner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "numerics.hpp"
#include "ttolab/errors.hpp"

namespace ttolab {

using detail::em1;

DiskPoint DiskPoint::from_complex(cd z) {
  const double r = std::abs(z);
  if (r > 1.0 + 1e-12) throw ValidationError("point outside the closed unit disk");
  return {r == 0.0 ? 0.0 : std::arg(z), std::max(0.0, 1.0 - r)};
}

cd DiskPoint::value() const { return std::polar(1.0 - deficit, angle); }

double angle_diff(double a, double b) { return std::remainder(a - b, kTwoPiD); }

double angle_diff(const BoundaryNode& node, double ref) {
  double d = std::remainder(node.anchor - ref, kTwoPiD) + node.offset;
  if (std::abs(d) > kPiD) d = std::remainder(d, kTwoPiD);
  return d;
}

// ---------------- construction ----------------

InnerFunction InnerFunction::monomial(int degree) {
  if (degree < 1) throw ValidationError("monomial degree must be >= 1");
  InnerFunction f;
  f.kind_ = Kind::Monomial;
  f.monomial_degree_ = degree;
  return f;
}

InnerFunction InnerFunction::blaschke(std::vector<BlaschkeZero> zeros) {
  if (zeros.empty()) throw ValidationError("Blaschke product needs at least one zero");
  for (auto& z : zeros) {
    if (!(z.a.deficit > 0.0) || z.a.deficit > 1.0)
      throw ValidationError("Blaschke zeros must lie in the open disk");
    if (z.mult < 1) throw ValidationError("zero multiplicity must be >= 1");
  }
  InnerFunction f;
  f.kind_ = Kind::Blaschke;
  f.zeros_ = std::move(zeros);
  return f;
}

InnerFunction InnerFunction::blaschke_from_points(const std::vector<cd>& zeros) {
  std::vector<BlaschkeZero> z;
  for (auto a : zeros) z.push_back({DiskPoint::from_complex(a), 1});
  return blaschke(std::move(z));
}

InnerFunction InnerFunction::singular(std::vector<Atom> atoms) {
  if (atoms.empty()) throw ValidationError("singular factor needs at least one atom");
  for (auto& a : atoms)
    if (!(a.mass > 0.0)) throw ValidationError("atom masses must be positive");
  InnerFunction f;
  f.kind_ = Kind::Singular;
  f.atoms_ = std::move(atoms);
  return f;
}

InnerFunction InnerFunction::product(std::vector<InnerFunction> factors) {
  if (factors.empty()) throw ValidationError("product needs at least one factor");
  InnerFunction f;
  f.kind_ = Kind::Product;
  f.children_ = std::move(factors);
  f.flatten_from_children();
  return f;
}

void InnerFunction::flatten_from_children() {
  monomial_degree_ = 0;
  zeros_.clear();
  atoms_.clear();
  for (auto& c : children_) {
    monomial_degree_ += c.monomial_degree_;
    zeros_.insert(zeros_.end(), c.zeros_.begin(), c.zeros_.end());
    for (auto& a : c.atoms_) {
      auto it = std::find_if(atoms_.begin(), atoms_.end(), [&](const Atom& b) {
        return std::abs(angle_diff(a.angle, b.angle)) <= 1e-14;
      });
      if (it == atoms_.end())
        atoms_.push_back(a);
      else
        it->mass += a.mass;
    }
  }
}

int InnerFunction::zero_count() const {
  int n = monomial_degree_;
  for (auto& z : zeros_) n += z.mult;
  return n;
}

InnerFunction power(const InnerFunction& theta, double s) {
  if (!(s > 0.0 && s <= 1.0)) throw ValidationError("power exponent must lie in (0,1]");
  if (theta.zero_count() != 0 || theta.atoms().empty())
    throw DomainError(DomainKind::UnsupportedVariant,
                      "fractional powers are only defined for singular atomic inner functions");
  InnerFunction f;
  f.kind_ = InnerFunction::Kind::Power;
  f.children_ = {theta};
  f.exponent_ = s;
  for (auto a : theta.atoms()) {
    a.mass *= s;
    f.atoms_.push_back(a);
  }
  return f;
}

// ---------------- evaluation ----------------

namespace {

// b_a(z) e^{-i theta_a}, with d = arg z - theta_a
cd blaschke_rotated(const DiskPoint& a, double eps, double d) {
  const double del = a.deficit;
  const cd E = em1(d);
  const cd num = (eps - del) - (1.0 - eps) * E;
  const cd den = (del + eps - del * eps) - (1.0 - del) * (1.0 - eps) * E;
  return num / den;
}

// bracket with z - zeta = e^{i alpha} * bracket
cd atom_bracket(double eps, double d) {
  const cd E = em1(d);
  return E - eps * (1.0 + E);
}

cd power_int(cd b, int m) {
  cd r = 1.0;
  for (int i = 0; i < m; ++i) r *= b;
  return r;
}

}  // namespace

cd eval(const InnerFunction& theta, const DiskPoint& z) {
  const double eps = z.deficit;
  cd v = 1.0;
  if (theta.monomial_degree() > 0)
    v *= std::pow(1.0 - eps, theta.monomial_degree()) *
         std::polar(1.0, theta.monomial_degree() * z.angle);
  for (auto& zero : theta.zeros()) {
    const cd b = std::polar(1.0, zero.a.angle) * blaschke_rotated(zero.a, eps, angle_diff(z.angle, zero.a.angle));
    v *= power_int(b, zero.mult);
  }
  for (auto& at : theta.atoms()) {
    const double d = angle_diff(z.angle, at.angle);
    const cd den = atom_bracket(eps, d);
    if (den == cd(0.0))
      throw DomainError(DomainKind::UndefinedBoundaryValue, "evaluation at a singular atom");
    const cd E = em1(d);
    const cd num = 2.0 + E - eps * (1.0 + E);
    v *= std::exp(at.mass * (num / den));
  }
  return v;
}

cd eval(const InnerFunction& theta, cd z) {
  if (std::abs(z) > 1.0 + 1e-12) throw ValidationError("eval outside the closed disk");
  if (std::abs(z) >= 1.0 - 1e-15) return boundary_value(theta, std::arg(z));
  return eval(theta, DiskPoint::from_complex(z));
}

bool is_atom(const InnerFunction& theta, double angle) {
  for (auto& at : theta.atoms())
    if (std::abs(angle_diff(angle, at.angle)) <= 1e-14) return true;
  return false;
}

cd boundary_value(const InnerFunction& theta, double angle) {
  if (is_atom(theta, angle))
    throw DomainError(DomainKind::UndefinedBoundaryValue, "boundary value at a singular atom");
  return eval(theta, DiskPoint::boundary(angle));
}

cd boundary_sample(const InnerFunction& theta, double angle) {
  if (is_atom(theta, angle)) return 0.0;
  return eval(theta, DiskPoint::boundary(angle));
}

double one_minus_abs2(const InnerFunction& theta, const DiskPoint& z) {
  const double eps = z.deficit;
  if (eps == 0.0) {
    if (is_atom(theta, z.angle))
      throw DomainError(DomainKind::UndefinedBoundaryValue, "modulus at a singular atom");
    return 0.0;
  }
  const double one_minus_r2 = eps * (2.0 - eps);
  double L = 0.0;  // log |Theta(z)|^2
  if (theta.monomial_degree() > 0) L += 2.0 * theta.monomial_degree() * std::log1p(-eps);
  for (auto& zero : theta.zeros()) {
    const double del = zero.a.deficit;
    const cd E = em1(angle_diff(z.angle, zero.a.angle));
    const cd den = (del + eps - del * eps) - (1.0 - del) * (1.0 - eps) * E;
    const double u = del * (2.0 - del) * one_minus_r2 / std::norm(den);
    if (u >= 1.0) return 1.0;
    L += zero.mult * std::log1p(-u);
  }
  for (auto& at : theta.atoms()) {
    const cd P = atom_bracket(eps, angle_diff(z.angle, at.angle));
    L -= 2.0 * at.mass * one_minus_r2 / std::norm(P);
  }
  return -std::expm1(L);
}

double boundary_derivative_modulus(const InnerFunction& theta, double angle) {
  double s = theta.monomial_degree();
  for (auto& zero : theta.zeros()) {
    const double del = zero.a.deficit;
    const double sn = std::sin(0.5 * angle_diff(angle, zero.a.angle));
    s += zero.mult * del * (2.0 - del) / (del * del + 4.0 * (1.0 - del) * sn * sn);
  }
  for (auto& at : theta.atoms()) {
    const double sn = std::sin(0.5 * angle_diff(angle, at.angle));
    if (sn == 0.0) throw DomainError(DomainKind::AtomAtPoint, "derivative at a singular atom");
    s += 2.0 * at.mass / (4.0 * sn * sn);
  }
  return s;
}

cd derivative(const InnerFunction& theta, cd z) {
  if (std::abs(z) >= 1.0 - 1e-15) {
    const double t = std::arg(z);
    return std::polar(1.0, -t) * boundary_value(theta, t) * boundary_derivative_modulus(theta, t);
  }
  cd P = 1.0, dP = 0.0;
  auto mul = [&](cd f, cd df) {
    dP = dP * f + P * df;
    P *= f;
  };
  const int D = theta.monomial_degree();
  if (D > 0) mul(std::pow(z, D), double(D) * std::pow(z, D - 1));
  for (auto& zero : theta.zeros()) {
    const cd a = zero.a.value();
    const cd den = 1.0 - std::conj(a) * z;
    const cd b = (a - z) / den;
    const cd db = -(1.0 - std::norm(a)) / (den * den);
    mul(power_int(b, zero.mult), double(zero.mult) * power_int(b, zero.mult - 1) * db);
  }
  for (auto& at : theta.atoms()) {
    const cd zeta = std::polar(1.0, at.angle);
    const cd S = std::exp(at.mass * (z + zeta) / (z - zeta));
    mul(S, S * at.mass * (-2.0 * zeta) / ((z - zeta) * (z - zeta)));
  }
  return dP;
}

cd kernel_numerator(const InnerFunction& theta, const DiskPoint& lambda, const BoundaryNode& z) {
  const double el = lambda.deficit, ez = z.deficit;
  const double phi = lambda.angle;
  const cd Ezl = em1(angle_diff(z, phi));
  const cd Lz = (ez - el) - (1.0 - ez) * Ezl;  // lambda - z = e^{i phi} Lz
  const double one_minus_l2 = el * (2.0 - el);
  cd L = 0.0;
  if (theta.monomial_degree() > 0)
    L += double(theta.monomial_degree()) * cd(std::log1p(-el) + std::log1p(-ez), angle_diff(z, phi));
  for (auto& zero : theta.zeros()) {
    const double del = zero.a.deficit, th = zero.a.angle;
    const double dl = angle_diff(phi, th);
    const cd El = em1(dl), Ez = em1(angle_diff(z, th));
    const cd den_l = (del + el - del * el) - (1.0 - del) * (1.0 - el) * El;
    const cd den_z = (del + ez - del * ez) - (1.0 - del) * (1.0 - ez) * Ez;
    const cd Bl = ((el - del) - (1.0 - el) * El) / den_l;
    if (Bl == cd(0.0)) return 1.0;
    const double one_minus_a2 = del * (2.0 - del);
    const cd diff = one_minus_a2 * std::polar(1.0, dl) * Lz / (den_z * den_l);
    const cd v = std::conj(Bl) * diff - one_minus_a2 * one_minus_l2 / std::norm(den_l);
    L += double(zero.mult) * detail::log1p_c(v);
  }
  for (auto& at : theta.atoms()) {
    const double dl = angle_diff(phi, at.angle);
    const cd Pz = atom_bracket(ez, angle_diff(z, at.angle));
    const cd Pl = atom_bracket(el, dl);
    if (Pl == cd(0.0))
      throw DomainError(DomainKind::AtomAtPoint, "kernel centred at a singular atom");
    if (Pz == cd(0.0)) return 1.0;
    const cd dQ = 2.0 * std::polar(1.0, dl) * Lz / (Pz * Pl);
    L += at.mass * (dQ - 2.0 * one_minus_l2 / std::norm(Pl));
  }
  if (std::isinf(L.real()) && L.real() < 0) return 1.0;
  return -detail::expm1_c(L);
}

cd kernel_at(const InnerFunction& theta, const DiskPoint& lambda, const BoundaryNode& z) {
  const double el = lambda.deficit, ez = z.deficit;
  const cd E = em1(angle_diff(z, lambda.angle));
  const cd den = (el + ez - el * ez) - (1.0 - el) * (1.0 - ez) * E;
  if (den == cd(0.0)) return boundary_derivative_modulus(theta, lambda.angle);
  return kernel_numerator(theta, lambda, z) / den;
}

double kernel_norm2(const InnerFunction& theta, const DiskPoint& lambda) {
  if (lambda.on_boundary()) return boundary_derivative_modulus(theta, lambda.angle);
  return one_minus_abs2(theta, lambda) / (lambda.deficit * (2.0 - lambda.deficit));
}

// ---------------- sequences and Cohn sums ----------------

FiniteSource::FiniteSource(const InnerFunction& theta) {
  if (theta.monomial_degree() > 0)
    terms_.push_back({false, DiskPoint{0.0, 1.0}, 0.0, theta.monomial_degree()});
  for (auto& z : theta.zeros()) terms_.push_back({false, z.a, 0.0, z.mult});
  for (auto& a : theta.atoms()) terms_.push_back({true, DiskPoint::boundary(a.angle), a.mass, 1});
}

std::optional<SequenceTerm> FiniteSource::term(long k) const {
  if (k < 0 || k >= static_cast<long>(terms_.size())) return std::nullopt;
  return terms_[k];
}

std::optional<SequenceTerm> TangentialBlaschkeFamily::term(long k) const {
  const long j = k + 1;
  return SequenceTerm{false, DiskPoint{std::ldexp(1.0, -j), std::ldexp(1.0, -3 * j)}, 0.0, 1};
}

std::optional<SequenceTerm> TangentialAtomFamily::term(long k) const {
  const long j = k + 1;
  return SequenceTerm{true, DiskPoint::boundary(std::ldexp(1.0, -j)), std::ldexp(1.0, -3 * j), 1};
}

std::optional<SequenceTerm> RadialBlaschkeFamily::term(long k) const {
  const long j = k + 1;
  return SequenceTerm{false, DiskPoint{0.0, std::ldexp(1.0, -j)}, 0.0, 1};
}

InnerFunction truncate(const TermSource& source, long K) {
  std::vector<BlaschkeZero> zeros;
  std::vector<Atom> atoms;
  for (long k = 0; k < K; ++k) {
    auto t = source.term(k);
    if (!t) break;
    if (t->atom)
      atoms.push_back({t->where.angle, t->mass});
    else
      zeros.push_back({t->where, t->mult});
  }
  std::vector<InnerFunction> parts;
  if (!zeros.empty()) parts.push_back(InnerFunction::blaschke(std::move(zeros)));
  if (!atoms.empty()) parts.push_back(InnerFunction::singular(std::move(atoms)));
  if (parts.empty()) throw ValidationError("empty truncation");
  if (parts.size() == 1) return parts[0];
  return InnerFunction::product(std::move(parts));
}

double cohn_term(const SequenceTerm& t, double zeta_angle, double p) {
  const double sn = std::sin(0.5 * angle_diff(zeta_angle, t.where.angle));
  if (t.atom) {
    if (sn == 0.0) throw DomainError(DomainKind::AtomAtPoint, "Cohn sum at a singular atom");
    return t.mass / std::pow(2.0 * std::abs(sn), p);
  }
  const double del = t.where.deficit;
  const double dist2 = del * del + 4.0 * (1.0 - del) * sn * sn;
  return t.mult * del * (2.0 - del) / std::pow(dist2, 0.5 * p);
}

std::vector<double> cohn_partial_sums(const TermSource& source, double zeta_angle, double p, long K) {
  if (K < 1) throw ValidationError("term count must be >= 1");
  if (!(p > 1.0)) throw ValidationError("Cohn exponent must exceed 1");
  std::vector<double> out;
  double s = 0.0;
  for (long k = 0; k < K; ++k) {
    auto t = source.term(k);
    if (!t) break;
    s += cohn_term(*t, zeta_angle, p);
    out.push_back(s);
  }
  return out;
}

double cohn_sum(const TermSource& source, double zeta_angle, double p, long K) {
  auto s = cohn_partial_sums(source, zeta_angle, p, K);
  return s.empty() ? 0.0 : s.back();
}

double cohn_sum(const InnerFunction& theta, double zeta_angle, double p, long K) {
  return cohn_sum(FiniteSource(theta), zeta_angle, p, K);
}

const char* to_string(AngularDerivative::Verdict v) {
  switch (v) {
    case AngularDerivative::Verdict::Yes: return "yes";
    case AngularDerivative::Verdict::No: return "no";
    default: return "inconclusive";
  }
}

AngularDerivative has_angular_derivative(const TermSource& source, double zeta_angle, long budget) {
  AngularDerivative r;
  std::vector<double> terms;
  bool exhausted = false;
  for (long k = 0; k < budget; ++k) {
    auto t = source.term(k);
    if (!t) {
      exhausted = true;
      break;
    }
    if (t->atom) {
      const double sn = std::sin(0.5 * angle_diff(zeta_angle, t->where.angle));
      if (sn == 0.0) {
        r.verdict = AngularDerivative::Verdict::No;
        r.terms = k + 1;
        return r;
      }
      terms.push_back(2.0 * t->mass / (4.0 * sn * sn));
    } else {
      terms.push_back(cohn_term(*t, zeta_angle, 2.0));
    }
  }
  if (!exhausted && source.finite() && !source.term(budget)) exhausted = true;
  r.terms = static_cast<long>(terms.size());
  double total = 0.0, half = 0.0;
  const size_t K = terms.size();
  for (size_t k = 0; k < K; ++k) {
    total += terms[k];
    if (k < K / 2) half += terms[k];
  }
  if (exhausted) {
    r.verdict = AngularDerivative::Verdict::Yes;
    r.value = total;
    return r;
  }
  if (K >= 8 && std::abs(total - half) <= 1e-10 * std::max(1.0, total)) {
    r.verdict = AngularDerivative::Verdict::Yes;
    r.value = total;
    return r;
  }
  if (K >= 8) {
    double last = std::numeric_limits<double>::infinity(), third = last;
    for (size_t k = K / 2; k < 3 * K / 4; ++k) third = std::min(third, terms[k]);
    for (size_t k = 3 * K / 4; k < K; ++k) last = std::min(last, terms[k]);
    if (last > 0.0 && last >= 0.9 * third) r.verdict = AngularDerivative::Verdict::No;
  }
  return r;
}

AngularDerivative has_angular_derivative(const InnerFunction& theta, double zeta_angle, long budget) {
  FiniteSource s(theta);
  return has_angular_derivative(s, zeta_angle, std::max(budget, s.size() + 1));
}

// ---------------- divisibility ----------------

namespace {

struct ZeroBucket {
  DiskPoint a;
  int mult;
};

std::vector<ZeroBucket> zero_multiset(const InnerFunction& f) {
  std::vector<ZeroBucket> out;
  auto add = [&](const DiskPoint& a, int m) {
    for (auto& b : out) {
      const bool both_origin = a.deficit == 1.0 && b.a.deficit == 1.0;
      const bool close = std::abs(a.value() - b.a.value()) <= 1e-12 &&
                         std::abs(a.deficit - b.a.deficit) <= 1e-9 * std::max(a.deficit, b.a.deficit);
      if (both_origin || close) {
        b.mult += m;
        return;
      }
    }
    out.push_back({a, m});
  };
  if (f.monomial_degree() > 0) add(DiskPoint{0.0, 1.0}, f.monomial_degree());
  for (auto& z : f.zeros()) add(z.a, z.mult);
  return out;
}

}  // namespace

bool divides(const InnerFunction& small, const InnerFunction& big) {
  auto zs = zero_multiset(small), zb = zero_multiset(big);
  for (auto& z : zs) {
    int have = 0;
    for (auto& b : zb) {
      const bool both_origin = z.a.deficit == 1.0 && b.a.deficit == 1.0;
      const bool close = std::abs(z.a.value() - b.a.value()) <= 1e-12 &&
                         std::abs(z.a.deficit - b.a.deficit) <= 1e-9 * std::max(z.a.deficit, b.a.deficit);
      if (both_origin || close) have += b.mult;
    }
    if (have < z.mult) return false;
  }
  for (auto& a : small.atoms()) {
    double have = 0.0;
    for (auto& b : big.atoms())
      if (std::abs(angle_diff(a.angle, b.angle)) <= 1e-12) have += b.mass;
    if (a.mass > have + 1e-12) return false;
  }
  return true;
}

}  // namespace ttolab
