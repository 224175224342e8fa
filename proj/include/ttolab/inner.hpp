#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

namespace ttolab {

using cd = std::complex<double>;

// Point of the closed disk stored as (angle, 1-|z|); keeps relative precision for
// points extremely close to the circle.
struct DiskPoint {
  double angle = 0.0;
  double deficit = 1.0;

  static DiskPoint from_complex(cd z);
  static DiskPoint boundary(double angle) { return {angle, 0.0}; }
  static DiskPoint polar(double radius, double angle) { return {angle, 1.0 - radius}; }
  cd value() const;
  double radius() const { return 1.0 - deficit; }
  bool on_boundary() const { return deficit == 0.0; }
};

struct BlaschkeZero {
  DiskPoint a;
  int mult = 1;
};

struct Atom {
  double angle = 0.0;
  double mass = 0.0;
};

class InnerFunction {
 public:
  enum class Kind { Monomial, Blaschke, Singular, Product, Power };

  static InnerFunction monomial(int degree);
  static InnerFunction blaschke(std::vector<BlaschkeZero> zeros);
  static InnerFunction blaschke_from_points(const std::vector<cd>& zeros);
  static InnerFunction singular(std::vector<Atom> atoms);
  static InnerFunction product(std::vector<InnerFunction> factors);
  static InnerFunction square(const InnerFunction& theta) { return product({theta, theta}); }

  Kind kind() const { return kind_; }
  const std::vector<InnerFunction>& factors() const { return children_; }
  double exponent() const { return exponent_; }

  // Flattened description: z^D * prod b_a^m * prod exp(c (z+zeta)/(z-zeta)).
  int monomial_degree() const { return monomial_degree_; }
  const std::vector<BlaschkeZero>& zeros() const { return zeros_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool has_singular_part() const { return !atoms_.empty(); }
  // number of zeros with multiplicity (monomial zeros included)
  int zero_count() const;

 private:
  friend InnerFunction power(const InnerFunction& theta, double s);
  void flatten_from_children();

  Kind kind_ = Kind::Monomial;
  std::vector<InnerFunction> children_;
  double exponent_ = 1.0;
  int monomial_degree_ = 0;
  std::vector<BlaschkeZero> zeros_;
  std::vector<Atom> atoms_;
};

// Theta^s for a singular atomic Theta, s in (0,1].
InnerFunction power(const InnerFunction& theta, double s);

cd eval(const InnerFunction& theta, cd z);
cd eval(const InnerFunction& theta, const DiskPoint& z);
// boundary value; throws UndefinedBoundaryValue at an atom
cd boundary_value(const InnerFunction& theta, double angle);
// radial limit; 0 at an atom
cd boundary_sample(const InnerFunction& theta, double angle);
double one_minus_abs2(const InnerFunction& theta, const DiskPoint& z);
cd derivative(const InnerFunction& theta, cd z);
// |Theta'(zeta)| for finite data; throws AtomAtPoint at an atom
double boundary_derivative_modulus(const InnerFunction& theta, double angle);
bool is_atom(const InnerFunction& theta, double angle);

// Boundary node e^{i(anchor+offset)} kept as a pair so that tiny offsets from an
// anchor (zero or atom direction) do not lose precision.
struct BoundaryNode {
  double anchor = 0.0;
  double offset = 0.0;
  double deficit = 0.0;  // evaluate at radius 1-deficit (dilation)
  double angle() const { return anchor + offset; }
};
// signed angular difference node - ref, reduced to (-pi, pi]
double angle_diff(const BoundaryNode& node, double ref);
double angle_diff(double a, double b);

// 1 - conj(Theta(lambda)) Theta(z), accurate when both are close to the circle.
cd kernel_numerator(const InnerFunction& theta, const DiskPoint& lambda, const BoundaryNode& z);
// k_lambda^Theta at a boundary node
cd kernel_at(const InnerFunction& theta, const DiskPoint& lambda, const BoundaryNode& z);
// ||k_lambda||_2^2 = (1-|Theta(lambda)|^2)/(1-|lambda|^2), or |Theta'(zeta)| on the circle
double kernel_norm2(const InnerFunction& theta, const DiskPoint& lambda);

// ---- zero/atom sequences, possibly infinite ----

struct SequenceTerm {
  bool atom = false;
  DiskPoint where;  // zero position, or atom direction with deficit 0
  double mass = 0;  // atoms
  int mult = 1;     // zeros
};

class TermSource {
 public:
  virtual ~TermSource() = default;
  virtual std::optional<SequenceTerm> term(long k) const = 0;  // k = 0,1,...
  virtual bool finite() const = 0;
};

// Terms of a finite inner function (monomial zeros, Blaschke zeros, atoms).
class FiniteSource : public TermSource {
 public:
  explicit FiniteSource(const InnerFunction& theta);
  explicit FiniteSource(std::vector<SequenceTerm> terms) : terms_(std::move(terms)) {}
  std::optional<SequenceTerm> term(long k) const override;
  bool finite() const override { return true; }
  long size() const { return static_cast<long>(terms_.size()); }

 private:
  std::vector<SequenceTerm> terms_;
};

// zeros a_k = (1 - 8^-k) e^{i 2^-k}, k >= 1
class TangentialBlaschkeFamily : public TermSource {
 public:
  std::optional<SequenceTerm> term(long k) const override;
  bool finite() const override { return false; }
};

// atoms of mass 8^-k at angle 2^-k, k >= 1
class TangentialAtomFamily : public TermSource {
 public:
  std::optional<SequenceTerm> term(long k) const override;
  bool finite() const override { return false; }
};

// real zeros a_k = 1 - 2^-k, k >= 1
class RadialBlaschkeFamily : public TermSource {
 public:
  std::optional<SequenceTerm> term(long k) const override;
  bool finite() const override { return false; }
};

// first K terms of a source as a finite inner function
InnerFunction truncate(const TermSource& source, long K);

// single Cohn term: mult*(1-|a|^2)/|zeta-a|^p or c/|zeta-zeta_k|^p
double cohn_term(const SequenceTerm& t, double zeta_angle, double p);
double cohn_sum(const TermSource& source, double zeta_angle, double p, long K);
double cohn_sum(const InnerFunction& theta, double zeta_angle, double p, long K);
std::vector<double> cohn_partial_sums(const TermSource& source, double zeta_angle, double p, long K);

struct AngularDerivative {
  enum class Verdict { Yes, No, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  double value = 0.0;  // |Theta'(zeta)| when Yes
  long terms = 0;
};
AngularDerivative has_angular_derivative(const TermSource& source, double zeta_angle, long budget = 128);
AngularDerivative has_angular_derivative(const InnerFunction& theta, double zeta_angle, long budget = 128);
const char* to_string(AngularDerivative::Verdict v);

bool divides(const InnerFunction& small, const InnerFunction& big);

}  // namespace ttolab
