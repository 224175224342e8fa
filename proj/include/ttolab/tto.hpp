#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "ttolab/circlefn.hpp"
#include "ttolab/modelspace.hpp"

namespace ttolab {

struct PairSymbol {
  ModelFunction plus;   // phi_+
  ModelFunction minus;  // phi_-, the symbol is phi_+ + conj(phi_-)
};

struct MeasureSpec {
  std::vector<Atom> atoms;
  std::optional<CircleFunction> density;  // nonnegative samples
};

class SymbolSpec {
 public:
  enum class Kind { Samples, Polynomial, Pair, Measure };

  static SymbolSpec boundary(CircleFunction f) { return SymbolSpec(std::move(f)); }
  static SymbolSpec polynomial(FourierPolynomial p) { return SymbolSpec(std::move(p)); }
  static SymbolSpec pair(ModelFunction plus, ModelFunction minus);
  static SymbolSpec measure(MeasureSpec m);

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool is_boundary() const { return kind() != Kind::Measure; }
  const CircleFunction& samples() const { return std::get<CircleFunction>(v_); }
  const FourierPolynomial& poly() const { return std::get<FourierPolynomial>(v_); }
  const PairSymbol& pair() const { return std::get<PairSymbol>(v_); }
  const MeasureSpec& measure() const { return std::get<MeasureSpec>(v_); }

  // boundary function on an n-point grid (Pair: phi_+ + conj(phi_-))
  CircleFunction on_grid(int n) const;
  // declared bandwidth, -1 if unknown
  int bandwidth() const;
  SymbolSpec conj() const;

 private:
  using V = std::variant<CircleFunction, FourierPolynomial, PairSymbol, MeasureSpec>;
  explicit SymbolSpec(V v) : v_(std::move(v)) {}
  V v_;
};

class TTOperator {
 public:
  using Apply = std::function<ModelFunction(const ModelFunction&)>;

  static TTOperator from_matrix(ModelSpace space, Eigen::MatrixXcd m, std::optional<SymbolSpec> symbol = {});
  static TTOperator from_closure(ModelSpace space, Apply apply, Apply apply_adjoint,
                                 std::optional<SymbolSpec> symbol = {});

  const ModelSpace& space() const { return space_; }
  bool exact() const { return space_.exact(); }
  const Eigen::MatrixXcd& matrix() const;
  const std::optional<SymbolSpec>& symbol() const { return symbol_; }
  ModelFunction apply(const ModelFunction& f) const;
  ModelFunction apply_adjoint(const ModelFunction& f) const;

 private:
  TTOperator(ModelSpace s) : space_(std::move(s)) {}
  ModelSpace space_;
  std::shared_ptr<const Eigen::MatrixXcd> m_;
  std::shared_ptr<const Apply> apply_, apply_adj_;
  std::optional<SymbolSpec> symbol_;
  friend TTOperator adjoint(const TTOperator& op);
};

TTOperator build(const ModelSpace& space, const SymbolSpec& symbol);
TTOperator adjoint(const TTOperator& op);
// matrix of u (x) v : f -> <f, v> u in an exact space
Eigen::MatrixXcd rank_one_matrix(const ModelFunction& u, const ModelFunction& v);

// Q_Theta f = P_Theta f + conj(Theta) P_Theta(Theta f), on f's grid
CircleFunction q_theta(const ModelSpace& space, const CircleFunction& f);
// P_{S_Theta} phi on phi's grid
CircleFunction standard_symbol(const ModelSpace& space, const CircleFunction& phi);
// phi_+ , phi_- in K_Theta with phi = phi_+ + conj(phi_-) modulo the zero class and phi_-(mu) = 0
PairSymbol decompose(const ModelSpace& space, const CircleFunction& phi, cd mu);

// ---- rho quantities ----
std::vector<DiskPoint> default_sample_set(const InnerFunction& theta, int radii = 24, int angles = 64);
std::vector<DiskPoint> rotation_closed_sample_set(int radii, int angles);

struct RhoRow {
  DiskPoint lambda;
  double kernel = 0;  // ||A h_lambda||
  double dq = 0;      // ||A h~_lambda||
};
// points where h_lambda is not normalizable (|Theta(lambda)| = 1 in floating point) are skipped
std::vector<RhoRow> rho_table(const TTOperator& op, const std::vector<DiskPoint>& samples);
double rho_r(const TTOperator& op, const std::vector<DiskPoint>& samples);
double rho_d(const TTOperator& op, const std::vector<DiskPoint>& samples);
double rho(const TTOperator& op, const std::vector<DiskPoint>& samples);
// rho_table on rotation_closed_sample_set(radii, angles); FFT over the angles when Theta = z^N
std::vector<RhoRow> rho_rotation_table(const TTOperator& op, int radii, int angles);

struct NormOptions {
  double tol = 1e-10;
  int budget = 2000;
};
double operator_norm(const TTOperator& op, const NormOptions& opts = {});

TTOperator measure_operator(const ModelSpace& space, const MeasureSpec& mu);

// || A_phi f - Theta P_-(conj(Theta) phi f) ||_2 for an analytic symbol
double hankel_factor_check(const TTOperator& op, const ModelFunction& f);

}  // namespace ttolab
