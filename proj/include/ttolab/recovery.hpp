#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ttolab/modelspace.hpp"
#include "ttolab/tto.hpp"

namespace ttolab {

class KernelActionOracle {
 public:
  using Action = std::function<ModelFunction(cd)>;

  KernelActionOracle(ModelSpace space, Action kernel_action, Action dq_action = {});
  static KernelActionOracle from_operator(const TTOperator& op);
  // Exact spaces: (lambda, coefficients of A k_lambda) pairs; the operator is fitted by least
  // squares on the kernels, which span K_Theta once the table has dimension-many distinct points.
  static KernelActionOracle from_table(const ModelSpace& space,
                                       const std::vector<std::pair<cd, Eigen::VectorXcd>>& table,
                                       double* fit_residual = nullptr);

  const ModelSpace& space() const { return space_; }
  ModelFunction kernel_action(cd lambda) const { return act_(lambda); }  // A k_lambda
  bool has_dq_action() const { return static_cast<bool>(dq_); }
  ModelFunction dq_action(cd lambda) const;  // A k~_lambda

 private:
  ModelSpace space_;
  Action act_, dq_;
};

struct RecoveredSymbol {
  ModelFunction plus;
  ModelFunction minus;
  cd mu;
  double residual = 0;           // rebuild residual against the oracle
  double measured_constant = 0;  // max(||phi_-||, ||phi_+||) / rho_r estimate
  double rho_r = 0;
};

struct RecoverOptions {
  std::optional<cd> mu;
  int lambda_factor = 4;  // lambda grid of lambda_factor * N points
  double radius = 0.6;
  std::optional<std::vector<DiskPoint>> rho_samples;
};

// (f - f(lambda))/(z - lambda) for analytic f
CircleFunction shift_resolvent(const CircleFunction& f, cd lambda);
// (I - lambda S*) omega(A k_lambda) - (I - mu S*) omega(A k_mu) on the space grid
CircleFunction f_lambda_mu(const KernelActionOracle& oracle, cd lambda, cd mu);

cd default_mu(const InnerFunction& theta);
RecoveredSymbol recover(const KernelActionOracle& oracle, const RecoverOptions& opts = {});
RecoveredSymbol recover_via_k0(const KernelActionOracle& oracle);
// moves the normalization point: phi_-(mu) = 0 afterwards
RecoveredSymbol renormalize(const RecoveredSymbol& s, cd mu);
double oracle_rho_r(const KernelActionOracle& oracle, const std::vector<DiskPoint>& samples);

// Theta * conj(z k_pt^{Theta^2}) on the space grid
SymbolSpec rank_one_symbol(const ModelSpace& space, const KernelPoint& pt);

struct LpBound {
  double lhs = 0;  // ||phi||_p
  double rhs = 0;  // ||psi||_p + ||phi||_2
  double ratio = 0;
};
LpBound symbol_lp_bound_check(const ModelSpace& space, const CircleFunction& phi, const CircleFunction& psi,
                              double p);

}  // namespace ttolab
