#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "ttolab/circlefn.hpp"
#include "ttolab/inner.hpp"

namespace ttolab {

enum class SpaceMode { Exact, Truncated };

struct SpaceOptions {
  int grid = 0;  // 0: automatic
  std::optional<SpaceMode> mode;
};

struct KernelPoint {
  DiskPoint p;
  static KernelPoint interior(cd lambda);
  static KernelPoint boundary(double angle) { return {DiskPoint::boundary(angle)}; }
  bool on_boundary() const { return p.on_boundary(); }
  cd value() const { return p.value(); }
};

class ModelSpace {
 public:
  static ModelSpace create(const InnerFunction& theta, const SpaceOptions& opts = {});

  const InnerFunction& theta() const;
  SpaceMode mode() const;
  bool exact() const { return mode() == SpaceMode::Exact; }
  int dimension() const;  // -1 in Truncated mode
  int grid() const;

  // Exact mode: e_j sampled on an n-point grid, as an n x N matrix
  std::shared_ptr<const Eigen::MatrixXcd> basis_samples(int n) const;
  std::vector<CircleFunction> basis() const;
  // Exact mode: (e_0(z), ..., e_{N-1}(z)), |z| <= 1
  Eigen::VectorXcd basis_values(cd z) const;
  // Theta on an n-point grid (radial limits; 0 at atoms)
  std::shared_ptr<const CircleFunction> theta_on_grid(int n) const;
  // Exact mode: W_ij = <omega e_j, e_i>
  const Eigen::MatrixXcd& omega_matrix() const;

  bool same_as(const ModelSpace& o) const { return impl_ == o.impl_; }

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

// Exact: coefficient vector in the Takenaka-Malmquist basis. Truncated: grid samples.
class ModelFunction {
 public:
  ModelFunction(ModelSpace space, Eigen::VectorXcd coeffs);
  ModelFunction(ModelSpace space, CircleFunction samples, double residual = 0.0);

  const ModelSpace& space() const { return space_; }
  bool exact() const { return space_.exact(); }
  const Eigen::VectorXcd& coeffs() const;
  CircleFunction to_circle(int n = 0) const;
  cd operator()(cd z) const;
  double norm() const;
  // Truncated mode: relative projection defect ||P f - f|| / ||f||
  double residual() const { return residual_; }

  ModelFunction operator+(const ModelFunction& o) const;
  ModelFunction operator-(const ModelFunction& o) const;
  ModelFunction operator*(cd a) const;

 private:
  ModelSpace space_;
  Eigen::VectorXcd coeffs_;
  std::optional<CircleFunction> samples_;
  double residual_ = 0.0;
};

cd inner_product(const ModelFunction& f, const ModelFunction& g);

std::vector<CircleFunction> tm_basis(const InnerFunction& theta, int n);

ModelFunction project(const ModelSpace& space, const CircleFunction& f);
// P_Theta f on f's own grid
CircleFunction project_circle(const ModelSpace& space, const CircleFunction& f);

ModelFunction kernel(const ModelSpace& space, const KernelPoint& pt);
ModelFunction normalized_kernel(const ModelSpace& space, const KernelPoint& pt);
ModelFunction difference_quotient(const ModelSpace& space, const KernelPoint& pt);
ModelFunction normalized_difference_quotient(const ModelSpace& space, const KernelPoint& pt);
// sqrt((1-|lambda|^2)/(1-|Theta(lambda)|^2))
double kernel_scale(const InnerFunction& theta, const KernelPoint& pt);
// Exact mode fast path: coefficients of k_pt, i.e. conj(e_j(pt))
Eigen::VectorXcd kernel_coeffs(const ModelSpace& space, const KernelPoint& pt);

ModelFunction omega(const ModelFunction& f);
CircleFunction omega(const ModelSpace& space, const CircleFunction& f);

// kernel samples k_pt^Theta on an n-point grid (any mode)
CircleFunction kernel_samples(const InnerFunction& theta, const KernelPoint& pt, int n);
CircleFunction difference_quotient_samples(const InnerFunction& theta, const KernelPoint& pt, int n);

}  // namespace ttolab
