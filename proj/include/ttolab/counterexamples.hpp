#pragma once

#include <string>
#include <vector>

#include "ttolab/inner.hpp"

namespace ttolab {

struct KernelNormOptions {
  double tol = 1e-6;           // relative agreement between successive node counts
  double dilation = 0x1p-12;   // radius deficit used when Theta has atoms
};

struct KernelNorms {
  double lp = 0;       // ||k_lambda||_p (p = inf: sup over nodes and anchors)
  double l2sq = 0;     // ||k_lambda||_2^2 by the same quadrature
  double l2sq_closed = 0;
  int nodes_per_panel = 0;
  long panels = 0;
};
// p in [1, inf]; pass INFINITY for the sup norm
KernelNorms kernel_norms(const InnerFunction& theta, const DiskPoint& lambda, double p,
                         const KernelNormOptions& opts = {});
double growth_ratio(const InnerFunction& theta, const DiskPoint& lambda, double p, const KernelNormOptions& opts = {});

// ---- growth scans along r -> 1 over truncation degrees ----

struct GrowthRow {
  double deficit = 0;  // 1 - r
  long degree = 0;
  double lp = 0;
  double l2sq = 0;
  double ratio = 0;
};
struct GrowthScanReport {
  std::string theta;
  double zeta_angle = 0;
  double p = 0;
  std::vector<GrowthRow> rows;  // sorted by r then degree
  // at the largest r: ratio(degree_{j+1}) / ratio(degree_j) and the same for ||k||_2^2
  std::vector<double> ratio_growth;
  std::vector<double> l2_change;  // relative change of ||k||_2^2 per doubling
  bool ratio_stabilized = false;   // every ratio step below 1.05
  bool l2_stabilized = false;      // last relative change below 1e-4
};
GrowthScanReport growth_scan(const TermSource& family, const std::string& name, double zeta_angle, double p,
                             const std::vector<long>& degrees, const std::vector<double>& deficits,
                             const KernelNormOptions& opts = {});

// ---- counterexample families ----

struct FamilyCertificate {
  std::vector<double> p2_terms;      // Cohn terms at zeta = 1, p = 2
  std::vector<double> p_terms;       // target p
  double p2_partial = 0;             // sum of the first K terms
  double p2_tail_bound = 0;          // analytic bound for the remaining terms
  double p2_cauchy = 0;              // max |S_K - S_j| over the last quarter
  long p2_cauchy_K = 0;              // first K, 2K, 4K, ... (<= 256) with last-quarter Cauchy <= 1e-8
  bool p2_certified = false;         // tail bound < 1e-5
  double p_increment_min = 0;
  double p_increment_max = 0;
  double p_increment_lower_bound = 0;  // termwise analytic bound
  double fitted_slope = 0;             // least squares S_k ~ c k through the origin
  bool p_diverges = false;             // every increment >= the analytic lower bound >= 0.5
  std::vector<double> df3;             // (1-|a_k|)^{1-1/p} / |zeta - a_k|, zeros only
  double df3_max_step = 0;             // max df3[k+1]/df3[k]
  double dominance_min = 0;            // generic families: min share of the nearest zero
};

struct CounterexampleFamily {
  enum class Kind { BlaschkeTangential, SingularAtoms };
  Kind kind = Kind::BlaschkeTangential;
  double gamma = 0;        // generic tangential recipe, 0 for the shipped family
  double zeta_angle = 0;
  double p = 0;
  long K = 0;
  std::vector<SequenceTerm> terms;
  FamilyCertificate cert;
  InnerFunction theta() const;
};

// zeros (1 - 8^-k) e^{i 2^-k}, k = 1..K
CounterexampleFamily gen_blaschke_counterexample(double p, long K);
// atoms of mass 8^-k at e^{i 2^-k}
CounterexampleFamily gen_singular_counterexample(double p, long K);
// tangential sequence w_k = (1 - 2^{-kp}) e^{i 2^-k}, so (1-|w_k|)^gamma/|w_k - 1| -> 0 when gamma p > 1,
// thinned greedily so that each kept zero carries at least 90% of the p = 2 Cohn sum at its radial projection
CounterexampleFamily gen_tangential_counterexample(double gamma, double p, long K);

// ---- CLS ratio ----

struct ClsRow {
  DiskPoint lambda;
  double sup = 0;
  double l2sq = 0;
  double ratio = 0;
};
struct ClsReport {
  std::vector<ClsRow> rows;
  double max_ratio = 0;
};
ClsReport cls_ratio_scan(const InnerFunction& theta, const std::vector<DiskPoint>& samples,
                         const KernelNormOptions& opts = {});
// radial lines at `angles` equally spaced directions, deficits 2^-1 .. 2^-radii
std::vector<DiskPoint> radial_scan_points(int radii, int angles);

// ---- reproducing kernel thesis failure for conj(Theta)^s ----

struct RktRow {
  cd lambda;
  double y = 0;                 // |Theta(lambda)|^2
  double identity_err = 0;      // relative L2 error on the grid
  double identity_err_fine = 0; // on the doubled grid
  double order = 0;             // log2(err / err_fine)
  double normsq = 0;            // ||A h_lambda||^2 on the grid
  double normsq_closed = 0;     // (y^s - y)/(1 - y)
  double isometry_ratio = 0;    // ||A f|| / ||f||, f = Theta^s k_lambda^{Theta^{1-s}}
};
struct RktReport {
  double s = 0;
  int grid = 0;
  std::vector<RktRow> rows;
  double max_closed = 0;  // max (y^s - y)/(1-y) over the samples
  bool sup_bound_holds = false;
};
// Theta singular with atoms only; Truncated mode on `grid` and 2*grid
RktReport rkt_failure_scan(const InnerFunction& theta, double s, const std::vector<cd>& lambdas, int grid);
double rkt_closed_form(double y, double s);

// ---- no-bounded-symbol check on truncations ----

struct TheoremRow {
  long degree = 0;
  double kernel_lp = 0;   // ||k_zeta^Theta||_p
  double symbol_lp = 0;   // ||phi_zeta||_p = ||k_zeta^{Theta^2}||_p
  double kernel_l2sq = 0;
  bool comparison_holds = false;  // ||k^{Theta^2}||_p <= 2 ||k^Theta||_p
};
struct TheoremVerdict {
  double p = 0;
  double zeta_angle = 0;
  std::vector<TheoremRow> rows;
  bool kernel_grows = false;  // every doubling increases ||k||_p by at least 5%
  bool symbol_grows = false;
  bool stabilizes = false;    // last doubling changes both by less than 1e-4 (relative)
  bool comparison_holds = false;
  std::string verdict;        // "unbounded (finite signature)", "stable" or "inconclusive"
};
TheoremVerdict counterex_theorem_check(const TermSource& family, double zeta_angle, double p,
                                       const std::vector<long>& degrees, const KernelNormOptions& opts = {});

}  // namespace ttolab
