#pragma once

#include <functional>
#include <vector>

#include "ttolab/inner.hpp"

namespace ttolab::detail {

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};
// Golub-Welsch, cached per n
const GaussRule& gauss_legendre(int n);

// offsets [a, b] measured from an anchor angle
struct Panel {
  double anchor;
  double a, b;
};

// Panels covering the circle once, graded geometrically towards lambda's direction and every
// zero/atom direction of theta and subdivided where the phase of Theta turns quickly.
std::vector<Panel> kernel_panels(const InnerFunction& theta, const DiskPoint& lambda, double dilation);

// sum over panels of the n-point rule applied to f(node); 1/(2 pi) normalisation included
double integrate(const std::vector<Panel>& panels, int n, const std::function<double(const BoundaryNode&)>& f,
                 double dilation);

}  // namespace ttolab::detail
