#pragma once

#include <Eigen/Dense>
#include <random>

#include "ttolab/inner.hpp"
#include "ttolab/modelspace.hpp"

namespace testutil {

using ttolab::cd;

inline cd random_disk(std::mt19937_64& rng, double rmax = 0.9) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = rmax * std::sqrt(u(rng));
  return std::polar(r, ttolab::kTwoPi * u(rng));
}

inline ttolab::InnerFunction random_blaschke(std::mt19937_64& rng, int degree, double rmax = 0.9) {
  std::vector<cd> z;
  for (int i = 0; i < degree; ++i) z.push_back(random_disk(rng, rmax));
  return ttolab::InnerFunction::blaschke_from_points(z);
}

inline Eigen::VectorXcd random_vec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = {g(rng), g(rng)};
  return v;
}

inline ttolab::ModelFunction random_element(std::mt19937_64& rng, const ttolab::ModelSpace& s) {
  return ttolab::ModelFunction(s, random_vec(rng, s.dimension()));
}

}  // namespace testutil
