#pragma once

#include <cmath>
#include <complex>

namespace ttolab {

inline constexpr double kPiD = 3.141592653589793238462643383279;
inline constexpr double kTwoPiD = 6.283185307179586476925286766559;

namespace detail {

// e^{id} - 1 without cancellation
inline std::complex<double> em1(double d) {
  const double s = std::sin(0.5 * d);
  return {-2.0 * s * s, std::sin(d)};
}

inline std::complex<double> log1p_c(std::complex<double> v) {
  const double re = v.real(), im = v.imag();
  return {0.5 * std::log1p(2.0 * re + re * re + im * im), std::atan2(im, 1.0 + re)};
}

inline std::complex<double> expm1_c(std::complex<double> w) {
  const double s = std::sin(0.5 * w.imag());
  const double cm1 = -2.0 * s * s;
  return {std::expm1(w.real()) * std::cos(w.imag()) + cm1, std::exp(w.real()) * std::sin(w.imag())};
}

}  // namespace detail
}  // namespace ttolab
