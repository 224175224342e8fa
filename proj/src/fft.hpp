#pragma once

#include <complex>
#include <vector>

namespace ttolab::detail {

// c_k = (1/n) sum_j f_j exp(-2 pi i j k / n)
std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& samples);
// f_j = sum_k c_k exp(2 pi i j k / n)
std::vector<std::complex<double>> fft_backward(const std::vector<std::complex<double>>& coeffs);

}  // namespace ttolab::detail
