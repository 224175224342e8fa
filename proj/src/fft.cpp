#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace ttolab::detail {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on fresh arrays is.
class PlanCache {
 public:
  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> in(n), out(n);
    fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                   reinterpret_cast<fftw_complex*>(out.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }
  ~PlanCache() {
    for (auto& kv : plans_) fftw_destroy_plan(kv.second);
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

std::vector<std::complex<double>> run(std::vector<std::complex<double>> in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<std::complex<double>> out(n);
  fftw_plan p = cache().get(n, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& samples) {
  auto out = run(samples, FFTW_FORWARD);
  const double s = 1.0 / static_cast<double>(samples.size());
  for (auto& v : out) v *= s;
  return out;
}

std::vector<std::complex<double>> fft_backward(const std::vector<std::complex<double>>& coeffs) {
  return run(coeffs, FFTW_BACKWARD);
}

}  // namespace ttolab::detail
