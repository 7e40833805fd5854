#pragma once

// Thin RAII layer over FFTW used by the spectral modules.

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

namespace ridgelab::detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// In-place complex DFT. sign = FFTW_FORWARD computes sum x_m exp(-2 pi i j m / N),
/// FFTW_BACKWARD the unnormalized inverse.
inline void dft(std::vector<std::complex<double>>& data, int sign) {
  const int n = static_cast<int>(data.size());
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(n, ptr, ptr, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace ridgelab::detail
