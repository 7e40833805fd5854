#include "ridgelab/fourier_radon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <tuple>

#include "fft.hpp"
#include "ridgelab/format.hpp"
#include "ridgelab/log.hpp"
#include "ridgelab/rng.hpp"

namespace ridgelab {

using cplx = std::complex<double>;

double RidgeProfile::value_at(double b) const {
  const int n = grid.count();
  const double x = (b + grid.half_width()) / grid.spacing();
  int i = static_cast<int>(std::floor(x));
  i = std::clamp(i, 1, n - 3);
  const double t = x - i;
  const double wm = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w0 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w1 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w2 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return wm * values[i - 1] + w0 * values[i] + w1 * values[i + 1] + w2 * values[i + 2];
}

double backprojection_constant(int d) { return 1.0 / (2.0 * std::pow(2.0 * std::numbers::pi, d - 1)); }

double spectral_taper(double t, double cutoff) {
  const double a = std::abs(t);
  const double start = 0.8 * cutoff;
  if (a <= start) return 1.0;
  if (a >= cutoff) return 0.0;
  return 0.5 * (1.0 + std::cos(std::numbers::pi * (a - start) / (cutoff - start)));
}

double filter_cutoff(const TargetFunction& f, const LineGrid& grid) {
  return std::min(grid.nyquist(), 2.0 * f.bandwidth());
}

double RidgeProfile::cutoff() const { return band_limit > 0.0 ? std::min(band_limit, grid.nyquist()) : grid.nyquist(); }

std::vector<cplx> radon_slice(const TargetFunction& f, const Vec& omega, const LineGrid& grid) {
  if (omega.dim() != f.dim()) throw SpecError("radon_slice: direction dimension mismatch");
  if (std::abs(norm(omega) - 1.0) > 1e-12) throw SpecError("radon_slice: direction must be a unit vector");
  const int n = grid.count();
  std::vector<cplx> out(n);
  for (int j = -n / 2; j < n / 2; ++j) out[j + n / 2] = f.fourier(grid.frequency(j) * omega);
  return out;
}

RidgeProfile radon_transform(const TargetFunction& f, const Vec& omega, const LineGrid& grid) {
  const int n = grid.count();
  const std::vector<cplx> slice = radon_slice(f, omega, grid);
  if (grid.nyquist() < f.bandwidth()) {
    std::ostringstream msg;
    msg << "radon_transform: grid Nyquist " << grid.nyquist() << " below target bandwidth " << f.bandwidth() << " ("
        << f.name() << ")";
    warn(msg.str());
  }
  // g(b_m) = (1/2L) sum_j ghat(t_j) exp(i t_j b_m), and exp(i t_j b_m) = (-1)^j exp(2 pi i j m / N).
  std::vector<cplx> buf(n);
  const double scale = 1.0 / (2.0 * grid.half_width());
  for (int j = -n / 2; j < n / 2; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    buf[(j + n) % n] = slice[j + n / 2] * (sign * scale);
  }
  detail::dft(buf, FFTW_BACKWARD);

  RidgeProfile profile{omega, grid, std::vector<double>(n), ProfileKind::radon, 0, filter_cutoff(f, grid)};
  double peak = 0.0;
  for (int m = 0; m < n; ++m) {
    profile.values[m] = buf[m].real();
    peak = std::max(peak, std::abs(profile.values[m]));
  }
  const double edge = std::max(std::abs(profile.values.front()), std::abs(profile.values.back()));
  if (peak > 0.0 && edge > 1e-3 * peak) {
    warn("radon_transform: profile has not decayed at the grid edges (relative " + std::to_string(edge / peak) +
         "); increase the line half-width");
  }
  return profile;
}

namespace {

// Unit vectors completing omega to an orthonormal basis of R^d (d = 2 or 3).
std::vector<Vec> orthonormal_complement(const Vec& omega) {
  const int d = omega.dim();
  if (d == 2) return {Vec{-omega[1], omega[0]}};
  int axis = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(omega[i]) < std::abs(omega[axis])) axis = i;
  Vec u = Vec::unit(3, axis) - dot(omega, Vec::unit(3, axis)) * omega;
  u *= 1.0 / norm(u);
  Vec v{omega[1] * u[2] - omega[2] * u[1], omega[2] * u[0] - omega[0] * u[2], omega[0] * u[1] - omega[1] * u[0]};
  return {u, v};
}

}  // namespace

double radon_direct(const TargetFunction& f, const Vec& omega, double b, int resolution) {
  const int d = f.dim();
  if (d != 2 && d != 3) throw SpecError("radon_direct: supported for d in {2,3}");
  if (omega.dim() != d || std::abs(norm(omega) - 1.0) > 1e-12)
    throw SpecError("radon_direct: direction must be a unit vector in R^d");
  const double radius = f.support_radius();
  if (std::abs(b) >= radius) return 0.0;
  const double half_chord = std::sqrt(radius * radius - b * b);
  const GaussRule rule = gauss_legendre(resolution, -half_chord, half_chord);
  const std::vector<Vec> basis = orthonormal_complement(omega);
  const Vec foot = b * omega;
  double sum = 0.0;
  if (d == 2) {
    for (int i = 0; i < resolution; ++i) sum += rule.weights[i] * f(foot + rule.nodes[i] * basis[0]);
  } else {
    for (int i = 0; i < resolution; ++i) {
      double row = 0.0;
      for (int j = 0; j < resolution; ++j) {
        row += rule.weights[j] * f(foot + rule.nodes[i] * basis[0] + rule.nodes[j] * basis[1]);
      }
      sum += rule.weights[i] * row;
    }
  }
  return sum;
}

namespace {

// int_a^b t^p exp(i alpha t) dt by the closed-form antiderivative.
cplx power_exp_integral(int p, double alpha, double a, double b) {
  const cplx ia(0.0, alpha);
  if (std::abs(alpha) * std::max(std::abs(a), std::abs(b)) <= 2.0) {
    // Taylor series in alpha; the closed form cancels catastrophically here.
    cplx sum = 0.0;
    cplx coef = 1.0;  // (i alpha)^n / n!
    for (int n = 0; n < 60; ++n) {
      const int e = p + n + 1;
      const cplx term = coef * (std::pow(b, e) - std::pow(a, e)) / static_cast<double>(e);
      sum += term;
      if (n > 4 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
      coef *= ia / static_cast<double>(n + 1);
    }
    return sum;
  }
  auto antiderivative = [&](double t) {
    cplx sum = 0.0;
    double falling = 1.0;  // p! / (p-m)!
    cplx denom = ia;       // (i alpha)^(m+1)
    for (int m = 0; m <= p; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      sum += sign * falling * std::pow(t, p - m) / denom;
      falling *= (p - m);
      denom *= ia;
    }
    return std::exp(cplx(0.0, alpha * t)) * sum;
  };
  return antiderivative(b) - antiderivative(a);
}

// Spatial kernel of the tapered multiplier c |t|^(d-1) (i t)^order, band-limited
// to |t| < nyq, sampled at u = n h for n = 0..N-1. Negative offsets follow from
// K(-u) = (-1)^order K(u).
std::vector<double> ridge_kernel(const LineGrid& grid, int d, int order, double nyq) {
  const int n = grid.count();
  const double h = grid.spacing();
  const double start = 0.8 * nyq;
  const double roll = std::numbers::pi / (nyq - start);  // raised-cosine angular rate
  const int p = d - 1 + order;
  const double c = backprojection_constant(d);
  cplx ij = 1.0;
  for (int i = 0; i < order; ++i) ij *= cplx(0.0, 1.0);
  const cplx shift_down = std::exp(cplx(0.0, -roll * start));
  const cplx shift_up = std::exp(cplx(0.0, roll * start));

  std::vector<double> kernel(n);
  for (int m = 0; m < n; ++m) {
    const double u = m * h;
    const cplx full = power_exp_integral(p, u, 0.0, nyq);
    const cplx tail = 0.5 * power_exp_integral(p, u, start, nyq) -
                      0.25 * shift_down * power_exp_integral(p, u + roll, start, nyq) -
                      0.25 * shift_up * power_exp_integral(p, u - roll, start, nyq);
    kernel[m] = c / std::numbers::pi * (ij * (full - tail)).real();
  }
  return kernel;
}

using KernelKey = std::tuple<int, double, int, int, double>;

// DFT (length 2N) of h * kernel arranged for linear convolution; cached per grid.
std::shared_ptr<const std::vector<cplx>> kernel_spectrum(const LineGrid& grid, int d, int order, double cutoff) {
  static std::mutex mutex;
  static std::map<KernelKey, std::shared_ptr<const std::vector<cplx>>> cache;
  const KernelKey key{grid.count(), grid.half_width(), d, order, cutoff};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const int n = grid.count();
  const std::vector<double> kernel = ridge_kernel(grid, d, order, cutoff);
  const double parity = (order % 2 == 0) ? 1.0 : -1.0;
  std::vector<cplx> buf(2 * n, 0.0);
  for (int m = 0; m < n; ++m) buf[m] = grid.spacing() * kernel[m];
  for (int m = 1; m < n; ++m) buf[2 * n - m] = parity * grid.spacing() * kernel[m];
  detail::dft(buf, FFTW_FORWARD);
  auto spectrum = std::make_shared<const std::vector<cplx>>(std::move(buf));
  std::lock_guard lock(mutex);
  cache.emplace(key, spectrum);
  return spectrum;
}

cplx multiplier(double t, int d, int order, double cutoff) {
  cplx m = backprojection_constant(d) * std::pow(std::abs(t), d - 1) * spectral_taper(t, cutoff);
  for (int i = 0; i < order; ++i) m *= cplx(0.0, t);
  return m;
}

}  // namespace

RidgeProfile apply_ridge_filter(const RidgeProfile& radon, int d, int order, FilterBoundary boundary) {
  // Radon profiles come out periodized. For odd d the multiplier is a polynomial in t,
  // so filtering commutes with periodization; for even d the kernel decays only
  // algebraically and the wrapped copies would pollute the window.
  if (boundary == FilterBoundary::automatic) {
    boundary = d % 2 == 1 ? FilterBoundary::periodic : FilterBoundary::zero_extended;
  }
  if (d < 1 || d > kMaxDim) throw SpecError("apply_ridge_filter: unsupported dimension");
  if (order < 0) throw SpecError("apply_ridge_filter: order must be >= 0");
  const LineGrid& grid = radon.grid;
  const int n = grid.count();
  if (static_cast<int>(radon.values.size()) != n) throw SpecError("apply_ridge_filter: profile/grid size mismatch");

  RidgeProfile out{radon.direction, grid, std::vector<double>(n),
                   order == 0 ? ProfileKind::backprojected : ProfileKind::derivative, order, radon.band_limit};
  if (boundary == FilterBoundary::periodic) {
    std::vector<cplx> buf(radon.values.begin(), radon.values.end());
    detail::dft(buf, FFTW_FORWARD);
    for (int j = 0; j < n; ++j) {
      const int signed_j = j < n / 2 ? j : j - n;
      buf[j] *= multiplier(grid.frequency(signed_j), d, order, radon.cutoff());
    }
    detail::dft(buf, FFTW_BACKWARD);
    for (int m = 0; m < n; ++m) out.values[m] = buf[m].real() / n;
    return out;
  }

  const auto spectrum = kernel_spectrum(grid, d, order, radon.cutoff());
  std::vector<cplx> buf(2 * n, 0.0);
  for (int m = 0; m < n; ++m) buf[m] = radon.values[m];
  detail::dft(buf, FFTW_FORWARD);
  for (int j = 0; j < 2 * n; ++j) buf[j] *= (*spectrum)[j];
  detail::dft(buf, FFTW_BACKWARD);
  for (int m = 0; m < n; ++m) out.values[m] = buf[m].real() / (2 * n);
  return out;
}

RidgeProfile backproject_filter(const RidgeProfile& radon, int d, FilterBoundary boundary) {
  return apply_ridge_filter(radon, d, 0, boundary);
}

RidgeProfile filter_window_radon(const TargetFunction& f, const Vec& omega, const LineGrid& grid) {
  if (f.dim() % 2 == 1) return radon_transform(f, omega, grid);
  return radon_transform(f, omega, LineGrid(2.0 * grid.half_width(), 2 * grid.count()));
}

RidgeProfile filter_to_grid(const RidgeProfile& window, int d, int order, const LineGrid& grid) {
  RidgeProfile full = apply_ridge_filter(window, d, order);
  const int n = grid.count();
  const int offset = (window.grid.count() - n) / 2;
  if (offset < 0 || window.grid.spacing() != grid.spacing()) throw SpecError("filter_to_grid: window does not cover grid");
  if (offset == 0) return full;
  RidgeProfile out{full.direction, grid, std::vector<double>(full.values.begin() + offset, full.values.begin() + offset + n),
                   full.kind, full.order, full.band_limit};
  return out;
}

FilteredBackProjection::FilteredBackProjection(const TargetFunction& f, SphereGrid sphere, LineGrid grid)
    : sphere_(std::move(sphere)), profiles_(sphere_.size()) {
  if (sphere_.dim != f.dim()) throw SpecError("FilteredBackProjection: sphere/target dimension mismatch");
  parallel_for(sphere_.size(), [&](std::size_t j) {
    profiles_[j] = filter_to_grid(filter_window_radon(f, sphere_.nodes[j], grid), f.dim(), 0, grid);
  });
}

double FilteredBackProjection::operator()(const Vec& x) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < sphere_.size(); ++j) {
    sum += sphere_.weights[j] * profiles_[j].value_at(dot(sphere_.nodes[j], x));
  }
  return sum;
}

double reconstruct(const TargetFunction& f, const Vec& x, const SphereGrid& sphere, const LineGrid& grid) {
  return FilteredBackProjection(f, sphere, grid)(x);
}

void write_sinogram_csv(std::ostream& os, const std::vector<RidgeProfile>& profiles) {
  os << "omega_index,b,value\n";
  for (std::size_t j = 0; j < profiles.size(); ++j) {
    const RidgeProfile& p = profiles[j];
    for (int m = 0; m < p.grid.count(); ++m) {
      os << j << ',' << format_double(p.grid.node(m)) << ',' << format_double(p.values[m]) << '\n';
    }
  }
}

void write_profile_csv(std::ostream& os, const RidgeProfile& profile) {
  os << "b,value\n";
  for (int m = 0; m < profile.grid.count(); ++m) {
    os << format_double(profile.grid.node(m)) << ',' << format_double(profile.values[m]) << '\n';
  }
}

}  // namespace ridgelab
