#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "ridgelab/quadrature.hpp"
#include "ridgelab/targets.hpp"

namespace ridgelab {

enum class ProfileKind { radon, backprojected, derivative };

/// Samples of a one-dimensional profile along direction omega on a LineGrid:
/// the Radon profile Rf(omega,.), the back-projected F_omega, or a derivative
/// F_omega^(order).
struct RidgeProfile {
  Vec direction;
  LineGrid grid;
  std::vector<double> values;
  ProfileKind kind = ProfileKind::radon;
  int order = 0;
  /// Upper edge of the ridge-filter band; 0 means the grid's Nyquist frequency.
  double band_limit = 0.0;

  /// Effective filter band: band_limit capped at Nyquist.
  double cutoff() const;

  /// Four-point cubic Lagrange interpolation on the grid.
  double value_at(double b) const;
};

/// How samples beyond the grid are treated by the ridge filter.
enum class FilterBoundary {
  automatic,      ///< periodic for odd d, zero_extended for even d
  zero_extended,  ///< profile vanishes outside [-L, L): exact linear convolution
  periodic,       ///< profile repeats with period 2L: pointwise spectral multiply
};

/// Normalization of the back-projection multiplier, 1/(2 (2 pi)^(d-1)), so
/// that f(x) = int_{S^{d-1}} F_omega(omega.x) d omega under the
/// exp(-i xi.x) forward convention.
double backprojection_constant(int d);

/// Smooth roll-off applied to every ridge filter: one below 80% of the cutoff,
/// raised cosine down to zero at the cutoff.
double spectral_taper(double t, double cutoff);

/// Filter band used for profiles of f: min(Nyquist, 2 * bandwidth). Filtering
/// past the target's band only amplifies roundoff in high-order derivatives.
double filter_cutoff(const TargetFunction& f, const LineGrid& grid);

/// Dual-grid samples of the 1-D Fourier transform of Rf(omega,.), which by the
/// slice identity equal fourier(omega*t_j); index j + N/2 holds t_j, j in [-N/2, N/2).
std::vector<std::complex<double>> radon_slice(const TargetFunction& f, const Vec& omega, const LineGrid& grid);

/// Rf(omega, b_m) by inverse DFT of radon_slice (the profile is periodized
/// with period 2L; warns when it has not decayed at the grid edges or the
/// grid's Nyquist frequency is below the target's bandwidth).
RidgeProfile radon_transform(const TargetFunction& f, const Vec& omega, const LineGrid& grid);

/// Independent oracle: Gauss-Legendre quadrature of f over the hyperplane
/// {omega.x = b} clipped to the support ball (d in {2,3}).
double radon_direct(const TargetFunction& f, const Vec& omega, double b, int resolution = 160);

/// Applies the multiplier c_d |t|^(d-1) (i t)^order, tapered at radon.cutoff(),
/// to a Radon profile. order = 0 is the back-projection operator itself.
RidgeProfile apply_ridge_filter(const RidgeProfile& radon, int d, int order,
                                FilterBoundary boundary = FilterBoundary::automatic);

/// F_omega = H_d Rf(omega, .).
RidgeProfile backproject_filter(const RidgeProfile& radon, int d,
                                FilterBoundary boundary = FilterBoundary::automatic);

/// Radon profile on the window the ridge filter needs for `grid`: the grid itself
/// for odd d, twice the half-width at the same spacing for even d, where the
/// filter kernel is nonlocal and a truncation jump at +-L would leak inward.
RidgeProfile filter_window_radon(const TargetFunction& f, const Vec& omega, const LineGrid& grid);

/// apply_ridge_filter on a filter_window_radon profile, restricted to `grid`.
RidgeProfile filter_to_grid(const RidgeProfile& window, int d, int order, const LineGrid& grid);

/// Precomputed F_omega_j for every node of a sphere grid; evaluates the
/// filtered back-projection sum_j w_j F_omega_j(omega_j.x).
class FilteredBackProjection {
 public:
  FilteredBackProjection(const TargetFunction& f, SphereGrid sphere, LineGrid grid);

  double operator()(const Vec& x) const;
  const SphereGrid& sphere() const { return sphere_; }
  const std::vector<RidgeProfile>& profiles() const { return profiles_; }

 private:
  SphereGrid sphere_;
  std::vector<RidgeProfile> profiles_;
};

/// Single-point reconstruction; prefer FilteredBackProjection for many points.
double reconstruct(const TargetFunction& f, const Vec& x, const SphereGrid& sphere, const LineGrid& grid);

/// CSV `omega_index,b,value`, one block per direction.
void write_sinogram_csv(std::ostream& os, const std::vector<RidgeProfile>& profiles);

/// CSV `b,value`.
void write_profile_csv(std::ostream& os, const RidgeProfile& profile);

}  // namespace ridgelab
