#pragma once

#include <cstdint>
#include <vector>

#include "ridgelab/targets.hpp"

namespace ridgelab {

struct MollifierSpec {
  int dim = 1;
  double scale = 1.0;  ///< epsilon in (0, 1]
  int order = 1;       ///< s >= 1

  void validate() const;
};

/// Z_d = int_{|x|<1} exp(-1/(1-|x|^2)) dx.
double bump_normalization(int d);

/// phi_eps(x) = eps^-d phi(x/eps), phi = exp(-1/(1-|x|^2)) / Z_d on the unit ball.
double mollifier_value(const MollifierSpec& spec, const Vec& x);

/// Fourier transform of the unit-scale phi at radius rho (phi_eps has phi(eps rho)).
double mollifier_fourier(int d, double rho);

/// Delta_y^s f(x) = sum_{t=0}^{s} C(s,t) (-1)^t f(x - t y).
double finite_difference(const ScalarField& f, const Vec& y, int s, const Vec& x);

/// C(s,t) (-1)^(t-1) for t = 1..s; these sum to one.
std::vector<std::int64_t> binomial_weights(int s);

/// Resolution of the polar rule used for each convolution with phi_eps.
struct ConvolutionRule {
  int radial_nodes = 24;
  int sphere_level = 5;  ///< passed to sphere_grid (ignored for d = 1)
};

/// f_eps(x) = sum_{t=1}^{s} C(s,t) (-1)^(t-1) int phi_eps(y) f(x - t y) dy.
/// The polar rule is normalized so that it integrates phi_eps to one exactly.
double smooth_approximant(const ScalarField& f, int dim, int s, double eps, const Vec& x,
                          const ConvolutionRule& rule = {});

/// n^(-1/d) clamped to (0, 1].
double epsilon_schedule(std::uint64_t n, int d);

/// f_eps as a target: values by smooth_approximant, Fourier data
/// fhat(xi) sum_t C(s,t) (-1)^(t-1) phihat(t eps |xi|).
TargetFunction mollified_target(const TargetFunction& f, int s, double eps, const ConvolutionRule& rule = {});

}  // namespace ridgelab
