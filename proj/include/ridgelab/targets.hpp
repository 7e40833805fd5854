#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>

#include "ridgelab/vec.hpp"

namespace ridgelab {

using ScalarField = std::function<double(const Vec&)>;
using FourierField = std::function<std::complex<double>(const Vec&)>;

/// Regularity metadata: analytic targets, or finite smoothness of order gamma.
struct Smoothness {
  bool analytic = true;
  double order = std::numeric_limits<double>::infinity();
};

/// Tail level below which Gaussian targets are treated as zero.
inline constexpr double kTruncationTolerance = 1e-14;

/// Largest effective support radius accepted for Gaussian targets.
inline constexpr double kMaxGaussianSupport = 10.0;

/// Test function on R^d with closed-form (or cached numerical) Fourier data.
///
/// Fourier convention: fourier(xi) = int exp(-i xi.x) f(x) dx. Values are
/// immutable once built and safe to share between threads.
class TargetFunction {
 public:
  TargetFunction(int dim, ScalarField evaluate, FourierField fourier, double support_radius, double bandwidth,
                 Smoothness smoothness, std::string name);

  int dim() const { return dim_; }
  double evaluate(const Vec& x) const { return evaluate_(x); }
  double operator()(const Vec& x) const { return evaluate_(x); }
  std::complex<double> fourier(const Vec& xi) const { return fourier_(xi); }

  /// Radius of the ball outside which evaluate() is zero.
  double support_radius() const { return support_radius_; }
  /// Frequency beyond which |fourier| is negligible (infinite if unknown).
  double bandwidth() const { return bandwidth_; }
  const Smoothness& smoothness() const { return smoothness_; }
  const std::string& name() const { return name_; }

  ScalarField field() const { return evaluate_; }

  friend TargetFunction operator+(const TargetFunction& a, const TargetFunction& b);
  friend TargetFunction operator*(double c, const TargetFunction& f);

 private:
  int dim_;
  ScalarField evaluate_;
  FourierField fourier_;
  double support_radius_;
  double bandwidth_;
  Smoothness smoothness_;
  std::string name_;
};

struct GaussianSpec {
  Vec center;          ///< also fixes the dimension
  double width = 1.0;  ///< variance sigma^2
  double amplitude = 1.0;
};

/// Radius beyond which A*exp(-|x-c|^2/(2 sigma^2)) < kTruncationTolerance.
double gaussian_effective_radius(const GaussianSpec& spec);

/// A*exp(-|x-c|^2/(2 sigma^2)), truncated to zero past its effective radius.
TargetFunction make_gaussian(const GaussianSpec& spec);

/// Identically zero target.
TargetFunction make_zero(int d);

/// Closed-form Radon transform of a Gaussian along the hyperplane omega.x = b.
double gaussian_radon_oracle(const GaussianSpec& spec, const Vec& omega, double b);

/// max(0, 1-|x|)^gamma times a smooth cutoff equal to one on the unit ball and
/// vanishing past radius 2. Fourier data by radial quadrature, memoized per |xi|.
TargetFunction make_cusp_radial(double gamma, int d);

/// Fourier transform of a radial function supported in [0, radius]. `weight_exponent`
/// lets the caller pass profiles of the form (radius - r)^beta * smooth(r) to an
/// endpoint-singular rule; pass 0 for smooth profiles.
double radial_fourier(int d, double rho, const std::function<double(double)>& smooth_part, double radius,
                      double weight_exponent);

}  // namespace ridgelab
