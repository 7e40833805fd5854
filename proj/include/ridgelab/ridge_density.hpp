#pragma once

#include <vector>

#include "ridgelab/fourier_radon.hpp"
#include "ridgelab/polynomial.hpp"

namespace ridgelab {

struct SmoothnessSpec {
  double s = 1.0;
  int q = 2;

  /// s = (d + 2k + 1) / 2, the order paired with ReLU^k in dimension d.
  static SmoothnessSpec embedding_order(int d, int k);
};

/// F_omega^(k+1) on the grid.
RidgeProfile derivative_profile(const TargetFunction& f, const Vec& omega, int k, const LineGrid& grid);

/// Everything the Peano construction needs for each node of a sphere rule:
/// the full derivative profile F^(k+1) and the Taylor data F^(j)(-1), j <= k.
class ProfileBank {
 public:
  ProfileBank(const TargetFunction& f, int k, SphereGrid sphere, LineGrid grid);

  int dim() const { return sphere_.dim; }
  int degree() const { return k_; }
  const SphereGrid& sphere() const { return sphere_; }
  const LineGrid& grid() const { return grid_; }

  const RidgeProfile& density(std::size_t j) const { return density_[j]; }
  /// F_{omega_j}^(order)(-1) for order <= k.
  double taylor(std::size_t j, int order) const { return taylor_[j][order]; }

  /// Grid indices of b = -1 and b = +1; throws SpecError unless both are nodes.
  std::pair<int, int> unit_range() const;

 private:
  int k_;
  SphereGrid sphere_;
  LineGrid grid_;
  std::vector<RidgeProfile> density_;
  std::vector<std::vector<double>> taylor_;
};

/// (1/k!) sum_j w_j int_{-1}^{1} |F_{omega_j}^(k+1)(b)| db, trapezoid rule.
double variation_upper_bound(const ProfileBank& bank);
double variation_upper_bound(const TargetFunction& f, int k, const SphereGrid& sphere, const LineGrid& grid);

/// p(x) = sum_j w_j sum_{i<=k} F^(i)(-1)/i! (omega_j.x + 1)^i.
PolynomialPart polynomial_part(const ProfileBank& bank);
PolynomialPart polynomial_part(const TargetFunction& f, int k, const SphereGrid& sphere, const LineGrid& grid);

/// ((2 pi)^-d int |xi|^(2s) |fhat(xi)|^2 d xi)^(1/2), d in {1,2,3}.
double sobolev_seminorm(const TargetFunction& f, double s);

}  // namespace ridgelab
