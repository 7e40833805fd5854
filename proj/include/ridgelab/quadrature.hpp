#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ridgelab/vec.hpp"

namespace ridgelab {

/// Surface area of S^{d-1}: 2 for d=1, 2*pi for d=2, 4*pi for d=3, ...
double sphere_area(int d);

/// Volume of the unit ball in R^d.
double ball_volume(int d);

/// Quadrature rule on S^{d-1}: unit nodes with positive weights summing to
/// sphere_area(d).
struct SphereGrid {
  int dim = 0;
  std::vector<Vec> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Deterministic sphere rule for d in {1,2,3}.
///
/// d=1: {+1,-1} with unit weights. d=2: 2^level equispaced angles.
/// d=3: Gauss-Legendre in cos(theta) with level+1 nodes times 2*level+2
/// uniform azimuths, exact for spherical polynomials of degree 2*level.
SphereGrid sphere_grid(int d, int level);

/// I.i.d. uniform directions on S^{d-1} (normalized Gaussian vectors).
std::vector<Vec> sample_directions(int d, std::size_t n, std::uint64_t seed);

/// Uniform grid b_m = -L + m*h, m = 0..N-1, h = 2L/N, N a power of two.
class LineGrid {
 public:
  static constexpr double kDefaultHalfWidth = 4.0;
  static constexpr int kDefaultCount = 2048;

  LineGrid() : LineGrid(kDefaultHalfWidth, kDefaultCount) {}
  LineGrid(double half_width, int count);

  double half_width() const { return half_width_; }
  int count() const { return count_; }
  double spacing() const { return 2.0 * half_width_ / count_; }
  double node(int m) const { return -half_width_ + m * spacing(); }
  std::vector<double> nodes() const;

  /// Angular frequency of the j-th dual sample, j in [-N/2, N/2).
  double frequency(int j) const;
  double nyquist() const;

  /// Inclusive index range [first, last] of the nodes with |b| <= 1.
  std::pair<int, int> unit_interval_indices() const;

  /// One refinement step: twice the half-width and half the spacing.
  LineGrid refined() const;

 private:
  double half_width_;
  int count_;
};

enum class SamplerMode { lattice, random };

/// Point source on the open unit ball B_1^d.
struct BallSampler {
  int dim = 2;
  SamplerMode mode = SamplerMode::lattice;
  std::size_t count = 1u << 16;
  std::uint64_t seed = 0;
};

/// Lattice mode: Cranley-Patterson rotated Sobol points in [-1,1]^d kept when
/// inside the ball. Random mode: rejection sampling from the cube.
std::vector<Vec> ball_points(const BallSampler& sampler);

/// Gauss-Legendre rule with n nodes on [a, b].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

}  // namespace ridgelab
