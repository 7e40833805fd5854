#include "ridgelab/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <boost/random/sobol.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "ridgelab/log.hpp"
#include "ridgelab/rng.hpp"

namespace ridgelab {

double sphere_area(int d) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

double ball_volume(int d) { return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0); }

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw SpecError("gauss_legendre: need at least one node");
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n));
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &rule.nodes[i], &rule.weights[i], table);
  }
  gsl_integration_glfixed_table_free(table);
  return rule;
}

SphereGrid sphere_grid(int d, int level) {
  if (level < (d == 1 ? 0 : 1)) throw SpecError("sphere_grid: level must be >= 1");
  SphereGrid grid;
  grid.dim = d;
  switch (d) {
    case 1:
      grid.nodes = {Vec{1.0}, Vec{-1.0}};
      grid.weights = {1.0, 1.0};
      break;
    case 2: {
      if (level > 24) throw SpecError("sphere_grid: level too large for d=2");
      const int m = 1 << level;
      const double w = 2.0 * std::numbers::pi / m;
      for (int j = 0; j < m; ++j) {
        const double theta = w * j;
        grid.nodes.push_back(Vec{std::cos(theta), std::sin(theta)});
        grid.weights.push_back(w);
      }
      break;
    }
    case 3: {
      const GaussRule polar = gauss_legendre(level + 1);
      const int azimuths = 2 * level + 2;
      const double dphi = 2.0 * std::numbers::pi / azimuths;
      for (int i = 0; i <= level; ++i) {
        const double z = polar.nodes[i];
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int j = 0; j < azimuths; ++j) {
          const double phi = dphi * j;
          Vec w{r * std::cos(phi), r * std::sin(phi), z};
          w *= 1.0 / norm(w);
          grid.nodes.push_back(w);
          grid.weights.push_back(polar.weights[i] * dphi);
        }
      }
      break;
    }
    default:
      throw SpecError("sphere_grid: deterministic grids exist for d <= 3 only (use sample_directions), got d=" +
                      std::to_string(d));
  }
  return grid;
}

std::vector<Vec> sample_directions(int d, std::size_t n, std::uint64_t seed) {
  if (d < 1 || d > kMaxDim) throw SpecError("sample_directions: unsupported dimension");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Vec> out;
  out.reserve(n);
  while (out.size() < n) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = normal(rng);
    const double r = norm(v);
    if (r < 1e-300) continue;
    v *= 1.0 / r;
    out.push_back(v);
  }
  return out;
}

LineGrid::LineGrid(double half_width, int count) : half_width_(half_width), count_(count) {
  if (!(half_width >= 1.0)) throw SpecError("LineGrid: half-width must be >= 1");
  if (count < 4 || (count & (count - 1)) != 0) throw SpecError("LineGrid: count must be a power of two >= 4");
}

std::vector<double> LineGrid::nodes() const {
  std::vector<double> b(count_);
  for (int m = 0; m < count_; ++m) b[m] = node(m);
  return b;
}

double LineGrid::frequency(int j) const { return std::numbers::pi * j / half_width_; }

double LineGrid::nyquist() const { return std::numbers::pi / spacing(); }

std::pair<int, int> LineGrid::unit_interval_indices() const {
  const double h = spacing();
  const double tol = 1e-9 * h;
  const int first = static_cast<int>(std::ceil((half_width_ - 1.0 - tol) / h));
  const int last = static_cast<int>(std::floor((half_width_ + 1.0 + tol) / h));
  return {first, std::min(last, count_ - 1)};
}

LineGrid LineGrid::refined() const { return LineGrid(2.0 * half_width_, 4 * count_); }

std::vector<Vec> ball_points(const BallSampler& sampler) {
  const int d = sampler.dim;
  if (d < 1 || d > kMaxDim) throw SpecError("ball_points: unsupported dimension");
  std::vector<Vec> out;
  out.reserve(sampler.count);
  if (sampler.count == 0) return out;

  if (sampler.mode == SamplerMode::random) {
    std::mt19937_64 rng(sampler.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (out.size() < sampler.count) {
      Vec x(d);
      for (int i = 0; i < d; ++i) x[i] = u(rng);
      if (dot(x, x) < 1.0) out.push_back(x);
    }
    return out;
  }

  // Cranley-Patterson rotation keyed by the seed keeps lattice sets distinct per seed.
  std::mt19937_64 rng(derive_seed(sampler.seed, "ball-lattice-shift"));
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  Vec shift(d);
  for (int i = 0; i < d; ++i) shift[i] = u01(rng);

  boost::random::sobol qrng(static_cast<std::size_t>(d));
  constexpr double kScale = 0x1p-64;
  while (out.size() < sampler.count) {
    Vec x(d);
    for (int i = 0; i < d; ++i) {
      double v = static_cast<double>(qrng()) * kScale + shift[i];
      v -= std::floor(v);
      x[i] = 2.0 * v - 1.0;
    }
    if (dot(x, x) < 1.0) out.push_back(x);
  }
  return out;
}

}  // namespace ridgelab
