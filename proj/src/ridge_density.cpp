#include "ridgelab/ridge_density.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ridgelab/log.hpp"
#include "ridgelab/rng.hpp"

namespace ridgelab {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Fraction of the filtered spectrum |t|^(d-1+order) |ghat(t)| removed by the taper.
double taper_loss(const TargetFunction& f, const Vec& omega, const LineGrid& grid, int order) {
  const auto slice = radon_slice(f, omega, grid);
  const int n = grid.count();
  const int p = f.dim() - 1 + order;
  double total = 0.0;
  double removed = 0.0;
  for (int j = -n / 2; j < n / 2; ++j) {
    const double t = grid.frequency(j);
    const double mass = std::pow(std::abs(t), p) * std::abs(slice[j + n / 2]);
    total += mass;
    removed += mass * (1.0 - spectral_taper(t, filter_cutoff(f, grid)));
  }
  return total > 0.0 ? removed / total : 0.0;
}

void check_taper(const TargetFunction& f, const Vec& omega, const LineGrid& grid, int order) {
  const double loss = taper_loss(f, omega, grid, order);
  if (loss > 1e-8) {
    std::ostringstream msg;
    msg << "derivative_profile: taper removes " << loss << " of the spectral mass (order " << order << ", "
        << f.name() << ")";
    warn(msg.str());
  }
}

}  // namespace

SmoothnessSpec SmoothnessSpec::embedding_order(int d, int k) {
  if (d < 1 || k < 0) throw SpecError("SmoothnessSpec: need d >= 1 and k >= 0");
  return SmoothnessSpec{(d + 2.0 * k + 1.0) / 2.0, 2};
}

RidgeProfile derivative_profile(const TargetFunction& f, const Vec& omega, int k, const LineGrid& grid) {
  if (k < 0) throw SpecError("derivative_profile: k must be >= 0");
  check_taper(f, omega, grid, k + 1);
  return filter_to_grid(filter_window_radon(f, omega, grid), f.dim(), k + 1, grid);
}

ProfileBank::ProfileBank(const TargetFunction& f, int k, SphereGrid sphere, LineGrid grid)
    : k_(k), sphere_(std::move(sphere)), grid_(grid), density_(sphere_.size()), taylor_(sphere_.size()) {
  if (k < 0) throw SpecError("ProfileBank: k must be >= 0");
  if (sphere_.dim != f.dim()) throw SpecError("ProfileBank: sphere/target dimension mismatch");
  unit_range();
  const std::size_t before = warning_count();
  parallel_for(sphere_.size(), [&](std::size_t j) {
    const Vec& omega = sphere_.nodes[j];
    const RidgeProfile radon = filter_window_radon(f, omega, grid_);
    density_[j] = filter_to_grid(radon, f.dim(), k_ + 1, grid_);
    taylor_[j].resize(k_ + 1);
    for (int order = 0; order <= k_; ++order) {
      taylor_[j][order] = filter_to_grid(radon, f.dim(), order, grid_).value_at(-1.0);
    }
  });
  // One taper check per bank: the first direction is representative for the
  // radial targets used here, and a full sweep would double the cost.
  if (warning_count() == before && !sphere_.nodes.empty()) check_taper(f, sphere_.nodes[0], grid_, k_ + 1);
}

std::pair<int, int> ProfileBank::unit_range() const {
  const auto [first, last] = grid_.unit_interval_indices();
  const double h = grid_.spacing();
  if (std::abs(grid_.node(first) + 1.0) > 1e-9 * h || std::abs(grid_.node(last) - 1.0) > 1e-9 * h) {
    throw SpecError("ProfileBank: line grid must place nodes at b = -1 and b = +1");
  }
  return {first, last};
}

double variation_upper_bound(const ProfileBank& bank) {
  const auto [first, last] = bank.unit_range();
  const double h = bank.grid().spacing();
  double sum = 0.0;
  for (std::size_t j = 0; j < bank.sphere().size(); ++j) {
    const auto& v = bank.density(j).values;
    double integral = 0.5 * (std::abs(v[first]) + std::abs(v[last]));
    for (int m = first + 1; m < last; ++m) integral += std::abs(v[m]);
    sum += bank.sphere().weights[j] * integral * h;
  }
  return sum / factorial(bank.degree());
}

double variation_upper_bound(const TargetFunction& f, int k, const SphereGrid& sphere, const LineGrid& grid) {
  return variation_upper_bound(ProfileBank(f, k, sphere, grid));
}

PolynomialPart polynomial_part(const ProfileBank& bank) {
  PolynomialPart p(bank.dim());
  for (std::size_t j = 0; j < bank.sphere().size(); ++j) {
    for (int i = 0; i <= bank.degree(); ++i) {
      const double c = bank.sphere().weights[j] * bank.taylor(j, i) / factorial(i);
      if (c != 0.0) p.add_ridge_power(bank.sphere().nodes[j], 1.0, i, c);
    }
  }
  return p;
}

PolynomialPart polynomial_part(const TargetFunction& f, int k, const SphereGrid& sphere, const LineGrid& grid) {
  return polynomial_part(ProfileBank(f, k, sphere, grid));
}

double sobolev_seminorm(const TargetFunction& f, double s) {
  if (!(s >= 0.0)) throw SpecError("sobolev_seminorm: s must be >= 0");
  const int d = f.dim();
  if (d > 3) throw SpecError("sobolev_seminorm: unsupported dimension");
  const SphereGrid sphere = sphere_grid(d, d == 1 ? 0 : 6);

  auto integrand = [&](double rho) {
    double acc = 0.0;
    for (std::size_t j = 0; j < sphere.size(); ++j) acc += sphere.weights[j] * std::norm(f.fourier(rho * sphere.nodes[j]));
    return std::pow(rho, 2.0 * s + d - 1.0) * acc;
  };

  // Geometric scan for the cutoff: past the peak, and three consecutive
  // samples below the relative threshold.
  constexpr double kThreshold = 1e-14;
  constexpr double kMaxCutoff = 1e5;
  double peak = 0.0;
  double cutoff = 0.0;
  int quiet = 0;
  for (double rho = 1.0 / 64; rho <= kMaxCutoff; rho *= 1.25) {
    const double v = integrand(rho);
    peak = std::max(peak, v);
    if (v <= kThreshold * peak) {
      if (++quiet == 3) {
        cutoff = rho;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  if (peak == 0.0) return 0.0;
  if (cutoff == 0.0) {
    throw NumericalError("sobolev_seminorm: integrand has not decayed below 1e-14 by |xi| = 1e5 (" + f.name() +
                         ", s = " + std::to_string(s) + ")");
  }

  constexpr int kPanels = 96;
  const GaussRule rule = gauss_legendre(20, 0.0, 1.0);
  const double width = cutoff / kPanels;
  double total = 0.0;
  for (int panel = 0; panel < kPanels; ++panel) {
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      total += rule.weights[q] * width * integrand((panel + rule.nodes[q]) * width);
    }
  }
  return std::sqrt(total / std::pow(2.0 * std::numbers::pi, d));
}

}  // namespace ridgelab
