#include "ridgelab/mollify.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "ridgelab/log.hpp"
#include "ridgelab/quadrature.hpp"

namespace ridgelab {

namespace {

double bump(double r) { return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0; }

// Weighted polar nodes y = rho * omega on the unit ball, weights summing to one.
struct PolarRule {
  std::vector<Vec> nodes;
  std::vector<double> weights;
};

PolarRule make_polar_rule(int d, const ConvolutionRule& rule) {
  const GaussRule radial = gauss_legendre(rule.radial_nodes, 0.0, 1.0);
  const SphereGrid sphere = sphere_grid(d, d == 1 ? 0 : rule.sphere_level);
  PolarRule out;
  double total = 0.0;
  for (std::size_t q = 0; q < radial.nodes.size(); ++q) {
    const double r = radial.nodes[q];
    const double wr = radial.weights[q] * std::pow(r, d - 1) * bump(r);
    for (std::size_t j = 0; j < sphere.size(); ++j) {
      out.nodes.push_back(r * sphere.nodes[j]);
      out.weights.push_back(wr * sphere.weights[j]);
      total += wr * sphere.weights[j];
    }
  }
  for (double& w : out.weights) w /= total;
  return out;
}

std::shared_ptr<const PolarRule> cached_polar_rule(int d, const ConvolutionRule& rule) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const PolarRule>> cache;
  const auto key = std::make_tuple(d, rule.radial_nodes, rule.sphere_level);
  std::lock_guard lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = std::make_shared<const PolarRule>(make_polar_rule(d, rule));
  return slot;
}

}  // namespace

void MollifierSpec::validate() const {
  if (dim < 1 || dim > kMaxDim) throw SpecError("MollifierSpec: unsupported dimension");
  if (!(scale > 0.0 && scale <= 1.0)) throw SpecError("MollifierSpec: scale must lie in (0, 1]");
  if (order < 1) throw SpecError("MollifierSpec: order must be >= 1");
}

double bump_normalization(int d) {
  if (d < 1 || d > kMaxDim) throw SpecError("bump_normalization: unsupported dimension");
  static std::mutex mu;
  static std::map<int, double> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(d); it != cache.end()) return it->second;
  // Composite Gauss-Legendre; the integrand is flat to all orders at r = 1.
  constexpr int kPanels = 16;
  const GaussRule rule = gauss_legendre(32, 0.0, 1.0);
  double sum = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double r = (p + rule.nodes[q]) / kPanels;
      sum += rule.weights[q] / kPanels * std::pow(r, d - 1) * bump(r);
    }
  }
  const double z = sphere_area(d) * sum;
  cache[d] = z;
  return z;
}

double mollifier_value(const MollifierSpec& spec, const Vec& x) {
  spec.validate();
  const double r = norm(x) / spec.scale;
  if (r >= 1.0) return 0.0;
  return bump(r) / (bump_normalization(spec.dim) * std::pow(spec.scale, spec.dim));
}

double mollifier_fourier(int d, double rho) {
  const double z = bump_normalization(d);
  return radial_fourier(d, std::abs(rho), [z](double r) { return bump(r) / z; }, 1.0, 0.0);
}

double finite_difference(const ScalarField& f, const Vec& y, int s, const Vec& x) {
  if (s < 1) throw SpecError("finite_difference: s must be >= 1");
  double sum = 0.0;
  double c = 1.0;
  for (int t = 0; t <= s; ++t) {
    sum += ((t % 2 == 0) ? c : -c) * f(x - static_cast<double>(t) * y);
    c = c * (s - t) / (t + 1);
  }
  return sum;
}

std::vector<std::int64_t> binomial_weights(int s) {
  if (s < 1 || s > 60) throw SpecError("binomial_weights: s must lie in [1, 60]");
  std::vector<std::int64_t> out;
  std::int64_t c = 1;
  for (int t = 1; t <= s; ++t) {
    c = c * (s - t + 1) / t;
    out.push_back(t % 2 == 1 ? c : -c);
  }
  return out;
}

double smooth_approximant(const ScalarField& f, int dim, int s, double eps, const Vec& x,
                          const ConvolutionRule& rule) {
  MollifierSpec{dim, eps, s}.validate();
  if (x.dim() != dim) throw SpecError("smooth_approximant: point dimension mismatch");
  if (rule.radial_nodes < 8 || (dim > 1 && rule.sphere_level < 3)) {
    warn("smooth_approximant: convolution rule below the resolution floor (8 radial nodes, sphere level 3)");
  }
  const auto polar = cached_polar_rule(dim, rule);
  const auto weights = binomial_weights(s);
  double sum = 0.0;
  for (int t = 1; t <= s; ++t) {
    double conv = 0.0;
    for (std::size_t q = 0; q < polar->nodes.size(); ++q) {
      conv += polar->weights[q] * f(x - (t * eps) * polar->nodes[q]);
    }
    sum += static_cast<double>(weights[t - 1]) * conv;
  }
  return sum;
}

double epsilon_schedule(std::uint64_t n, int d) {
  if (n < 1) throw SpecError("epsilon_schedule: n must be >= 1");
  if (d < 1) throw SpecError("epsilon_schedule: d must be >= 1");
  return std::min(1.0, std::pow(static_cast<double>(n), -1.0 / d));
}

TargetFunction mollified_target(const TargetFunction& f, int s, double eps, const ConvolutionRule& rule) {
  const int d = f.dim();
  MollifierSpec{d, eps, s}.validate();
  const auto weights = binomial_weights(s);
  auto memo = std::make_shared<std::pair<std::mutex, std::unordered_map<double, double>>>();
  FourierField fourier = [f, weights, eps, memo](const Vec& xi) -> std::complex<double> {
    const std::complex<double> base = f.fourier(xi);
    if (base == 0.0) return 0.0;
    const double rho = norm(xi);
    {
      std::lock_guard lock(memo->first);
      if (auto it = memo->second.find(rho); it != memo->second.end()) return base * it->second;
    }
    double factor = 0.0;
    for (std::size_t t = 0; t < weights.size(); ++t) {
      factor += static_cast<double>(weights[t]) * mollifier_fourier(xi.dim(), (t + 1.0) * eps * rho);
    }
    std::lock_guard lock(memo->first);
    memo->second.emplace(rho, factor);
    return base * factor;
  };
  const ScalarField base = f.field();
  ScalarField value = [base, d, s, eps, rule](const Vec& x) { return smooth_approximant(base, d, s, eps, x, rule); };
  return TargetFunction(d, std::move(value), std::move(fourier), f.support_radius() + s * eps, f.bandwidth(),
                        Smoothness{false, std::numeric_limits<double>::infinity()},
                        f.name() + "*mollified(s=" + std::to_string(s) + ")");
}

}  // namespace ridgelab
