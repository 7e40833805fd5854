#include "ridgelab/targets.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "ridgelab/log.hpp"
#include "ridgelab/quadrature.hpp"

namespace ridgelab {

TargetFunction::TargetFunction(int dim, ScalarField evaluate, FourierField fourier, double support_radius,
                               double bandwidth, Smoothness smoothness, std::string name)
    : dim_(dim),
      evaluate_(std::move(evaluate)),
      fourier_(std::move(fourier)),
      support_radius_(support_radius),
      bandwidth_(bandwidth),
      smoothness_(smoothness),
      name_(std::move(name)) {
  if (dim < 1 || dim > kMaxDim) throw SpecError("TargetFunction: unsupported dimension");
}

TargetFunction operator+(const TargetFunction& a, const TargetFunction& b) {
  if (a.dim_ != b.dim_) throw SpecError("TargetFunction: dimension mismatch in sum");
  Smoothness s;
  s.analytic = a.smoothness_.analytic && b.smoothness_.analytic;
  s.order = std::min(a.smoothness_.order, b.smoothness_.order);
  return TargetFunction(
      a.dim_, [fa = a.evaluate_, fb = b.evaluate_](const Vec& x) { return fa(x) + fb(x); },
      [fa = a.fourier_, fb = b.fourier_](const Vec& xi) { return fa(xi) + fb(xi); },
      std::max(a.support_radius_, b.support_radius_), std::max(a.bandwidth_, b.bandwidth_), s,
      "(" + a.name_ + ")+(" + b.name_ + ")");
}

TargetFunction operator*(double c, const TargetFunction& f) {
  return TargetFunction(
      f.dim_, [c, fe = f.evaluate_](const Vec& x) { return c * fe(x); },
      [c, ff = f.fourier_](const Vec& xi) { return c * ff(xi); }, c == 0.0 ? 0.0 : f.support_radius_,
      f.bandwidth_, f.smoothness_, std::to_string(c) + "*" + f.name_);
}

double gaussian_effective_radius(const GaussianSpec& spec) {
  const double a = std::abs(spec.amplitude);
  if (a <= kTruncationTolerance) return 0.0;
  return norm(spec.center) + std::sqrt(2.0 * spec.width * std::log(a / kTruncationTolerance));
}

namespace {

void validate(const GaussianSpec& spec) {
  const int d = spec.center.dim();
  if (d < 1 || d > kMaxDim) throw SpecError("GaussianSpec: center must have dimension 1..8");
  if (!(spec.width > 0.0) || !std::isfinite(spec.width)) throw SpecError("GaussianSpec: width must be > 0");
  if (!std::isfinite(spec.amplitude)) throw SpecError("GaussianSpec: amplitude must be finite");
  const double r = gaussian_effective_radius(spec);
  if (r > kMaxGaussianSupport) {
    std::ostringstream msg;
    msg << "GaussianSpec: effective support radius " << r << " exceeds " << kMaxGaussianSupport
        << " at truncation tolerance " << kTruncationTolerance;
    throw SpecError(msg.str());
  }
}

}  // namespace

TargetFunction make_gaussian(const GaussianSpec& spec) {
  validate(spec);
  const int d = spec.center.dim();
  const Vec c = spec.center;
  const double var = spec.width;
  const double amp = spec.amplitude;
  const double radius = gaussian_effective_radius(spec);
  const double mass = amp * std::pow(2.0 * std::numbers::pi * var, 0.5 * d);

  auto evaluate = [c, var, amp, radius](const Vec& x) {
    const Vec dx = x - c;
    const double r2 = dot(dx, dx);
    if (r2 > radius * radius) return 0.0;
    return amp * std::exp(-r2 / (2.0 * var));
  };
  auto fourier = [c, var, mass](const Vec& xi) {
    const double mag = mass * std::exp(-0.5 * var * dot(xi, xi));
    const double phase = -dot(xi, c);
    return std::complex<double>(mag * std::cos(phase), mag * std::sin(phase));
  };
  const double bandwidth = std::sqrt(2.0 * std::log(1.0 / kTruncationTolerance) / var);
  std::ostringstream name;
  name << "gaussian(d=" << d << ",sigma2=" << var << ",A=" << amp << ")";
  return TargetFunction(d, evaluate, fourier, radius, bandwidth, Smoothness{}, name.str());
}

TargetFunction make_zero(int d) {
  return TargetFunction(
      d, [](const Vec&) { return 0.0; }, [](const Vec&) { return std::complex<double>{}; }, 0.0, 0.0,
      Smoothness{}, "zero");
}

double gaussian_radon_oracle(const GaussianSpec& spec, const Vec& omega, double b) {
  validate(spec);
  const int d = spec.center.dim();
  if (omega.dim() != d) throw SpecError("gaussian_radon_oracle: direction dimension mismatch");
  if (std::abs(norm(omega) - 1.0) > 1e-12) throw SpecError("gaussian_radon_oracle: direction must be a unit vector");
  const double shift = b - dot(omega, spec.center);
  return spec.amplitude * std::pow(2.0 * std::numbers::pi * spec.width, 0.5 * (d - 1)) *
         std::exp(-shift * shift / (2.0 * spec.width));
}

namespace {

struct RadialIntegrand {
  int d;
  double rho;
  const std::function<double(double)>* smooth;
};

// Kernel of the radial Fourier transform: f_hat(rho) = int_0^R f(r) K_d(rho, r) dr.
double radial_kernel(int d, double rho, double r) {
  const double z = rho * r;
  switch (d) {
    case 1:
      return 2.0 * std::cos(z);
    case 2:
      return 2.0 * std::numbers::pi * r * std::cyl_bessel_j(0.0, z);
    case 3:
      return 4.0 * std::numbers::pi * r * r * (z < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z);
    default: {
      const double nu = 0.5 * d - 1.0;
      if (z < 1e-12) return sphere_area(d) * std::pow(r, d - 1);
      return std::pow(2.0 * std::numbers::pi, 0.5 * d) * std::pow(rho, 1.0 - 0.5 * d) *
             std::cyl_bessel_j(nu, z) * std::pow(r, 0.5 * d);
    }
  }
}

double radial_integrand(double r, void* params) {
  const auto* p = static_cast<const RadialIntegrand*>(params);
  return (*p->smooth)(r) * radial_kernel(p->d, p->rho, r);
}

}  // namespace

double radial_fourier(int d, double rho, const std::function<double(double)>& smooth_part, double radius,
                      double weight_exponent) {
  constexpr std::size_t kLimit = 4000;
  RadialIntegrand params{d, rho, &smooth_part};
  gsl_function fn{&radial_integrand, &params};
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(kLimit);
  gsl_error_handler_t* old_handler = gsl_set_error_handler_off();
  double result = 0.0;
  double abserr = 0.0;
  int status = 0;
  if (weight_exponent != 0.0) {
    gsl_integration_qaws_table* table = gsl_integration_qaws_table_alloc(0.0, weight_exponent, 0, 0);
    status = gsl_integration_qaws(&fn, 0.0, radius, table, 1e-13, 1e-11, kLimit, ws, &result, &abserr);
    gsl_integration_qaws_table_free(table);
  } else {
    status = gsl_integration_qag(&fn, 0.0, radius, 1e-13, 1e-11, kLimit, GSL_INTEG_GAUSS61, ws, &result, &abserr);
  }
  gsl_set_error_handler(old_handler);
  gsl_integration_workspace_free(ws);
  if (status != GSL_SUCCESS && abserr > 1e-8 * (1.0 + std::abs(result))) {
    throw NumericalError("radial_fourier: quadrature failed at rho=" + std::to_string(rho) + " (" +
                         gsl_strerror(status) + ")");
  }
  return result;
}

namespace {

double smooth_cutoff(double r) {
  auto psi = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double a = psi(2.0 - r);
  return a / (a + psi(r - 1.0));
}

// Memo of a radial Fourier profile keyed by |xi|.
class RadialFourierCache {
 public:
  explicit RadialFourierCache(std::function<double(double)> compute) : compute_(std::move(compute)) {}

  double operator()(double rho) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = values_.find(rho); it != values_.end()) return it->second;
    }
    const double v = compute_(rho);
    std::lock_guard lock(mutex_);
    values_.emplace(rho, v);
    return v;
  }

 private:
  std::function<double(double)> compute_;
  std::mutex mutex_;
  std::unordered_map<double, double> values_;
};

}  // namespace

TargetFunction make_cusp_radial(double gamma, int d) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw SpecError("make_cusp_radial: gamma must be > 0");
  if (d < 1 || d > kMaxDim) throw SpecError("make_cusp_radial: unsupported dimension");

  auto evaluate = [gamma](const Vec& x) {
    const double r = norm(x);
    if (r >= 1.0) return 0.0;
    return std::pow(1.0 - r, gamma) * smooth_cutoff(r);
  };
  // On [0,1] the cutoff is identically one, so the profile is (1-r)^gamma exactly.
  auto cache = std::make_shared<RadialFourierCache>([d, gamma](double rho) {
    return radial_fourier(d, rho, [](double) { return 1.0; }, 1.0, gamma);
  });
  auto fourier = [cache](const Vec& xi) { return std::complex<double>((*cache)(norm(xi)), 0.0); };
  std::ostringstream name;
  name << "cusp(d=" << d << ",gamma=" << gamma << ")";
  return TargetFunction(d, evaluate, fourier, 1.0, std::numeric_limits<double>::infinity(),
                        Smoothness{false, gamma}, name.str());
}

}  // namespace ridgelab
