#include "ridgelab/metrics.hpp"

#include <cmath>
#include <ostream>

#include "ridgelab/format.hpp"
#include "ridgelab/log.hpp"
#include "ridgelab/rng.hpp"

namespace ridgelab {

void ErrorSeries::validate() const {
  for (const auto& [a, e] : points) {
    if (!std::isfinite(a)) throw SpecError("ErrorSeries: non-finite abscissa");
    if (!(e >= 0.0)) throw SpecError("ErrorSeries: errors must be nonnegative");
  }
  if (points.size() < 2) return;
  const bool increasing = points[1].first > points[0].first;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double step = points[i].first - points[i - 1].first;
    if (increasing ? !(step > 0.0) : !(step < 0.0)) throw SpecError("ErrorSeries: abscissae must be strictly monotone");
  }
}

double lp_error(const ScalarField& f, const ScalarField& g, Norm p, const std::vector<Vec>& points) {
  if (points.empty()) throw SpecError("lp_error: no sample points");
  std::vector<double> diff(points.size());
  parallel_for(points.size(), [&](std::size_t i) { diff[i] = std::abs(f(points[i]) - g(points[i])); });
  if (p == Norm::linf) {
    double m = 0.0;
    for (double v : diff) m = std::max(m, v);
    return m;
  }
  double sum = 0.0;
  for (double v : diff) sum += v * v;
  return std::sqrt(ball_volume(points.front().dim()) * sum / static_cast<double>(points.size()));
}

double lp_error(const ScalarField& f, const ScalarField& g, Norm p, const BallSampler& sampler) {
  return lp_error(f, g, p, ball_points(sampler));
}

RateFit rate_fit(const ErrorSeries& series) {
  series.validate();
  const std::size_t n = series.points.size();
  if (n < 3) throw SpecError("rate_fit: need at least 3 points");
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, e] = series.points[i];
    if (!(a > 0.0)) throw SpecError("rate_fit: abscissae must be positive");
    if (!(e > 0.0)) throw SpecError("rate_fit: errors must be positive");
    x[i] = std::log(a);
    y[i] = std::log(e);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

void write_series_csv(std::ostream& os, const ErrorSeries& series, const std::optional<RateFit>& fit) {
  os << "abscissa,error\n";
  for (const auto& [a, e] : series.points) os << format_double(a) << ',' << format_double(e) << '\n';
  if (fit) {
    os << "# slope=" << format_double(fit->slope) << " intercept=" << format_double(fit->intercept)
       << " residual=" << format_double(fit->residual) << '\n';
  }
}

}  // namespace ridgelab
