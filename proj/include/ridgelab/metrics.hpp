#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "ridgelab/quadrature.hpp"
#include "ridgelab/targets.hpp"

namespace ridgelab {

enum class Norm { l2, linf };
enum class AbscissaKind { width, scale };

struct ErrorSeries {
  AbscissaKind kind = AbscissaKind::width;
  Norm norm = Norm::l2;
  std::vector<std::pair<double, double>> points;  ///< (abscissa, error)

  /// Throws SpecError unless abscissae are strictly monotone and errors nonnegative.
  void validate() const;
};

/// p = 2: (|B_1^d| * mean |f - g|^2)^(1/2); p = inf: max |f - g| over the points.
double lp_error(const ScalarField& f, const ScalarField& g, Norm p, const std::vector<Vec>& points);
double lp_error(const ScalarField& f, const ScalarField& g, Norm p, const BallSampler& sampler);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< RMS of the log-log residuals
};

/// Least-squares line through (log abscissa, log error); error ~ abscissa^slope.
RateFit rate_fit(const ErrorSeries& series);

/// `abscissa,error` rows and, when given, a `# slope=... intercept=... residual=...` footer.
void write_series_csv(std::ostream& os, const ErrorSeries& series, const std::optional<RateFit>& fit);

}  // namespace ridgelab
