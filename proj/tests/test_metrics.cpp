#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "ridgelab/log.hpp"
#include "ridgelab/metrics.hpp"
#include "ridgelab/network.hpp"
#include "ridgelab/rng.hpp"

namespace ridgelab {
namespace {

ErrorSeries series_of(AbscissaKind kind, std::vector<std::pair<double, double>> pts) {
  return ErrorSeries{kind, Norm::l2, std::move(pts)};
}

TEST(LpError, IdenticalFunctions) {
  const ScalarField f = [](const Vec& x) { return std::sin(x[0]) * x[1]; };
  EXPECT_EQ(lp_error(f, f, Norm::l2, BallSampler{2, SamplerMode::lattice, 1000, 0}), 0.0);
  EXPECT_EQ(lp_error(f, f, Norm::linf, BallSampler{2, SamplerMode::random, 1000, 0}), 0.0);
}

TEST(LpError, DiskArea) {
  const ScalarField one = [](const Vec&) { return 1.0; };
  const ScalarField zero = [](const Vec&) { return 0.0; };
  EXPECT_NEAR(lp_error(one, zero, Norm::l2, BallSampler{2, SamplerMode::lattice, 4096, 0}),
              std::sqrt(std::numbers::pi), 1e-12);
}

TEST(LpError, SupOfRampOnBall) {
  const ScalarField ramp = [](const Vec& x) { return activation(1, x[0]); };
  const ScalarField zero = [](const Vec&) { return 0.0; };
  EXPECT_NEAR(lp_error(ramp, zero, Norm::linf, BallSampler{2, SamplerMode::lattice, 1u << 16, 0}), 1.0, 0.01);
}

TEST(LpError, IndependentOfThreadCount) {
  const ScalarField f = [](const Vec& x) { return std::exp(x[0] - x[1]); };
  const ScalarField g = [](const Vec& x) { return 1.0 + x[0]; };
  const BallSampler s{3, SamplerMode::lattice, 20000, 4};
  const int saved = thread_count();
  set_thread_count(1);
  const double a = lp_error(f, g, Norm::l2, s);
  set_thread_count(4);
  const double b = lp_error(f, g, Norm::l2, s);
  set_thread_count(saved);
  EXPECT_EQ(a, b);
}

TEST(RateFit, ExactPowerLaws) {
  const auto fit = rate_fit(series_of(AbscissaKind::width, {{2, 0.25}, {4, 1.0 / 16}, {8, 1.0 / 64}, {16, 1.0 / 256}}));
  EXPECT_NEAR(fit.slope, -2.0, 1e-14);
  EXPECT_NEAR(fit.residual, 0.0, 1e-14);
  const auto cube = rate_fit(series_of(AbscissaKind::scale, {{0.5, 0.125}, {0.25, 1.0 / 64}, {0.125, 1.0 / 512}}));
  EXPECT_NEAR(cube.slope, 3.0, 1e-14);
  const auto flat = rate_fit(series_of(AbscissaKind::width, {{1, 0.3}, {2, 0.3}, {3, 0.3}}));
  EXPECT_NEAR(flat.slope, 0.0, 1e-14);
  EXPECT_NEAR(flat.intercept, std::log(0.3), 1e-14);
}

TEST(RateFit, RejectsBadSeries) {
  EXPECT_THROW(rate_fit(series_of(AbscissaKind::width, {{1, 0.3}, {2, 0.2}})), SpecError);
  EXPECT_THROW(rate_fit(series_of(AbscissaKind::width, {{1, 0.3}, {2, 0.0}, {3, 0.1}})), SpecError);
  EXPECT_THROW(series_of(AbscissaKind::width, {{1, 0.3}, {1, 0.2}, {3, 0.1}}).validate(), SpecError);
  EXPECT_THROW(series_of(AbscissaKind::width, {{1, -0.3}, {2, 0.2}, {3, 0.1}}).validate(), SpecError);
}

TEST(SeriesCsv, Layout) {
  const auto s = series_of(AbscissaKind::width, {{2, 0.25}, {4, 0.0625}, {8, 0.015625}});
  std::ostringstream os;
  write_series_csv(os, s, rate_fit(s));
  EXPECT_EQ(os.str(), "abscissa,error\n2,0.25\n4,0.0625\n8,0.015625\n# slope=-2 intercept=0 residual=0\n");
}

}  // namespace
}  // namespace ridgelab
