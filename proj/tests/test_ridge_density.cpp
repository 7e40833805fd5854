#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ridgelab/log.hpp"
#include "ridgelab/quadrature.hpp"
#include "ridgelab/ridge_density.hpp"
#include "ridgelab/targets.hpp"

namespace ridgelab {
namespace {

constexpr double kPi = std::numbers::pi;

TargetFunction unit_gaussian(int d) { return make_gaussian({Vec(d), 1.0, 1.0}); }

TEST(EmbeddingOrder, Formula) {
  EXPECT_DOUBLE_EQ(SmoothnessSpec::embedding_order(2, 1).s, 2.5);
  EXPECT_DOUBLE_EQ(SmoothnessSpec::embedding_order(1, 0).s, 1.0);
  EXPECT_EQ(SmoothnessSpec::embedding_order(3, 2).q, 2);
}

TEST(DerivativeProfile, OneDimensionalIdentity) {
  const auto f = unit_gaussian(1);
  const LineGrid grid;
  for (double w : {1.0, -1.0}) {
    const auto p = derivative_profile(f, Vec{w}, 0, grid);
    EXPECT_EQ(p.kind, ProfileKind::derivative);
    EXPECT_EQ(p.order, 1);
    const auto [first, last] = grid.unit_interval_indices();
    for (int m = first; m <= last; ++m) {
      const double u = grid.node(m);
      const double fprime = -w * u * std::exp(-0.5 * u * u);
      EXPECT_NEAR(p.values[m], fprime * w / 2.0, 1e-6) << "u=" << u;
    }
  }
}

TEST(DerivativeProfile, EvenForCenteredTargetsAndOddK) {
  const auto f = unit_gaussian(2);
  const LineGrid grid;
  const auto p = derivative_profile(f, Vec{0.6, 0.8}, 1, grid);
  // node(N/2 + m) = m h, node(N/2 - m) = -m h
  const int mid = grid.count() / 2;
  for (int m = 1; m < 300; m += 17) EXPECT_NEAR(p.values[mid + m], p.values[mid - m], 1e-12);
}

TEST(DerivativeProfile, ZeroTarget) {
  for (double v : derivative_profile(make_zero(2), Vec{1.0, 0.0}, 2, LineGrid()).values) EXPECT_EQ(v, 0.0);
}

TEST(VariationBound, OneDimensionalTotalVariation) {
  // Trapezoid values: exact integral of g = |f^(k+1)| plus h^2/12 sum over smooth pieces of [g'].
  const auto f = unit_gaussian(1);
  const auto sphere = sphere_grid(1, 0);
  const LineGrid grid;
  const double h2 = grid.spacing() * grid.spacing();
  const double e = std::exp(-0.5);
  // k=0: int_{-1}^{1} |f'| = 2 (1 - e^{-1/2}), kink of |f'| at the node b = 0
  EXPECT_NEAR(variation_upper_bound(f, 0, sphere, grid), 0.786938680574733 - h2 / 6.0, 1e-9);
  // k=1: int_{-1}^{1} |f''| = 2 e^{-1/2}, zeros of f'' at the endpoints
  EXPECT_NEAR(variation_upper_bound(f, 1, sphere, grid), 2.0 * e - h2 * e / 3.0, 1e-9);
  // sigma^2 = 1/2, k=0: 2 (1 - e^{-1})
  const auto narrow = make_gaussian({Vec{0.0}, 0.5, 1.0});
  EXPECT_NEAR(variation_upper_bound(narrow, 0, sphere, grid), 1.26424111765712 - h2 / 6.0 * (2.0 + 2.0 / std::exp(1.0)),
              1e-9);
}

TEST(VariationBound, SameForEveryDirectionOfRadialTarget) {
  const ProfileBank bank(unit_gaussian(2), 1, sphere_grid(2, 6), LineGrid());
  const auto [first, last] = bank.unit_range();
  const double h = bank.grid().spacing();
  std::vector<double> per_direction;
  for (std::size_t j = 0; j < bank.sphere().size(); ++j) {
    const auto& v = bank.density(j).values;
    double s = 0.0;
    for (int m = first; m <= last; ++m) s += (m == first || m == last ? 0.5 : 1.0) * h * std::abs(v[m]);
    per_direction.push_back(s);
  }
  for (double s : per_direction) EXPECT_NEAR(s, per_direction.front(), 1e-8);
  const double coarse = variation_upper_bound(bank);
  const double fine = variation_upper_bound(ProfileBank(unit_gaussian(2), 1, sphere_grid(2, 7), LineGrid()));
  EXPECT_NEAR(fine, coarse, 1e-8);
}

TEST(VariationBound, ZeroAndHomogeneity) {
  const auto sphere = sphere_grid(2, 5);
  EXPECT_EQ(variation_upper_bound(make_zero(2), 1, sphere, LineGrid()), 0.0);
  const auto f = unit_gaussian(2);
  const double v = variation_upper_bound(f, 1, sphere, LineGrid());
  EXPECT_GT(v, 0.0);
  EXPECT_NEAR(variation_upper_bound(-2.5 * f, 1, sphere, LineGrid()), 2.5 * v, 1e-12 * v);
}

TEST(ProfileBank, TaylorDataAndRange) {
  const auto f = unit_gaussian(1);
  const ProfileBank bank(f, 1, sphere_grid(1, 0), LineGrid());
  const auto [first, last] = bank.unit_range();
  EXPECT_DOUBLE_EQ(bank.grid().node(first), -1.0);
  EXPECT_DOUBLE_EQ(bank.grid().node(last), 1.0);
  // F_w(-1) = f(-w)/2, F_w'(-1) = w f'(-w)/2
  const double e = std::exp(-0.5);
  for (std::size_t j = 0; j < 2; ++j) {
    const double w = bank.sphere().nodes[j][0];
    EXPECT_NEAR(bank.taylor(j, 0), e / 2.0, 1e-9);
    EXPECT_NEAR(bank.taylor(j, 1), w * (w * e) / 2.0, 1e-7);
  }
  EXPECT_THROW(ProfileBank(f, 0, sphere_grid(1, 0), LineGrid(3.3, 2048)).unit_range(), SpecError);
}

TEST(PolynomialPart, OneDimensionalLinear) {
  // sum over w = +-1 of F_w(-1) + F_w'(-1) (w x + 1) = 2 e^{-1/2} for the centered Gaussian
  const auto p = polynomial_part(unit_gaussian(1), 1, sphere_grid(1, 0), LineGrid());
  for (double x : {-0.7, 0.0, 0.3}) EXPECT_NEAR(p(Vec{x}), 2.0 * std::exp(-0.5), 1e-7);
  EXPECT_TRUE(polynomial_part(make_zero(2), 2, sphere_grid(2, 4), LineGrid()).is_zero());
}

TEST(SobolevSeminorm, Oracles) {
  // int |f'|^2 over R = sqrt(pi)/2
  EXPECT_NEAR(sobolev_seminorm(unit_gaussian(1), 1.0), 0.941396263776715, 1e-8);
  // s = 0 is the L2 norm: int exp(-|x|^2) over R^2 = pi
  EXPECT_NEAR(sobolev_seminorm(unit_gaussian(2), 0.0), std::sqrt(kPi), 1e-8);
  // int |grad f|^2 over R^2 = pi
  EXPECT_NEAR(sobolev_seminorm(unit_gaussian(2), 1.0), std::sqrt(kPi), 1e-8);
  // (1/2pi) int |xi|^3 2 pi e^{-xi^2} = 1
  EXPECT_NEAR(sobolev_seminorm(unit_gaussian(1), 1.5), 1.0, 1e-8);
}

TEST(SobolevSeminorm, HomogeneityAndZero) {
  const auto f = unit_gaussian(3);
  const double a = sobolev_seminorm(f, 2.0);
  EXPECT_NEAR(sobolev_seminorm(-3.0 * f, 2.0), 3.0 * a, 1e-10 * a);
  EXPECT_EQ(sobolev_seminorm(make_zero(2), 1.0), 0.0);
}

}  // namespace
}  // namespace ridgelab
