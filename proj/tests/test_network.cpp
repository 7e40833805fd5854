#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ridgelab/log.hpp"
#include "ridgelab/network.hpp"
#include "ridgelab/quadrature.hpp"
#include "ridgelab/ridge_density.hpp"
#include "ridgelab/targets.hpp"

namespace ridgelab {
namespace {

TargetFunction unit_gaussian(int d) { return make_gaussian({Vec(d), 1.0, 1.0}); }

PolynomialPart random_polynomial(int dim, int degree, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  PolynomialPart p(dim);
  for (const auto& e : monomials_up_to(dim, degree)) p.add(e, coef(gen));
  return p;
}

TEST(Activation, Values) {
  EXPECT_DOUBLE_EQ(activation(2, 0.5), 0.25);
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(activation(k, -1.0), 0.0);
  EXPECT_EQ(activation(0, 0.0), 0.0);
  EXPECT_EQ(activation(0, 1e-300), 1.0);
  EXPECT_DOUBLE_EQ(activation(1, -0.3) + activation(1, 0.3), 0.3);
}

TEST(ShallowNetwork, EvaluateExamples) {
  ShallowNetwork empty(2, 1);
  EXPECT_EQ(evaluate(empty, Vec{0.4, -0.2}), 0.0);

  ShallowNetwork one(2, 2);
  one.add({1.0, Vec{1.0, 0.0}, 0.0});
  EXPECT_DOUBLE_EQ(evaluate(one, Vec{0.5, 0.0}), 0.25);

  ShallowNetwork abs(2, 1);
  abs.add({1.0, Vec{1.0, 0.0}, 0.0});
  abs.add({1.0, Vec{-1.0, 0.0}, 0.0});
  EXPECT_DOUBLE_EQ(evaluate(abs, Vec{-0.3, 0.0}), 0.3);
  EXPECT_DOUBLE_EQ(abs.l1_mass(), 2.0);
}

TEST(ShallowNetwork, RejectsInvalidNeurons) {
  ShallowNetwork net(2, 1);
  EXPECT_THROW(net.add({1.0, Vec{1.0, 1.0}, 0.0}), SpecError);
  EXPECT_THROW(net.add({1.0, Vec{1.0, 0.0}, 1.5}), SpecError);
  EXPECT_THROW(net.add({1.0, Vec{1.0, 0.0, 0.0}, 0.0}), SpecError);
  EXPECT_THROW(net.set_poly(PolynomialPart(3)), SpecError);
}

TEST(FromQuadrature, ZeroTarget) {
  const auto net = from_quadrature(make_zero(2), 1, sphere_grid(2, 3), LineGrid(4.0, 256));
  EXPECT_GT(net.width(), 0u);
  for (const auto& n : net.neurons()) EXPECT_EQ(n.weight, 0.0);
  EXPECT_EQ(net(Vec{0.2, 0.3}), 0.0);
}

TEST(FromQuadrature, OneDimensionalPeano) {
  const auto f = unit_gaussian(1);
  const auto net = from_quadrature(f, 1, sphere_grid(1, 0), LineGrid());
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Vec x{-1.0 + (i + 0.5) / 100.0};
    worst = std::max(worst, std::abs(net(x) - f(x)));
  }
  EXPECT_LE(worst, 1e-3);
}

TEST(FromQuadrature, TrapezoidOrderInKnotSpacing) {
  // coarser knot sets on one bank: the error shrinks like h^2
  const auto f = unit_gaussian(1);
  const ProfileBank bank(f, 1, sphere_grid(1, 0), LineGrid());
  std::vector<double> err;
  for (int stride : {64, 32, 16}) {
    const auto net = from_quadrature(bank, stride);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Vec x{-1.0 + (i + 0.5) / 100.0};
      worst = std::max(worst, std::abs(net(x) - f(x)));
    }
    err.push_back(worst);
  }
  EXPECT_GE(std::log2(err[0] / err[1]), 1.8);
  EXPECT_GE(std::log2(err[1] / err[2]), 1.8);
}

TEST(FromSampling, MassEqualsVariation) {
  const auto f = unit_gaussian(2);
  const ProfileBank bank(f, 1, sphere_grid(2, 5), LineGrid());
  const double v = variation_upper_bound(bank);
  for (std::size_t n : {1u, 7u, 256u}) {
    const auto net = from_sampling(bank, n, 17);
    ASSERT_EQ(net.width(), n);
    EXPECT_NEAR(net.l1_mass(), v, 1e-12 * v);
    for (const auto& neuron : net.neurons()) EXPECT_NEAR(std::abs(neuron.weight), v / n, 1e-15 * v);
    ASSERT_TRUE(net.poly().has_value());
  }
}

TEST(FromSampling, DeterministicPerSeed) {
  const ProfileBank bank(unit_gaussian(2), 1, sphere_grid(2, 4), LineGrid());
  EXPECT_EQ(serialize(from_sampling(bank, 40, 5)), serialize(from_sampling(bank, 40, 5)));
  EXPECT_NE(serialize(from_sampling(bank, 40, 5)), serialize(from_sampling(bank, 40, 6)));
}

TEST(FromSampling, UnbiasedAgainstQuadrature) {
  const ProfileBank bank(unit_gaussian(2), 1, sphere_grid(2, 5), LineGrid());
  const Vec x{0.3, -0.4};
  const double target = from_quadrature(bank)(x);
  const int seeds = 100;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const double v = from_sampling(bank, 64, 1000 + s)(x);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / seeds;
  const double se = std::sqrt((sum2 / seeds - mean * mean) / (seeds - 1));
  EXPECT_LE(std::abs(mean - target), 3.0 * se);
}

TEST(FromSampling, RejectsDegenerateInput) {
  const ProfileBank zero(make_zero(2), 1, sphere_grid(2, 3), LineGrid(4.0, 256));
  EXPECT_THROW(from_sampling(zero, 10, 1), SpecError);
  const ProfileBank bank(unit_gaussian(2), 1, sphere_grid(2, 3), LineGrid(4.0, 256));
  EXPECT_THROW(from_sampling(bank, 0, 1), SpecError);
}

TEST(PolyToRidge, LiftIdentityExamples) {
  PolynomialPart sq(1);
  sq.add({2}, 1.0);
  const auto net = poly_to_ridge(sq, 2);
  EXPECT_NEAR(net(Vec{-0.5}), 0.25, 1e-14);

  PolynomialPart c(2);
  c.add({0, 0}, 1.75);
  const auto steps = poly_to_ridge(c, 0);
  for (const Vec& x : {Vec{0.0, 0.0}, Vec{0.5, -0.6}, Vec{-0.99, 0.0}}) EXPECT_NEAR(steps(x), 1.75, 1e-14);
}

TEST(PolyToRidge, RandomPolynomialsOnBall) {
  const auto pts = ball_points({2, SamplerMode::random, 1000, 77});
  for (int k = 0; k <= 3; ++k) {
    const auto p = random_polynomial(2, k, 100 + k);
    const auto net = poly_to_ridge(p, k);
    EXPECT_FALSE(net.poly().has_value());
    double worst = 0.0;
    for (const auto& x : pts) worst = std::max(worst, std::abs(net(x) - p(x)));
    EXPECT_LE(worst, 1e-10) << "k=" << k;
  }
}

TEST(PolyToRidge, HigherDimensionsAndLowerDegree) {
  const auto pts = ball_points({3, SamplerMode::lattice, 300, 1});
  const auto p = random_polynomial(3, 1, 9);
  const auto net = poly_to_ridge(p, 2);
  for (const auto& x : pts) EXPECT_NEAR(net(x), p(x), 1e-10);
}

TEST(PolyToRidge, RejectsExcessDegree) { EXPECT_THROW(poly_to_ridge(random_polynomial(2, 3, 1), 2), SpecError); }

TEST(LiftPolynomial, PreservesValues) {
  const auto net = from_quadrature(unit_gaussian(2), 2, sphere_grid(2, 5), LineGrid(4.0, 512));
  const auto lifted = lift_polynomial(net);
  EXPECT_FALSE(lifted.poly().has_value());
  EXPECT_GT(lifted.width(), net.width());
  for (const Vec& x : {Vec{0.0, 0.0}, Vec{0.4, 0.5}}) EXPECT_NEAR(lifted(x), net(x), 1e-10);
}

TEST(Serialization, RoundTrip) {
  auto net = from_sampling(ProfileBank(unit_gaussian(2), 1, sphere_grid(2, 4), LineGrid()), 30, 3);
  const auto text = serialize(net);
  const auto back = deserialize(text);
  ASSERT_EQ(back.width(), net.width());
  for (std::size_t i = 0; i < net.width(); ++i) {
    EXPECT_EQ(back.neurons()[i].weight, net.neurons()[i].weight);
    EXPECT_EQ(back.neurons()[i].direction, net.neurons()[i].direction);
    EXPECT_EQ(back.neurons()[i].knot, net.neurons()[i].knot);
  }
  EXPECT_EQ(back(Vec{0.1, 0.2}), net(Vec{0.1, 0.2}));
  EXPECT_EQ(serialize(back), text);
}

TEST(Serialization, EmptyNetwork) {
  const ShallowNetwork empty(3, 0);
  const auto back = deserialize(serialize(empty));
  EXPECT_EQ(back.dim(), 3);
  EXPECT_EQ(back.degree(), 0);
  EXPECT_EQ(back.width(), 0u);
  EXPECT_FALSE(back.poly().has_value());
}

TEST(Serialization, RejectsMalformedInput) {
  EXPECT_THROW(deserialize("NOTANET v1 d=2 k=1 n=0\n"), FormatError);
  EXPECT_THROW(deserialize("RIDGENET v9 d=2 k=1 n=0\n"), FormatError);
  EXPECT_THROW(deserialize("RIDGENET v1 d=2 k=1 n=1\n1 0.5\n"), FormatError);
  EXPECT_THROW(deserialize(""), FormatError);
}

TEST(Polynomial, RidgePowerExpansion) {
  PolynomialPart p(2);
  const Vec w{0.6, 0.8};
  p.add_ridge_power(w, 0.5, 3, 2.0);
  EXPECT_EQ(p.degree(), 3);
  const Vec x{0.3, -0.7};
  EXPECT_NEAR(p(x), 2.0 * std::pow(dot(w, x) + 0.5, 3), 1e-14);
  EXPECT_EQ(monomials_up_to(2, 3).size(), 10u);
  EXPECT_EQ(monomials_up_to(3, 2).size(), 10u);
}

}  // namespace
}  // namespace ridgelab
