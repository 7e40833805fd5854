#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ridgelab/polynomial.hpp"
#include "ridgelab/ridge_density.hpp"

namespace ridgelab {

/// sigma_k(t): 0 for t <= 0, t^k for t > 0 (sigma_0 is the Heaviside step with sigma_0(0) = 0).
double activation(int k, double t);

/// a * sigma_k(omega.x - b); b is the knot.
struct Neuron {
  double weight = 0.0;
  Vec direction;
  double knot = 0.0;
};

/// poly(x) + sum_i a_i sigma_k(omega_i.x - b_i).
class ShallowNetwork {
 public:
  ShallowNetwork(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  std::size_t width() const { return neurons_.size(); }
  const std::vector<Neuron>& neurons() const { return neurons_; }
  const std::optional<PolynomialPart>& poly() const { return poly_; }

  /// Validates |omega| = 1 and b in [-1, 1] (both to 1e-12).
  void add(const Neuron& neuron);
  void set_poly(PolynomialPart p);
  void clear_poly() { poly_.reset(); }

  double operator()(const Vec& x) const;
  /// sum |a_i| over the neurons (the polynomial part is not included).
  double l1_mass() const;

 private:
  int dim_;
  int degree_;
  std::vector<Neuron> neurons_;
  std::optional<PolynomialPart> poly_;
};

double evaluate(const ShallowNetwork& net, const Vec& x);

/// Trapezoid discretization of (1/k!) int int F^(k+1)(b) sigma_k(omega.x - b) db d omega
/// on the knots b_m in [-1, 1] taken every `knot_stride` grid nodes; poly attached.
ShallowNetwork from_quadrature(const ProfileBank& bank, int knot_stride = 1);
ShallowNetwork from_quadrature(const TargetFunction& f, int k, const SphereGrid& sphere, const LineGrid& grid);

/// n i.i.d. neurons drawn from |F^(k+1)| / (k! V) with weights sign(F) V / n; poly attached.
ShallowNetwork from_sampling(const ProfileBank& bank, std::size_t n, std::uint64_t seed);
ShallowNetwork from_sampling(const TargetFunction& f, int k, std::size_t n, std::uint64_t seed,
                             const SphereGrid& sphere, const LineGrid& grid);

/// Exact ReLU^k representation of a polynomial of degree <= k, built from
/// (omega.x - b)^k = sigma_k(omega.x - b) + (-1)^k sigma_k(-omega.x + b).
ShallowNetwork poly_to_ridge(const PolynomialPart& p, int k);

/// Copy of `net` with its polynomial part replaced by its ridge lift.
ShallowNetwork lift_polynomial(const ShallowNetwork& net);

void serialize(std::ostream& os, const ShallowNetwork& net);
std::string serialize(const ShallowNetwork& net);
ShallowNetwork deserialize(std::istream& is);
ShallowNetwork deserialize(const std::string& text);

}  // namespace ridgelab
