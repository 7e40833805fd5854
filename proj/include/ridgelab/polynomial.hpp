#pragma once

#include <array>
#include <map>
#include <vector>

#include "ridgelab/vec.hpp"

namespace ridgelab {

using Exponents = std::array<int, kMaxDim>;

/// Polynomial on R^d in the monomial basis, kept in lexicographic exponent order.
class PolynomialPart {
 public:
  explicit PolynomialPart(int dim = 1);

  int dim() const { return dim_; }
  /// Largest total degree carrying a nonzero coefficient (-1 for the zero polynomial).
  int degree() const;
  bool is_zero() const { return degree() < 0; }

  void add(const Exponents& exponents, double coefficient);
  /// Adds coefficient * (omega.x + shift)^power expanded into monomials.
  void add_ridge_power(const Vec& omega, double shift, int power, double coefficient);

  double operator()(const Vec& x) const;
  const std::map<Exponents, double>& terms() const { return terms_; }

 private:
  int dim_;
  std::map<Exponents, double> terms_;
};

/// All exponent vectors in `dim` variables of total degree <= degree, graded order.
std::vector<Exponents> monomials_up_to(int dim, int degree);

}  // namespace ridgelab
