#include "ridgelab/polynomial.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "ridgelab/log.hpp"

namespace ridgelab {

PolynomialPart::PolynomialPart(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw SpecError("PolynomialPart: unsupported dimension");
}

int PolynomialPart::degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    if (c == 0.0) continue;
    int total = 0;
    for (int i = 0; i < dim_; ++i) total += e[i];
    deg = std::max(deg, total);
  }
  return deg;
}

void PolynomialPart::add(const Exponents& exponents, double coefficient) {
  for (int i = dim_; i < kMaxDim; ++i)
    if (exponents[i] != 0) throw SpecError("PolynomialPart: exponent beyond the dimension");
  terms_[exponents] += coefficient;
}

void PolynomialPart::add_ridge_power(const Vec& omega, double shift, int power, double coefficient) {
  if (omega.dim() != dim_) throw SpecError("PolynomialPart: direction dimension mismatch");
  // Multinomial expansion of (omega.x + shift)^power.
  std::vector<double> factorial(power + 1, 1.0);
  for (int i = 1; i <= power; ++i) factorial[i] = factorial[i - 1] * i;
  Exponents e{};
  std::function<void(int, int, double)> recurse = [&](int axis, int remaining, double partial) {
    if (axis == dim_) {
      add(e, coefficient * factorial[power] / factorial[remaining] * partial * std::pow(shift, remaining));
      return;
    }
    for (int a = 0; a <= remaining; ++a) {
      e[axis] = a;
      recurse(axis + 1, remaining - a, partial * std::pow(omega[axis], a) / factorial[a]);
    }
    e[axis] = 0;
  };
  recurse(0, power, 1.0);
}

double PolynomialPart::operator()(const Vec& x) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (int i = 0; i < dim_; ++i) {
      for (int p = 0; p < e[i]; ++p) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

std::vector<Exponents> monomials_up_to(int dim, int degree) {
  std::vector<Exponents> out;
  Exponents e{};
  std::function<void(int, int)> recurse = [&](int axis, int remaining) {
    if (axis == dim - 1) {
      e[axis] = remaining;
      out.push_back(e);
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      e[axis] = a;
      recurse(axis + 1, remaining - a);
    }
  };
  for (int total = 0; total <= degree; ++total) recurse(0, total);
  return out;
}

}  // namespace ridgelab
