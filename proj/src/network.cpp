#include "ridgelab/network.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "ridgelab/format.hpp"
#include "ridgelab/log.hpp"
#include "ridgelab/rng.hpp"

namespace ridgelab {

namespace {

constexpr double kUnitTolerance = 1e-12;

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double int_power(double t, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= t;
  return r;
}

// Uniform double in [0, 1) from the top 53 bits.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double activation(int k, double t) {
  if (k < 0) throw SpecError("activation: k must be >= 0");
  return t > 0.0 ? int_power(t, k) : 0.0;
}

ShallowNetwork::ShallowNetwork(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1 || dim > kMaxDim) throw SpecError("ShallowNetwork: unsupported dimension");
  if (degree < 0) throw SpecError("ShallowNetwork: degree must be >= 0");
}

void ShallowNetwork::add(const Neuron& neuron) {
  if (neuron.direction.dim() != dim_) throw SpecError("ShallowNetwork: neuron dimension mismatch");
  if (std::abs(norm(neuron.direction) - 1.0) > kUnitTolerance) throw SpecError("ShallowNetwork: direction not unit");
  if (!(std::abs(neuron.knot) <= 1.0 + kUnitTolerance)) throw SpecError("ShallowNetwork: knot outside [-1, 1]");
  if (!std::isfinite(neuron.weight)) throw SpecError("ShallowNetwork: non-finite weight");
  neurons_.push_back(neuron);
}

void ShallowNetwork::set_poly(PolynomialPart p) {
  if (p.dim() != dim_) throw SpecError("ShallowNetwork: polynomial dimension mismatch");
  if (p.degree() > degree_) throw SpecError("ShallowNetwork: polynomial degree exceeds k");
  poly_ = std::move(p);
}

double ShallowNetwork::operator()(const Vec& x) const {
  double sum = poly_ ? (*poly_)(x) : 0.0;
  for (const Neuron& n : neurons_) {
    const double t = dot(n.direction, x) - n.knot;
    if (t > 0.0) sum += n.weight * int_power(t, degree_);
  }
  return sum;
}

double ShallowNetwork::l1_mass() const {
  double sum = 0.0;
  for (const Neuron& n : neurons_) sum += std::abs(n.weight);
  return sum;
}

double evaluate(const ShallowNetwork& net, const Vec& x) { return net(x); }

ShallowNetwork from_quadrature(const ProfileBank& bank, int knot_stride) {
  if (knot_stride < 1) throw SpecError("from_quadrature: knot stride must be >= 1");
  const auto [first, last] = bank.unit_range();
  if ((last - first) % knot_stride != 0) throw SpecError("from_quadrature: stride must divide the knot range");
  const int k = bank.degree();
  const double h = bank.grid().spacing() * knot_stride;
  const double scale = h / factorial(k);
  ShallowNetwork net(bank.dim(), k);
  for (std::size_t j = 0; j < bank.sphere().size(); ++j) {
    const Vec& omega = bank.sphere().nodes[j];
    const double w = bank.sphere().weights[j] * scale;
    const auto& v = bank.density(j).values;
    for (int m = first; m <= last; m += knot_stride) {
      const double end = (m == first || m == last) ? 0.5 : 1.0;
      net.add(Neuron{w * end * v[m], omega, bank.grid().node(m)});
    }
  }
  net.set_poly(polynomial_part(bank));
  return net;
}

ShallowNetwork from_quadrature(const TargetFunction& f, int k, const SphereGrid& sphere, const LineGrid& grid) {
  return from_quadrature(ProfileBank(f, k, sphere, grid));
}

ShallowNetwork from_sampling(const ProfileBank& bank, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw SpecError("from_sampling: width must be >= 1");
  const auto [first, last] = bank.unit_range();
  const int cells = last - first;
  const double h = bank.grid().spacing();
  const std::size_t dirs = bank.sphere().size();

  // Cumulative trapezoid masses per direction, then across directions.
  std::vector<std::vector<double>> cell_cdf(dirs, std::vector<double>(cells));
  std::vector<double> dir_cdf(dirs);
  double total = 0.0;
  for (std::size_t j = 0; j < dirs; ++j) {
    const auto& v = bank.density(j).values;
    double acc = 0.0;
    for (int c = 0; c < cells; ++c) {
      acc += 0.5 * h * (std::abs(v[first + c]) + std::abs(v[first + c + 1]));
      cell_cdf[j][c] = acc;
    }
    total += bank.sphere().weights[j] * acc;
    dir_cdf[j] = total;
  }
  const double variation = total / factorial(bank.degree());
  if (!(variation > 0.0)) throw SpecError("from_sampling: variation bound is zero");

  std::mt19937_64 rng(derive_seed(seed, "from_sampling"));
  ShallowNetwork net(bank.dim(), bank.degree());
  const double magnitude = variation / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u_dir = unit_uniform(rng) * total;
    std::size_t j = std::upper_bound(dir_cdf.begin(), dir_cdf.end(), u_dir) - dir_cdf.begin();
    j = std::min(j, dirs - 1);
    while (j > 0 && bank.sphere().weights[j] * cell_cdf[j].back() == 0.0) --j;

    const auto& cdf = cell_cdf[j];
    const double u_cell = unit_uniform(rng) * cdf.back();
    int c = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u_cell) - cdf.begin());
    c = std::min(c, cells - 1);
    while (c > 0 && cdf[c] == cdf[c - 1]) --c;

    // Inside the cell the density is linear between |F| at the two nodes.
    const auto& v = bank.density(j).values;
    const double f0 = v[first + c];
    const double f1 = v[first + c + 1];
    const double y0 = std::abs(f0);
    const double y1 = std::abs(f1);
    const double u = unit_uniform(rng);
    const double denom = y0 + std::sqrt(y0 * y0 + u * (y1 * y1 - y0 * y0));
    const double frac = denom > 0.0 ? std::clamp(u * (y0 + y1) / denom, 0.0, 1.0) : u;
    const double knot = bank.grid().node(first + c) + frac * h;
    double value = f0 + frac * (f1 - f0);
    if (value == 0.0) value = y1 >= y0 ? f1 : f0;
    net.add(Neuron{value >= 0.0 ? magnitude : -magnitude, bank.sphere().nodes[j], std::clamp(knot, -1.0, 1.0)});
  }
  net.set_poly(polynomial_part(bank));
  return net;
}

ShallowNetwork from_sampling(const TargetFunction& f, int k, std::size_t n, std::uint64_t seed,
                             const SphereGrid& sphere, const LineGrid& grid) {
  return from_sampling(ProfileBank(f, k, sphere, grid), n, seed);
}

ShallowNetwork poly_to_ridge(const PolynomialPart& p, int k) {
  if (k < 0) throw SpecError("poly_to_ridge: k must be >= 0");
  if (p.degree() > k) throw SpecError("poly_to_ridge: polynomial degree exceeds k");
  const int d = p.dim();
  ShallowNetwork net(d, k);
  if (p.is_zero()) return net;

  // Candidate ridge powers (omega.x - b)^k: enough directions for degree-k
  // homogeneous polynomials times k+1 distinct knots in [-1, 1].
  std::vector<Vec> directions;
  if (d == 1) {
    directions.push_back(Vec::unit(1, 0));
  } else if (d == 2) {
    for (int i = 0; i <= k; ++i) {
      const double theta = std::numbers::pi * i / (k + 1);
      Vec w(2);
      w[0] = std::cos(theta);
      w[1] = std::sin(theta);
      directions.push_back(w);
    }
  } else {
    double count = 1.0;
    for (int i = 1; i < d; ++i) count = count * (k + i) / i;
    directions = sample_directions(d, static_cast<std::size_t>(2.0 * count), 0x5eedULL);
  }
  std::vector<double> knots;
  if (k == 0) {
    knots.push_back(-1.0);
  } else {
    for (int i = 0; i <= k; ++i) knots.push_back(-1.0 + 2.0 * i / k);
  }

  const std::vector<Exponents> basis = monomials_up_to(d, k);
  const std::size_t cols = directions.size() * knots.size();
  Eigen::MatrixXd a(basis.size(), cols);
  Eigen::VectorXd rhs(basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto it = p.terms().find(basis[r]);
    rhs(r) = it == p.terms().end() ? 0.0 : it->second;
  }
  for (std::size_t i = 0; i < directions.size(); ++i) {
    for (std::size_t q = 0; q < knots.size(); ++q) {
      PolynomialPart column(d);
      column.add_ridge_power(directions[i], -knots[q], k, 1.0);
      for (std::size_t r = 0; r < basis.size(); ++r) {
        const auto it = column.terms().find(basis[r]);
        a(r, i * knots.size() + q) = it == column.terms().end() ? 0.0 : it->second;
      }
    }
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::VectorXd coef = qr.solve(rhs);
  const double residual = (a * coef - rhs).norm();
  if (residual > 1e-12 * std::max(1.0, rhs.norm())) {
    throw NumericalError("poly_to_ridge: lift residual " + std::to_string(residual));
  }

  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    for (std::size_t q = 0; q < knots.size(); ++q) {
      const double c = coef(i * knots.size() + q);
      if (c == 0.0) continue;
      net.add(Neuron{c, directions[i], knots[q]});
      net.add(Neuron{sign * c, -1.0 * directions[i], -knots[q]});
    }
  }
  return net;
}

ShallowNetwork lift_polynomial(const ShallowNetwork& net) {
  ShallowNetwork out(net.dim(), net.degree());
  for (const Neuron& n : net.neurons()) out.add(n);
  if (net.poly()) {
    const ShallowNetwork lift = poly_to_ridge(*net.poly(), net.degree());
    for (const Neuron& n : lift.neurons()) out.add(n);
  }
  return out;
}

void serialize(std::ostream& os, const ShallowNetwork& net) {
  os << "RIDGENET v1 d=" << net.dim() << " k=" << net.degree() << " n=" << net.width() << '\n';
  for (const Neuron& n : net.neurons()) {
    os << format_double(n.weight);
    for (int i = 0; i < net.dim(); ++i) os << ' ' << format_double(n.direction[i]);
    os << ' ' << format_double(n.knot) << '\n';
  }
  if (net.poly()) {
    os << "POLY " << net.poly()->terms().size() << '\n';
    for (const auto& [e, c] : net.poly()->terms()) {
      for (int i = 0; i < net.dim(); ++i) os << e[i] << ' ';
      os << format_double(c) << '\n';
    }
  }
}

std::string serialize(const ShallowNetwork& net) {
  std::ostringstream os;
  serialize(os, net);
  return os.str();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void malformed(int line_no, const std::string& what) {
  throw FormatError("network file line " + std::to_string(line_no) + ": " + what);
}

int parse_header_int(const std::string& field, const std::string& key, int line_no) {
  if (field.rfind(key + "=", 0) != 0) malformed(line_no, "expected " + key + "=<int>");
  try {
    std::size_t used = 0;
    const long v = std::stol(field.substr(key.size() + 1), &used);
    if (used != field.size() - key.size() - 1 || v < 0) throw std::invalid_argument(field);
    return static_cast<int>(v);
  } catch (const std::logic_error&) {
    malformed(line_no, "bad value in " + field);
  }
}

double field_double(const std::string& s, int line_no) {
  const auto v = parse_double(s);
  if (!v) malformed(line_no, "not a number: " + s);
  return *v;
}

}  // namespace

ShallowNetwork deserialize(std::istream& is) {
  std::string line;
  int line_no = 1;
  if (!std::getline(is, line)) throw FormatError("network file: empty input");
  const auto header = split_fields(line);
  if (header.empty() || header[0] != "RIDGENET") throw FormatError("network file: missing RIDGENET magic");
  if (header.size() < 2 || header[1] != "v1") {
    throw FormatError("network file: unsupported version " + (header.size() > 1 ? header[1] : std::string("?")));
  }
  if (header.size() != 5) malformed(line_no, "header must be RIDGENET v1 d=<d> k=<k> n=<n>");
  const int d = parse_header_int(header[2], "d", line_no);
  const int k = parse_header_int(header[3], "k", line_no);
  const int n = parse_header_int(header[4], "n", line_no);
  if (d < 1 || d > kMaxDim) malformed(line_no, "unsupported dimension");

  ShallowNetwork net(d, k);
  for (int i = 0; i < n; ++i) {
    ++line_no;
    if (!std::getline(is, line)) malformed(line_no, "expected " + std::to_string(n) + " neurons");
    const auto f = split_fields(line);
    if (static_cast<int>(f.size()) != d + 2) malformed(line_no, "neuron needs " + std::to_string(d + 2) + " fields");
    Neuron neuron{field_double(f[0], line_no), Vec(d), field_double(f[d + 1], line_no)};
    for (int a = 0; a < d; ++a) neuron.direction[a] = field_double(f[a + 1], line_no);
    try {
      net.add(neuron);
    } catch (const SpecError& e) {
      malformed(line_no, e.what());
    }
  }
  while (std::getline(is, line)) {
    ++line_no;
    const auto f = split_fields(line);
    if (f.empty()) continue;
    if (f[0] != "POLY" || f.size() != 2 || net.poly()) malformed(line_no, "unexpected record");
    const int terms = parse_header_int("m=" + f[1], "m", line_no);
    PolynomialPart p(d);
    for (int t = 0; t < terms; ++t) {
      ++line_no;
      if (!std::getline(is, line)) malformed(line_no, "truncated POLY block");
      const auto g = split_fields(line);
      if (static_cast<int>(g.size()) != d + 1) malformed(line_no, "monomial needs " + std::to_string(d + 1) + " fields");
      Exponents e{};
      for (int a = 0; a < d; ++a) e[a] = parse_header_int("e=" + g[a], "e", line_no);
      p.add(e, field_double(g[d], line_no));
    }
    try {
      net.set_poly(std::move(p));
    } catch (const SpecError& e) {
      malformed(line_no, e.what());
    }
  }
  return net;
}

ShallowNetwork deserialize(const std::string& text) {
  std::istringstream is(text);
  return deserialize(is);
}

}  // namespace ridgelab
