#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ridgelab/log.hpp"
#include "ridgelab/metrics.hpp"
#include "ridgelab/quadrature.hpp"

namespace ridgelab {

/// Invalid or incomplete experiment configuration.
class ConfigError : public SpecError {
 public:
  using SpecError::SpecError;
};

enum class ExperimentKind { radon_check, inversion_check, variation_bound, peano_reconstruct, rate_sweep, mollify_sweep };
enum class TargetKind { gaussian, cusp, zero };
enum class Constructor { sampling, quadrature };
enum class Schedule { none, epsilon };
enum class PolyMode { exact, lifted };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::radon_check;

  TargetKind target = TargetKind::gaussian;
  int d = 0;
  double sigma2 = 1.0;
  double amplitude = 1.0;
  std::vector<double> center;  ///< empty means the origin
  double gamma = 1.5;

  int k = 1;
  int s = 2;
  Norm p = Norm::l2;

  int sphere_level = 8;
  int line_n = LineGrid::kDefaultCount;
  double line_l = LineGrid::kDefaultHalfWidth;

  std::vector<double> widths;
  std::vector<double> epsilons;
  int seeds = 5;
  std::uint64_t seed = 0;
  Constructor constructor = Constructor::sampling;
  Schedule schedule = Schedule::none;
  PolyMode poly = PolyMode::exact;

  std::size_t points = 1u << 16;
  SamplerMode sampler = SamplerMode::lattice;
  int samples = 0;  ///< check points; 0 selects the kind's default

  int radial_nodes = 24;
  int mollifier_level = 5;

  std::optional<double> tolerance;
  std::optional<double> slope_max;
  std::optional<double> slope_min;
  std::optional<double> monotone_slack;

  std::string output;  ///< CSV file name; empty selects "<kind>.csv"
  std::string save_network;  ///< network file name (peano-reconstruct); empty writes none

  std::set<std::string> present;  ///< keys given explicitly
};

/// Parses `key = value` lines (`#` starts a comment) and validates the result.
ExperimentConfig parse_config(const std::string& text);

/// Kind-specific checks; throws ConfigError.
void validate(const ExperimentConfig& config);

std::string to_string(ExperimentKind kind);

/// Canonical `key = value` rendering of every field, used as the report's config echo.
std::string echo_config(const ExperimentConfig& config);

}  // namespace ridgelab
