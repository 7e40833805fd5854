#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ridgelab/config.hpp"
#include "ridgelab/metrics.hpp"
#include "ridgelab/targets.hpp"

namespace ridgelab {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentReport {
  std::string kind;
  std::string config_echo;
  std::string table;  ///< CSV body (header + rows), no footer
  std::vector<std::pair<std::string, double>> summary;
  std::optional<RateFit> fit;
  bool checked = false;  ///< whether the run asserted a tolerance
  bool passed = true;
  std::string verdict;  ///< human-readable reason when a check fails
  std::optional<std::string> network;  ///< serialized network when `save_network` is set
  double wall_seconds = 0.0;
  std::string version = kVersion;

  /// Table followed by `# key=value` footer lines (deterministic).
  std::string csv() const;
  /// Human-readable report including the wall-clock time.
  std::string text() const;
};

/// Target described by the config's target fields.
TargetFunction make_target(const ExperimentConfig& config);

/// Runs the experiment in memory.
ExperimentReport run(const ExperimentConfig& config);

/// Runs and writes `<output>`, `<output stem>.report.txt` and, when set,
/// `<save_network>` into `out_dir`.
/// Throws IoError when the files cannot be written.
ExperimentReport run_and_write(const ExperimentConfig& config, const std::string& out_dir);

}  // namespace ridgelab
