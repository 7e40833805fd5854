// ridgelab command-line driver: run experiments, evaluate saved networks.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ridgelab/config.hpp"
#include "ridgelab/experiment.hpp"
#include "ridgelab/format.hpp"
#include "ridgelab/log.hpp"
#include "ridgelab/network.hpp"
#include "ridgelab/rng.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kToleranceFailure = 3;
constexpr int kIoError = 4;

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ridgelab::IoError("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  if (is.bad()) throw ridgelab::IoError("failed reading " + path);
  return ss.str();
}

int cmd_run(const std::string& config_path, const std::string& out_dir, const std::uint64_t* seed, int threads) {
  ridgelab::ExperimentConfig config = ridgelab::parse_config(read_file(config_path));
  if (seed) config.seed = *seed;
  if (threads > 0) ridgelab::set_thread_count(threads);
  const ridgelab::ExperimentReport report = ridgelab::run_and_write(config, out_dir);
  std::cout << report.text();
  if (report.checked && !report.passed) {
    std::cerr << "ridgelab: check failed: " << report.verdict << '\n';
    return kToleranceFailure;
  }
  return kOk;
}

int cmd_eval(const std::string& network_path, const std::string& points_path) {
  const ridgelab::ShallowNetwork net = ridgelab::deserialize(read_file(network_path));
  std::istringstream points(read_file(points_path));
  std::string line;
  int line_no = 0;
  for (int i = 0; i < net.dim(); ++i) std::cout << 'x' << (i + 1) << ',';
  std::cout << "value\n";
  while (std::getline(points, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> coords;
    std::stringstream fields(line);
    std::string field;
    bool numeric = true;
    while (std::getline(fields, field, ',')) {
      const auto v = ridgelab::parse_double(field);
      if (!v) {
        numeric = false;
        break;
      }
      coords.push_back(*v);
    }
    if (!numeric) {
      if (line_no == 1) continue;  // header row
      throw ridgelab::FormatError(points_path + " line " + std::to_string(line_no) + ": not a numeric row");
    }
    if (static_cast<int>(coords.size()) != net.dim()) {
      throw ridgelab::FormatError(points_path + " line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(net.dim()) + " coordinates");
    }
    ridgelab::Vec x(net.dim());
    for (int i = 0; i < net.dim(); ++i) x[i] = coords[i];
    for (double c : coords) std::cout << ridgelab::format_double(c) << ',';
    std::cout << ridgelab::format_double(net(x)) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ridgelab: ridge-function approximation experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  std::uint64_t seed = 0;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Experiment config (key = value lines)")->required();
  run->add_option("--out", out_dir, "Output directory for the CSV and report");
  auto* seed_opt = run->add_option("--seed", seed, "Master seed (overrides the config)");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string network_path, points_path;
  auto* eval = app.add_subcommand("eval", "Evaluate a saved network at points from a CSV file");
  eval->add_option("network", network_path, "Network file")->required();
  eval->add_option("--points", points_path, "CSV with one point per row")->required();

  app.add_subcommand("version", "Print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, *seed_opt ? &seed : nullptr, threads);
    if (*eval) return cmd_eval(network_path, points_path);
    std::cout << "ridgelab " << ridgelab::kVersion << '\n';
    return kOk;
  } catch (const ridgelab::SpecError& e) {
    std::cerr << "ridgelab: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ridgelab::NumericalError& e) {
    std::cerr << "ridgelab: numerical error: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const ridgelab::IoError& e) {
    std::cerr << "ridgelab: I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const ridgelab::FormatError& e) {
    std::cerr << "ridgelab: format error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "ridgelab: " << e.what() << '\n';
    return kIoError;
  }
}
