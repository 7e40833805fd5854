#include "ridgelab/config.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "ridgelab/format.hpp"

namespace ridgelab {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double as_double(const std::string& v, int line, const std::string& key) {
  const auto d = parse_double(v);
  if (!d || !std::isfinite(*d)) fail(line, key + ": expected a number, got '" + v + "'");
  return *d;
}

long long as_int(const std::string& v, int line, const std::string& key) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::logic_error&) {
    fail(line, key + ": expected an integer, got '" + v + "'");
  }
  if (used != v.size()) fail(line, key + ": expected an integer, got '" + v + "'");
  return out;
}

std::uint64_t as_u64(const std::string& v, int line, const std::string& key) {
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
    out = std::stoull(v, &used, 0);
  } catch (const std::logic_error&) {
    fail(line, key + ": expected an unsigned 64-bit integer, got '" + v + "'");
  }
  if (used != v.size()) fail(line, key + ": expected an unsigned 64-bit integer, got '" + v + "'");
  return out;
}

std::vector<double> as_list(const std::string& v, int line, const std::string& key) {
  std::string spaced = v;
  for (char& c : spaced)
    if (c == ',') c = ' ';
  std::istringstream is(spaced);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) out.push_back(as_double(tok, line, key));
  return out;
}

template <typename E>
E as_enum(const std::string& v, int line, const std::string& key, const std::map<std::string, E>& names) {
  const auto it = names.find(v);
  if (it != names.end()) return it->second;
  std::string allowed;
  for (const auto& [name, e] : names) allowed += (allowed.empty() ? "" : ", ") + name;
  fail(line, key + ": unknown value '" + v + "' (expected one of " + allowed + ")");
}

const std::map<std::string, ExperimentKind> kKinds{
    {"radon-check", ExperimentKind::radon_check},         {"inversion-check", ExperimentKind::inversion_check},
    {"variation-bound", ExperimentKind::variation_bound}, {"peano-reconstruct", ExperimentKind::peano_reconstruct},
    {"rate-sweep", ExperimentKind::rate_sweep},           {"mollify-sweep", ExperimentKind::mollify_sweep}};

using Setter = std::function<void(ExperimentConfig&, const std::string&, int)>;

std::map<std::string, Setter> setters() {
  std::map<std::string, Setter> m;
  m["kind"] = [](ExperimentConfig& c, const std::string& v, int l) { c.kind = as_enum(v, l, "kind", kKinds); };
  m["target"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.target = as_enum(v, l, "target",
                       std::map<std::string, TargetKind>{
                           {"gaussian", TargetKind::gaussian}, {"cusp", TargetKind::cusp}, {"zero", TargetKind::zero}});
  };
  m["d"] = [](ExperimentConfig& c, const std::string& v, int l) { c.d = static_cast<int>(as_int(v, l, "d")); };
  m["sigma2"] = [](ExperimentConfig& c, const std::string& v, int l) { c.sigma2 = as_double(v, l, "sigma2"); };
  m["amplitude"] = [](ExperimentConfig& c, const std::string& v, int l) { c.amplitude = as_double(v, l, "amplitude"); };
  m["center"] = [](ExperimentConfig& c, const std::string& v, int l) { c.center = as_list(v, l, "center"); };
  m["gamma"] = [](ExperimentConfig& c, const std::string& v, int l) { c.gamma = as_double(v, l, "gamma"); };
  m["k"] = [](ExperimentConfig& c, const std::string& v, int l) { c.k = static_cast<int>(as_int(v, l, "k")); };
  m["s"] = [](ExperimentConfig& c, const std::string& v, int l) { c.s = static_cast<int>(as_int(v, l, "s")); };
  m["p"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.p = as_enum(v, l, "p", std::map<std::string, Norm>{{"2", Norm::l2}, {"inf", Norm::linf}});
  };
  m["sphere_level"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.sphere_level = static_cast<int>(as_int(v, l, "sphere_level"));
  };
  m["line_n"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.line_n = static_cast<int>(as_int(v, l, "line_n"));
  };
  m["line_l"] = [](ExperimentConfig& c, const std::string& v, int l) { c.line_l = as_double(v, l, "line_l"); };
  m["widths"] = [](ExperimentConfig& c, const std::string& v, int l) { c.widths = as_list(v, l, "widths"); };
  m["epsilons"] = [](ExperimentConfig& c, const std::string& v, int l) { c.epsilons = as_list(v, l, "epsilons"); };
  m["seeds"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.seeds = static_cast<int>(as_int(v, l, "seeds"));
  };
  m["seed"] = [](ExperimentConfig& c, const std::string& v, int l) { c.seed = as_u64(v, l, "seed"); };
  m["constructor"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.constructor = as_enum(v, l, "constructor",
                            std::map<std::string, Constructor>{{"sampling", Constructor::sampling},
                                                               {"quadrature", Constructor::quadrature}});
  };
  m["schedule"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.schedule = as_enum(v, l, "schedule",
                         std::map<std::string, Schedule>{{"none", Schedule::none}, {"epsilon", Schedule::epsilon}});
  };
  m["poly"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.poly = as_enum(v, l, "poly",
                     std::map<std::string, PolyMode>{{"exact", PolyMode::exact}, {"lifted", PolyMode::lifted}});
  };
  m["points"] = [](ExperimentConfig& c, const std::string& v, int l) {
    const long long n = as_int(v, l, "points");
    if (n < 1) fail(l, "points must be >= 1");
    c.points = static_cast<std::size_t>(n);
  };
  m["sampler"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.sampler = as_enum(v, l, "sampler",
                        std::map<std::string, SamplerMode>{{"lattice", SamplerMode::lattice},
                                                           {"random", SamplerMode::random}});
  };
  m["samples"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.samples = static_cast<int>(as_int(v, l, "samples"));
  };
  m["radial_nodes"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.radial_nodes = static_cast<int>(as_int(v, l, "radial_nodes"));
  };
  m["mollifier_level"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.mollifier_level = static_cast<int>(as_int(v, l, "mollifier_level"));
  };
  m["tolerance"] = [](ExperimentConfig& c, const std::string& v, int l) { c.tolerance = as_double(v, l, "tolerance"); };
  m["slope_max"] = [](ExperimentConfig& c, const std::string& v, int l) { c.slope_max = as_double(v, l, "slope_max"); };
  m["slope_min"] = [](ExperimentConfig& c, const std::string& v, int l) { c.slope_min = as_double(v, l, "slope_min"); };
  m["monotone_slack"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.monotone_slack = as_double(v, l, "monotone_slack");
  };
  m["output"] = [](ExperimentConfig& c, const std::string& v, int l) {
    if (v.find('/') != std::string::npos) fail(l, "output must be a file name, not a path");
    c.output = v;
  };
  m["save_network"] = [](ExperimentConfig& c, const std::string& v, int l) {
    if (v.find('/') != std::string::npos) fail(l, "save_network must be a file name, not a path");
    c.save_network = v;
  };
  return m;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

bool strictly_monotone(const std::vector<double>& v) {
  if (strictly_increasing(v)) return true;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

void require(const ExperimentConfig& c, const std::string& key) {
  if (!c.present.count(key)) throw ConfigError("missing required key '" + key + "' for kind " + to_string(c.kind));
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [name, k] : kKinds)
    if (k == kind) return name;
  return "?";
}

ExperimentConfig parse_config(const std::string& text) {
  static const std::map<std::string, Setter> table = setters();
  ExperimentConfig config;
  std::map<std::string, int> seen;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) fail(line, "missing key before '='");
    const auto setter = table.find(key);
    if (setter == table.end()) fail(line, "unknown key '" + key + "'");
    if (auto prev = seen.find(key); prev != seen.end()) {
      fail(line, "duplicate key '" + key + "' (first set on line " + std::to_string(prev->second) + ")");
    }
    if (value.empty()) fail(line, "empty value for '" + key + "'");
    seen[key] = line;
    setter->second(config, value, line);
    config.present.insert(key);
  }
  if (!config.present.count("kind")) throw ConfigError("missing required key 'kind'");
  validate(config);
  return config;
}

void validate(const ExperimentConfig& c) {
  require(c, "d");
  if (c.d < 1) throw ConfigError("d must be >= 1, got " + std::to_string(c.d));
  if (c.d > 3) throw ConfigError("unsupported d = " + std::to_string(c.d) + " (sphere rules exist for d <= 3)");
  if (!c.center.empty() && static_cast<int>(c.center.size()) != c.d) {
    throw ConfigError("center has " + std::to_string(c.center.size()) + " entries, expected d = " + std::to_string(c.d));
  }
  if (!(c.sigma2 > 0.0)) throw ConfigError("sigma2 must be > 0");
  if (!(c.gamma > 0.0)) throw ConfigError("gamma must be > 0");
  if (c.k < 0) throw ConfigError("k must be >= 0");
  if (c.s < 1) throw ConfigError("s must be >= 1");
  if (c.sphere_level < (c.d == 1 ? 0 : 1)) throw ConfigError("sphere_level must be >= 1");
  if (c.d == 2 && c.sphere_level > 16) throw ConfigError("sphere_level too large for d = 2");
  if (c.line_n < 4 || (c.line_n & (c.line_n - 1)) != 0) throw ConfigError("line_n must be a power of two >= 4");
  if (!(c.line_l >= 1.0)) throw ConfigError("line_l must be >= 1");
  if (c.seeds < 1) throw ConfigError("seeds must be >= 1");
  if (c.samples < 0) throw ConfigError("samples must be >= 0");
  if (c.radial_nodes < 1) throw ConfigError("radial_nodes must be >= 1");
  if (c.mollifier_level < 1) throw ConfigError("mollifier_level must be >= 1");
  if (c.tolerance && !(*c.tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
  if (c.monotone_slack && !(*c.monotone_slack >= 1.0)) throw ConfigError("monotone_slack must be >= 1");

  switch (c.kind) {
    case ExperimentKind::radon_check:
      if (c.d < 2) throw ConfigError("radon-check needs d in {2, 3}");
      break;
    case ExperimentKind::inversion_check:
      break;
    case ExperimentKind::variation_bound:
    case ExperimentKind::peano_reconstruct:
      require(c, "k");
      break;
    case ExperimentKind::rate_sweep:
      require(c, "k");
      require(c, "widths");
      if (c.widths.empty()) throw ConfigError("widths must not be empty");
      for (double w : c.widths)
        if (!(w >= 1.0) || w != std::floor(w)) throw ConfigError("widths must be positive integers");
      if (!strictly_increasing(c.widths)) throw ConfigError("widths must be strictly increasing");
      if (c.widths.size() < 3) throw ConfigError("rate-sweep needs at least 3 widths for a slope fit");
      break;
    case ExperimentKind::mollify_sweep:
      require(c, "s");
      require(c, "epsilons");
      if (c.epsilons.empty()) throw ConfigError("epsilons must not be empty");
      for (double e : c.epsilons)
        if (!(e > 0.0 && e <= 1.0)) throw ConfigError("epsilons must lie in (0, 1]");
      if (!strictly_monotone(c.epsilons)) throw ConfigError("epsilons must be strictly monotone");
      if (c.epsilons.size() < 3) throw ConfigError("mollify-sweep needs at least 3 epsilons for a slope fit");
      break;
  }
  if (!c.save_network.empty()) {
    if (c.kind != ExperimentKind::peano_reconstruct) throw ConfigError("save_network is only valid for peano-reconstruct");
    const std::string csv = c.output.empty() ? to_string(c.kind) + ".csv" : c.output;
    if (c.save_network == csv) throw ConfigError("save_network must differ from output");
  }
}

std::string echo_config(const ExperimentConfig& c) {
  auto list = [](const std::vector<double>& v) {
    std::string out;
    for (double x : v) out += (out.empty() ? "" : ", ") + format_double(x);
    return out;
  };
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("none"); };
  std::ostringstream os;
  os << "kind = " << to_string(c.kind) << '\n'
     << "target = " << (c.target == TargetKind::gaussian ? "gaussian" : c.target == TargetKind::cusp ? "cusp" : "zero")
     << '\n'
     << "d = " << c.d << '\n'
     << "sigma2 = " << format_double(c.sigma2) << '\n'
     << "amplitude = " << format_double(c.amplitude) << '\n'
     << "center = " << (c.center.empty() ? "origin" : list(c.center)) << '\n'
     << "gamma = " << format_double(c.gamma) << '\n'
     << "k = " << c.k << '\n'
     << "s = " << c.s << '\n'
     << "p = " << (c.p == Norm::l2 ? "2" : "inf") << '\n'
     << "sphere_level = " << c.sphere_level << '\n'
     << "line_n = " << c.line_n << '\n'
     << "line_l = " << format_double(c.line_l) << '\n'
     << "widths = " << list(c.widths) << '\n'
     << "epsilons = " << list(c.epsilons) << '\n'
     << "seeds = " << c.seeds << '\n'
     << "seed = " << c.seed << '\n'
     << "constructor = " << (c.constructor == Constructor::sampling ? "sampling" : "quadrature") << '\n'
     << "schedule = " << (c.schedule == Schedule::none ? "none" : "epsilon") << '\n'
     << "poly = " << (c.poly == PolyMode::exact ? "exact" : "lifted") << '\n'
     << "points = " << c.points << '\n'
     << "sampler = " << (c.sampler == SamplerMode::lattice ? "lattice" : "random") << '\n'
     << "samples = " << c.samples << '\n'
     << "radial_nodes = " << c.radial_nodes << '\n'
     << "mollifier_level = " << c.mollifier_level << '\n'
     << "tolerance = " << opt(c.tolerance) << '\n'
     << "slope_max = " << opt(c.slope_max) << '\n'
     << "slope_min = " << opt(c.slope_min) << '\n'
     << "monotone_slack = " << opt(c.monotone_slack) << '\n'
     << "output = " << (c.output.empty() ? to_string(c.kind) + ".csv" : c.output) << '\n'
     << "save_network = " << (c.save_network.empty() ? "none" : c.save_network) << '\n';
  return os.str();
}

}  // namespace ridgelab
