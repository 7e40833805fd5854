#include "ridgelab/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ridgelab/format.hpp"
#include "ridgelab/fourier_radon.hpp"
#include "ridgelab/mollify.hpp"
#include "ridgelab/network.hpp"
#include "ridgelab/ridge_density.hpp"
#include "ridgelab/rng.hpp"

namespace ridgelab {

namespace {

std::string fmt(double v) { return format_double(v); }

LineGrid base_grid(const ExperimentConfig& c) { return LineGrid(c.line_l, c.line_n); }

std::vector<Vec> check_points(const ExperimentConfig& c, int default_count) {
  const int count = c.samples > 0 ? c.samples : default_count;
  return ball_points(BallSampler{c.d, c.sampler, static_cast<std::size_t>(count), derive_seed(c.seed, "check-points")});
}

std::vector<Vec> error_points(const ExperimentConfig& c) {
  return ball_points(BallSampler{c.d, c.sampler, c.points, derive_seed(c.seed, "error-points")});
}

void add_check(ExperimentReport& r, bool ok, const std::string& what) {
  r.checked = true;
  if (!ok) {
    r.passed = false;
    r.verdict += (r.verdict.empty() ? "" : "; ") + what;
  }
}

double tol(const ExperimentConfig& c, double fallback) { return c.tolerance.value_or(fallback); }

void radon_check(const ExperimentConfig& c, const TargetFunction& f, ExperimentReport& r) {
  const int count = c.samples > 0 ? c.samples : 50;
  const LineGrid grid = base_grid(c);
  const auto dirs = sample_directions(c.d, count, derive_seed(c.seed, "radon-check/directions"));
  std::mt19937_64 rng(derive_seed(c.seed, "radon-check/offsets"));
  std::vector<double> offsets(count);
  for (double& b : offsets) b = -2.0 + 4.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);

  std::vector<double> spectral(count), direct(count), peak(count);
  parallel_for(count, [&](std::size_t i) {
    const RidgeProfile profile = radon_transform(f, dirs[i], grid);
    spectral[i] = profile.value_at(offsets[i]);
    direct[i] = radon_direct(f, dirs[i], offsets[i]);
    double m = 0.0;
    for (double v : profile.values) m = std::max(m, std::abs(v));
    peak[i] = m;
  });

  std::ostringstream table;
  table << "sample,b,radon_transform,radon_direct,abs_err\n";
  double max_err = 0.0, max_rf = 0.0;
  for (int i = 0; i < count; ++i) {
    const double err = std::abs(spectral[i] - direct[i]);
    max_err = std::max(max_err, err);
    max_rf = std::max(max_rf, peak[i]);
    table << i << ',' << fmt(offsets[i]) << ',' << fmt(spectral[i]) << ',' << fmt(direct[i]) << ',' << fmt(err) << '\n';
  }
  const double rel = max_rf > 0.0 ? max_err / max_rf : max_err;
  r.table = table.str();
  r.summary = {{"max_abs_err", max_err}, {"max_abs_rf", max_rf}, {"max_rel_err", rel}};
  add_check(r, rel <= tol(c, 1e-6), "max_rel_err " + fmt(rel) + " exceeds " + fmt(tol(c, 1e-6)));
}

void inversion_check(const ExperimentConfig& c, const TargetFunction& f, ExperimentReport& r) {
  const auto pts = check_points(c, 100);
  std::ostringstream table;
  table << "grid,point,value,reconstruction,rel_err\n";
  double errs[2] = {0.0, 0.0};
  double fmax = 0.0;
  for (const Vec& x : pts) fmax = std::max(fmax, std::abs(f(x)));
  if (fmax == 0.0) fmax = 1.0;
  for (int g = 0; g < 2; ++g) {
    const LineGrid grid = g == 0 ? base_grid(c) : base_grid(c).refined();
    const FilteredBackProjection fbp(f, sphere_grid(c.d, c.sphere_level + g), grid);
    std::vector<double> rec(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { rec[i] = fbp(pts[i]); });
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double v = f(pts[i]);
      const double e = std::abs(rec[i] - v) / fmax;
      errs[g] = std::max(errs[g], e);
      table << (g == 0 ? "base" : "refined") << ',' << i << ',' << fmt(v) << ',' << fmt(rec[i]) << ',' << fmt(e) << '\n';
    }
  }
  r.table = table.str();
  r.summary = {{"max_rel_err_base", errs[0]}, {"max_rel_err_refined", errs[1]}};
  add_check(r, errs[0] <= tol(c, 1e-3), "base max_rel_err " + fmt(errs[0]) + " exceeds " + fmt(tol(c, 1e-3)));
  add_check(r, errs[1] < errs[0], "refinement did not decrease the error");
}

void variation_bound(const ExperimentConfig& c, const TargetFunction& f, ExperimentReport& r) {
  const double s = SmoothnessSpec::embedding_order(c.d, c.k).s;
  const double seminorm = sobolev_seminorm(f, s);
  std::ostringstream table;
  table << "grid,sphere_level,line_n,line_l,variation_bound,seminorm,ratio\n";
  double ratio[2];
  for (int g = 0; g < 2; ++g) {
    const LineGrid grid = g == 0 ? base_grid(c) : base_grid(c).refined();
    const int level = c.sphere_level + g;
    const double v = variation_upper_bound(f, c.k, sphere_grid(c.d, level), grid);
    ratio[g] = v / seminorm;
    table << (g == 0 ? "base" : "refined") << ',' << level << ',' << grid.count() << ',' << fmt(grid.half_width())
          << ',' << fmt(v) << ',' << fmt(seminorm) << ',' << fmt(ratio[g]) << '\n';
  }
  const double change = std::abs(ratio[1] - ratio[0]) / std::abs(ratio[0]);
  r.table = table.str();
  r.summary = {{"s", s}, {"ratio_base", ratio[0]}, {"ratio_refined", ratio[1]}, {"ratio_change", change}};
  add_check(r, std::isfinite(ratio[0]) && std::isfinite(ratio[1]), "ratio is not finite");
  add_check(r, change < tol(c, 0.05), "ratio changed by " + fmt(change) + " under refinement");
}

void peano_reconstruct(const ExperimentConfig& c, const TargetFunction& f, ExperimentReport& r) {
  const auto pts = check_points(c, 200);
  std::ostringstream table;
  table << "grid,sphere_level,line_n,line_l,width,l1_mass,sup_err\n";
  double sup[2];
  for (int g = 0; g < 2; ++g) {
    const LineGrid grid = g == 0 ? base_grid(c) : base_grid(c).refined();
    const int level = c.sphere_level + g;
    ShallowNetwork net = from_quadrature(ProfileBank(f, c.k, sphere_grid(c.d, level), grid));
    if (c.poly == PolyMode::lifted) net = lift_polynomial(net);
    sup[g] = lp_error(f.field(), [&](const Vec& x) { return net(x); }, Norm::linf, pts);
    if (g == 0 && !c.save_network.empty()) r.network = serialize(net);
    table << (g == 0 ? "base" : "refined") << ',' << level << ',' << grid.count() << ',' << fmt(grid.half_width())
          << ',' << net.width() << ',' << fmt(net.l1_mass()) << ',' << fmt(sup[g]) << '\n';
  }
  r.table = table.str();
  r.summary = {{"sup_err_base", sup[0]}, {"sup_err_refined", sup[1]}};
  add_check(r, sup[0] <= tol(c, 1e-3), "base sup error " + fmt(sup[0]) + " exceeds " + fmt(tol(c, 1e-3)));
  add_check(r, sup[1] < sup[0], "refinement did not decrease the sup error");
}

// Knot stride whose network width (directions x knots) is closest to n on a log scale.
int choose_stride(const ProfileBank& bank, double n) {
  const auto [first, last] = bank.unit_range();
  const int cells = last - first;
  const double dirs = static_cast<double>(bank.sphere().size());
  int best = cells;
  double best_gap = INFINITY;
  for (int stride = 1; stride <= cells; ++stride) {
    if (cells % stride != 0) continue;
    const double width = dirs * (cells / stride + 1);
    const double gap = std::abs(std::log(width / n));
    if (gap < best_gap) {
      best_gap = gap;
      best = stride;
    }
  }
  return best;
}

void sweep_checks(const ExperimentConfig& c, const ErrorSeries& series, ExperimentReport& r) {
  r.fit = rate_fit(series);
  if (c.slope_max) {
    add_check(r, r.fit->slope <= *c.slope_max,
              "slope " + fmt(r.fit->slope) + " above the required maximum " + fmt(*c.slope_max));
  }
  if (c.slope_min) {
    add_check(r, r.fit->slope >= *c.slope_min,
              "slope " + fmt(r.fit->slope) + " below the required minimum " + fmt(*c.slope_min));
  }
  if (c.monotone_slack) {
    for (std::size_t i = 1; i < series.points.size(); ++i) {
      const double prev = series.points[i - 1].second;
      const double cur = series.points[i].second;
      add_check(r, cur <= *c.monotone_slack * prev,
                "error rose from " + fmt(prev) + " to " + fmt(cur) + " at abscissa " + fmt(series.points[i].first));
    }
  }
  std::ostringstream table;
  write_series_csv(table, series, std::nullopt);
  r.table = table.str();
}

void rate_sweep(const ExperimentConfig& c, const TargetFunction& f, ExperimentReport& r) {
  const auto pts = error_points(c);
  const LineGrid grid = base_grid(c);
  const SphereGrid sphere = sphere_grid(c.d, c.sphere_level);
  const ConvolutionRule rule{c.radial_nodes, c.mollifier_level};
  std::optional<ProfileBank> shared;
  if (c.schedule == Schedule::none) shared.emplace(f, c.k, sphere, grid);

  ErrorSeries series{AbscissaKind::width, c.p, {}};
  for (double n : c.widths) {
    std::optional<ProfileBank> local;
    if (c.schedule == Schedule::epsilon) {
      const double eps = epsilon_schedule(static_cast<std::uint64_t>(n), c.d);
      local.emplace(mollified_target(f, c.s, eps, rule), c.k, sphere, grid);
    }
    const ProfileBank& bank = shared ? *shared : *local;
    auto error_of = [&](ShallowNetwork net) {
      if (c.poly == PolyMode::lifted) net = lift_polynomial(net);
      return lp_error(f.field(), [&](const Vec& x) { return net(x); }, c.p, pts);
    };
    if (c.constructor == Constructor::sampling) {
      double sum = 0.0;
      for (int i = 0; i < c.seeds; ++i) {
        sum += error_of(from_sampling(bank, static_cast<std::size_t>(n), derive_seed(c.seed, "rate-sweep", i)));
      }
      series.points.emplace_back(n, sum / c.seeds);
    } else {
      const ShallowNetwork net = from_quadrature(bank, choose_stride(bank, n));
      series.points.emplace_back(static_cast<double>(net.width()), error_of(net));
    }
  }
  sweep_checks(c, series, r);
}

void mollify_sweep(const ExperimentConfig& c, const TargetFunction& f, ExperimentReport& r) {
  const auto pts = error_points(c);
  const ConvolutionRule rule{c.radial_nodes, c.mollifier_level};
  const ScalarField base = f.field();
  ErrorSeries series{AbscissaKind::scale, c.p, {}};
  for (double eps : c.epsilons) {
    const double err = lp_error(
        base, [&](const Vec& x) { return smooth_approximant(base, c.d, c.s, eps, x, rule); }, c.p, pts);
    series.points.emplace_back(eps, err);
  }
  sweep_checks(c, series, r);
}

}  // namespace

std::string ExperimentReport::csv() const {
  std::ostringstream os;
  os << table;
  if (fit) {
    os << "# slope=" << fmt(fit->slope) << " intercept=" << fmt(fit->intercept) << " residual=" << fmt(fit->residual)
       << '\n';
  }
  for (const auto& [key, value] : summary) os << "# " << key << '=' << fmt(value) << '\n';
  if (checked) os << "# check=" << (passed ? "pass" : "fail") << '\n';
  return os.str();
}

std::string ExperimentReport::text() const {
  std::ostringstream os;
  os << "ridgelab " << version << '\n' << "experiment: " << kind << '\n' << "\n[config]\n" << config_echo;
  os << "\n[results]\n";
  if (fit) {
    os << "slope = " << fmt(fit->slope) << '\n'
       << "intercept = " << fmt(fit->intercept) << '\n'
       << "residual = " << fmt(fit->residual) << '\n';
  }
  for (const auto& [key, value] : summary) os << key << " = " << fmt(value) << '\n';
  if (checked) os << "status = " << (passed ? "pass" : "fail: " + verdict) << '\n';
  os << "wall_clock_seconds = " << fmt(wall_seconds) << '\n';
  os << "\n[table]\n" << table;
  return os.str();
}

TargetFunction make_target(const ExperimentConfig& c) {
  switch (c.target) {
    case TargetKind::zero:
      return make_zero(c.d);
    case TargetKind::cusp:
      return make_cusp_radial(c.gamma, c.d);
    case TargetKind::gaussian:
      break;
  }
  Vec center(c.d);
  for (std::size_t i = 0; i < c.center.size(); ++i) center[static_cast<int>(i)] = c.center[i];
  return make_gaussian(GaussianSpec{center, c.sigma2, c.amplitude});
}

ExperimentReport run(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.kind = to_string(config.kind);
  report.config_echo = echo_config(config);
  const TargetFunction f = make_target(config);
  switch (config.kind) {
    case ExperimentKind::radon_check:
      radon_check(config, f, report);
      break;
    case ExperimentKind::inversion_check:
      inversion_check(config, f, report);
      break;
    case ExperimentKind::variation_bound:
      variation_bound(config, f, report);
      break;
    case ExperimentKind::peano_reconstruct:
      peano_reconstruct(config, f, report);
      break;
    case ExperimentKind::rate_sweep:
      rate_sweep(config, f, report);
      break;
    case ExperimentKind::mollify_sweep:
      mollify_sweep(config, f, report);
      break;
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ExperimentReport run_and_write(const ExperimentConfig& config, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  ExperimentReport report = run(config);
  const std::string name = config.output.empty() ? to_string(config.kind) + ".csv" : config.output;
  const fs::path csv_path = dir / name;
  const fs::path report_path = dir / (fs::path(name).stem().string() + ".report.txt");
  auto write = [](const fs::path& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os << body;
    if (!os) throw IoError("failed writing " + path.string());
  };
  write(csv_path, report.csv());
  write(report_path, report.text());
  if (report.network) write(dir / config.save_network, *report.network);
  return report;
}

}  // namespace ridgelab
