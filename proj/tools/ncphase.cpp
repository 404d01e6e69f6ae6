// Command-line front end over the ncphase C interface.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncphase/ncphase.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Params {
  double m = 1.0, omega = 1.0, hbar = 1.0, theta = 1.0;
  ncp_params c() const { return {m, omega, hbar, theta}; }
};

void add_params(CLI::App* app, Params& p) {
  app->add_option("--m", p.m, "mass")->capture_default_str();
  app->add_option("--omega", p.omega, "oscillator frequency")->capture_default_str();
  app->add_option("--hbar", p.hbar, "Planck constant")->capture_default_str();
  app->add_option("--theta", p.theta, "non-commutativity parameter")->capture_default_str();
}

// Input-shaped failures exit 2, computational ones exit 1.
int report_status(ncp_status s) {
  if (s == NCP_OK) return kExitOk;
  std::cerr << "error: " << ncp_status_string(s) << ": " << ncp_last_error() << "\n";
  switch (s) {
    case NCP_ERR_CONFIG:
    case NCP_ERR_IO:
    case NCP_ERR_INVALID_ARGUMENT:
    case NCP_ERR_DOMAIN:
    case NCP_ERR_DIMENSION:
    case NCP_ERR_MISSING_ASYMPTOTE:
      return kExitUsage;
    default:
      return kExitFailed;
  }
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::vector<std::array<double, 4>> read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<std::array<double, 4>> pts;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::array<double, 4> p{};
    std::string cell;
    for (double& v : p) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error(path + ": rows need 4 columns");
      v = std::stod(cell);
    }
    pts.push_back(p);
  }
  return pts;
}

const std::map<std::string, ncp_wigner_family>& families() {
  static const std::map<std::string, ncp_wigner_family> f = {
      {"1dof", NCP_WIGNER_1DOF},
      {"4d", NCP_WIGNER_4D},
      {"marginal", NCP_WIGNER_MARGINAL},
      {"marginal-hbar0", NCP_WIGNER_MARGINAL_HBAR0},
      {"evolved", NCP_WIGNER_EVOLVED},
      {"evolved-marginal", NCP_WIGNER_EVOLVED_MARGINAL},
      {"evolved-marginal-hbar0", NCP_WIGNER_EVOLVED_MARGINAL_HBAR0},
      {"final-1d", NCP_WIGNER_FINAL_1D},
  };
  return f;
}

std::size_t family_dim(ncp_wigner_family f) {
  switch (f) {
    case NCP_WIGNER_1DOF:
    case NCP_WIGNER_MARGINAL:
    case NCP_WIGNER_MARGINAL_HBAR0:
    case NCP_WIGNER_EVOLVED_MARGINAL:
    case NCP_WIGNER_EVOLVED_MARGINAL_HBAR0:
      return 2;
    case NCP_WIGNER_FINAL_1D: return 1;
    default: return 4;
  }
}

// Coordinates of the centre in the family's own point layout.
std::vector<double> default_point(ncp_wigner_family f, const std::array<double, 4>& c) {
  switch (family_dim(f)) {
    case 1: return {c[3]};
    case 2: return f == NCP_WIGNER_1DOF ? std::vector<double>{c[0], c[1]} : std::vector<double>{c[2], c[3]};
    default: return {c.begin(), c.end()};
  }
}

std::string axis_name(ncp_wigner_family f, std::size_t k) {
  static const char* four[] = {"x1", "x2", "y1", "y2"};
  if (f == NCP_WIGNER_1DOF) return k == 0 ? "q" : "p";
  if (family_dim(f) == 2) return four[k + 2];
  return four[k];
}

int cmd_derive(const Params& p) {
  const ncp_params c = p.c();
  ncp_derived d{};
  if (int rc = report_status(ncp_derive(&c, &d))) return rc;
  Json j{{"params", {{"m", p.m}, {"omega", p.omega}, {"hbar", p.hbar}, {"theta", p.theta}}},
         {"lambda_plus", d.lambda_plus},
         {"lambda_minus", d.lambda_minus},
         {"k_plus", d.k_plus},
         {"k_minus", d.k_minus},
         {"mu", d.mu},
         {"beta", d.beta},
         {"n_norm", d.n_norm},
         {"gamma_plus", d.gamma_plus},
         {"gamma_minus", d.gamma_minus},
         {"omega_plus", d.omega_plus},
         {"omega_minus", d.omega_minus}};
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_dynamics(const Params& p, double t, const std::string& regime) {
  const std::map<std::string, ncp_regime> regimes = {
      {"exact", NCP_REGIME_EXACT}, {"theta0", NCP_REGIME_THETA0}, {"hbar0", NCP_REGIME_HBAR0}};
  const ncp_params c = p.c();
  double a[16];
  if (int rc = report_status(ncp_evolution(&c, t, regimes.at(regime), a))) return rc;
  Json rows = Json::array();
  // + 0.0 prints -0 as 0
  for (int i = 0; i < 4; ++i) {
    rows.push_back({a[4 * i] + 0.0, a[4 * i + 1] + 0.0, a[4 * i + 2] + 0.0, a[4 * i + 3] + 0.0});
  }
  std::cout << Json{{"t", t}, {"regime", regime}, {"a_t", rows}}.dump(2) << "\n";
  return kExitOk;
}

struct SmoothArgs {
  std::string function = R"({"kind":"gaussian_bump"})";
  std::string probes_file;
  std::size_t probe_count = 100;
  std::uint64_t probe_seed = 42;
  double lo = -3.0, hi = 3.0;
  int order = 24;
  std::uint64_t mc_samples = 0;
  std::uint64_t mc_seed = 42;
  std::vector<double> t;
  std::string out;
};

int cmd_smooth(const Params& p, const SmoothArgs& a) {
  std::vector<double> pts;
  if (!a.probes_file.empty()) {
    for (const auto& r : read_points_csv(a.probes_file)) pts.insert(pts.end(), r.begin(), r.end());
  } else {
    pts.resize(4 * a.probe_count);
    if (int rc = report_status(ncp_probe_cloud(a.probe_count, a.probe_seed, a.lo, a.hi, pts.data()))) return rc;
  }
  ncp_function fn = nullptr;
  if (int rc = report_status(ncp_function_create(a.function.c_str(), &fn))) return rc;
  const ncp_quadrature q = a.mc_samples > 0
                               ? ncp_quadrature{NCP_MONTE_CARLO, 0, a.mc_samples, a.mc_seed}
                               : ncp_quadrature{NCP_GAUSS_HERMITE_TENSOR, a.order, 0, 0};
  const std::size_t n = pts.size() / 4;
  std::vector<double> values(n), errors(n);
  const ncp_params c = p.c();
  const double* t = a.t.empty() ? nullptr : &a.t.front();
  const ncp_status s = ncp_smooth(fn, &c, &q, t, pts.data(), n, values.data(), errors.data());
  ncp_function_destroy(fn);
  if (int rc = report_status(s)) return rc;
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) {
      std::cerr << "error: cannot write " << a.out << "\n";
      return kExitUsage;
    }
  }
  std::ostream& os = a.out.empty() ? std::cout : file;
  os << "x1,x2,y1,y2,value,std_error\n";
  for (std::size_t i = 0; i < n; ++i) {
    os << num(pts[4 * i]) << ',' << num(pts[4 * i + 1]) << ',' << num(pts[4 * i + 2]) << ','
       << num(pts[4 * i + 3]) << ',' << num(values[i]) << ',' << num(errors[i]) << '\n';
  }
  return kExitOk;
}

struct WignerArgs {
  std::string family = "4d";
  double t = 0.0;
  std::vector<double> center{0, 0, 0, 0};
  std::vector<double> point;
  int grid_n = 0;
  double lo = -3.0, hi = 3.0;
  std::string out_dir;
};

int cmd_wigner(const Params& p, const WignerArgs& a) {
  const ncp_wigner_family fam = families().at(a.family);
  const std::size_t dim = family_dim(fam);
  if (a.center.size() != 4) {
    std::cerr << "error: --center needs 4 values\n";
    return kExitUsage;
  }
  const std::array<double, 4> c{a.center[0], a.center[1], a.center[2], a.center[3]};
  const ncp_params cp = p.c();
  if (a.grid_n == 0) {
    const std::vector<double> x = a.point.empty() ? default_point(fam, c) : a.point;
    if (x.size() != dim) {
      std::cerr << "error: --point needs " << dim << " values for family " << a.family << "\n";
      return kExitUsage;
    }
    double v = 0.0;
    if (int rc = report_status(ncp_wigner_eval(fam, &cp, a.t, c.data(), x.data(), 1, dim, &v))) return rc;
    std::cout << Json{{"family", a.family}, {"t", a.t}, {"point", x}, {"value", v}}.dump(2) << "\n";
    return kExitOk;
  }
  if (dim < 2 || a.grid_n < 2 || a.out_dir.empty()) {
    std::cerr << "error: grids need a family of dimension >= 2, --grid-n >= 2 and --out-dir\n";
    return kExitUsage;
  }
  // 4D families vary (x1, y1) around the centre; 2D families vary both coordinates.
  const std::size_t ax = 0, ay = dim == 4 ? 2 : 1;
  const std::vector<double> base = default_point(fam, c);
  std::vector<double> axis(a.grid_n);
  for (int i = 0; i < a.grid_n; ++i) axis[i] = a.lo + (a.hi - a.lo) * i / (a.grid_n - 1);
  std::vector<double> pts;
  for (double y : axis) {
    for (double x : axis) {
      std::vector<double> q = base;
      q[ax] = x;
      q[ay] = y;
      pts.insert(pts.end(), q.begin(), q.end());
    }
  }
  std::vector<double> vals(axis.size() * axis.size());
  if (int rc = report_status(ncp_wigner_eval(fam, &cp, a.t, c.data(), pts.data(), vals.size(), dim, vals.data()))) {
    return rc;
  }
  std::filesystem::create_directories(a.out_dir);
  const auto grid = std::filesystem::path(a.out_dir) / "grid.csv";
  std::ofstream out(grid);
  if (!out) {
    std::cerr << "error: cannot write " << grid << "\n";
    return kExitUsage;
  }
  out << axis_name(fam, ax) << ',' << axis_name(fam, ay) << ",wigner\n";
  for (std::size_t iy = 0; iy < axis.size(); ++iy) {
    for (std::size_t ix = 0; ix < axis.size(); ++ix) {
      out << num(axis[ix]) << ',' << num(axis[iy]) << ',' << num(vals[iy * axis.size() + ix]) << '\n';
    }
  }
  out.close();
  const auto svg = std::filesystem::path(a.out_dir) / "heatmap.svg";
  const std::string title = "Wigner " + a.family;
  return report_status(ncp_render_heatmap(grid.string().c_str(), svg.string().c_str(), title.c_str()));
}

int run_status(ncp_status s, int all_passed) {
  if (s != NCP_OK) {
    const int rc = report_status(s);
    return s == NCP_ERR_CONFIG ? kExitUsage : rc;
  }
  return all_passed ? kExitOk : kExitFailed;
}

int cmd_run(const std::string& config, const std::string& experiment) {
  int passed = 0;
  const ncp_status s = ncp_run_config(config.c_str(), experiment.empty() ? nullptr : experiment.c_str(), &passed);
  return run_status(s, passed);
}

struct SweepArgs {
  std::string experiment = "chain_a";
  std::vector<std::string> functions;
  int order = 24;
  std::size_t probe_count = 100;
  double tolerance = 1e-2;
  std::string out = "ncphase_sweep";
};

int cmd_sweep(const Params& p, const SweepArgs& a) {
  Json cfg;
  cfg["params"] = {{"m", p.m}, {"omega", p.omega}, {"hbar", p.hbar}, {"theta", p.theta}};
  cfg["quadrature"] = {{"kind", "gauss_hermite_tensor"}, {"order_per_axis", a.order}};
  cfg["probes"] = {{"count", a.probe_count}, {"seed", 42}, {"lo", -3.0}, {"hi", 3.0}};
  cfg["tolerance"] = a.tolerance;
  Json fs = Json::array();
  for (const auto& f : a.functions) {
    try {
      fs.push_back(Json::parse(f));
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "error: --function is not valid JSON: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  if (!fs.empty()) cfg["test_functions"] = fs;
  cfg["outputs"] = ".";
  cfg["experiments"] = {a.experiment};
  std::error_code ec;
  std::filesystem::create_directories(a.out, ec);
  const auto path = std::filesystem::path(a.out) / "config.json";
  std::ofstream(path) << cfg.dump(2) << "\n";
  if (!std::filesystem::exists(path)) {
    std::cerr << "error: cannot write " << path << "\n";
    return kExitUsage;
  }
  return cmd_run(path.string(), "");
}

int cmd_asymptotics(const Params& p, const std::string& out) {
  const ncp_params c = p.c();
  char* summary = nullptr;
  int ok = 0;
  const ncp_status s = ncp_run_appendix(&c, out.empty() ? nullptr : out.c_str(), &summary, &ok);
  if (s != NCP_OK) return report_status(s);
  std::cout << summary << "\n";
  ncp_string_free(summary);
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncphase: quantize/de-quantize limits of two oscillators on a non-commutative plane"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ncp_version()));

  Params params;

  std::string config_path, experiment;
  auto* run = app.add_subcommand("run", "run the experiments of a JSON config");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--experiment", experiment, "run only this experiment");

  auto* derive = app.add_subcommand("derive", "print derived parameters as JSON");
  add_params(derive, params);

  SmoothArgs sa;
  auto* smooth = app.add_subcommand("smooth", "evaluate F_{hbar,theta} on probe points (CSV)");
  add_params(smooth, params);
  smooth->add_option("--function", sa.function, "test function JSON spec")->capture_default_str();
  smooth->add_option("--probes", sa.probes_file, "CSV of points x1,x2,y1,y2 (header row)");
  smooth->add_option("--probe-count", sa.probe_count, "probe cloud size")->capture_default_str();
  smooth->add_option("--probe-seed", sa.probe_seed, "probe cloud seed")->capture_default_str();
  smooth->add_option("--lo", sa.lo, "probe box lower edge")->capture_default_str();
  smooth->add_option("--hi", sa.hi, "probe box upper edge")->capture_default_str();
  smooth->add_option("--order", sa.order, "Gauss-Hermite order per axis")->capture_default_str();
  smooth->add_option("--mc-samples", sa.mc_samples, "use Monte Carlo with this many samples");
  smooth->add_option("--seed", sa.mc_seed, "Monte Carlo seed")->capture_default_str();
  smooth->add_option("--t", sa.t, "evolve with A_t")->expected(1);
  smooth->add_option("--out", sa.out, "output CSV (default stdout)");

  WignerArgs wa;
  std::vector<std::string> family_names;
  for (const auto& [k, v] : families()) family_names.push_back(k);
  auto* wigner = app.add_subcommand("wigner", "evaluate a Wigner family at a point or on a grid");
  add_params(wigner, params);
  wigner->add_option("--family", wa.family, "Wigner family")
      ->check(CLI::IsMember(family_names))
      ->capture_default_str();
  wigner->add_option("--t", wa.t, "time")->capture_default_str();
  wigner->add_option("--center", wa.center, "centre r0 = x1,x2,y1,y2")->delimiter(',')->expected(4);
  wigner->add_option("--point", wa.point, "evaluation point in the family's coordinates")->delimiter(',');
  wigner->add_option("--grid-n", wa.grid_n, "grid points per axis (writes grid.csv, heatmap.svg)");
  wigner->add_option("--lo", wa.lo, "grid lower edge")->capture_default_str();
  wigner->add_option("--hi", wa.hi, "grid upper edge")->capture_default_str();
  wigner->add_option("--out-dir", wa.out_dir, "grid output directory");

  double t = 0.0;
  std::string regime = "exact";
  auto* dynamics = app.add_subcommand("dynamics", "print the evolution matrix A_t");
  add_params(dynamics, params);
  dynamics->add_option("--t", t, "time")->capture_default_str();
  dynamics->add_option("--regime", regime, "exact, theta0 or hbar0")
      ->check(CLI::IsMember({"exact", "theta0", "hbar0"}))
      ->capture_default_str();

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "run one limit experiment from flags");
  add_params(sweep, params);
  sweep->add_option("--experiment", sw.experiment, "experiment")
      ->check(CLI::IsMember({"chain_a", "chain_b", "noncommutation", "dynamics", "localization", "diagonal"}))
      ->capture_default_str();
  sweep->add_option("--function", sw.functions, "test function JSON spec (repeatable)");
  sweep->add_option("--order", sw.order, "Gauss-Hermite order per axis")->capture_default_str();
  sweep->add_option("--probe-count", sw.probe_count, "probe cloud size")->capture_default_str();
  sweep->add_option("--tolerance", sw.tolerance, "convergence tolerance")->capture_default_str();
  sweep->add_option("--out", sw.out, "output directory")->capture_default_str();

  std::string asym_out;
  auto* asym = app.add_subcommand("asymptotics", "appendix asymptotics suite (hbar, theta held fixed)");
  add_params(asym, params);
  asym->add_option("--out", asym_out, "write report.json and errors.csv here");

  std::string grid_path, svg_path, title;
  auto* heatmap = app.add_subcommand("heatmap", "render a grid.csv as an SVG heatmap");
  heatmap->add_option("--grid", grid_path, "grid CSV (x,y,value with header)")->required();
  heatmap->add_option("--svg", svg_path, "output SVG")->required();
  heatmap->add_option("--title", title, "title");

  // sweep defaults: chain A at hbar 0.1, chain B at theta 1
  sweep->preparse_callback([&](std::size_t) { params.hbar = 0.1; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(config_path, experiment);
    if (*derive) return cmd_derive(params);
    if (*smooth) return cmd_smooth(params, sa);
    if (*wigner) return cmd_wigner(params, wa);
    if (*dynamics) return cmd_dynamics(params, t, regime);
    if (*sweep) return cmd_sweep(params, sw);
    if (*asym) return cmd_asymptotics(params, asym_out);
    if (*heatmap) return report_status(ncp_render_heatmap(grid_path.c_str(), svg_path.c_str(), title.c_str()));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
