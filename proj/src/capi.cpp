#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "config.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "heatmap.hpp"
#include "ncphase/ncphase.h"
#include "smoothing.hpp"
#include "wigner.hpp"

struct ncp_phasemap_t {
  ncphase::DerivedParams d;
  ncphase::PhaseMap pm;
};

struct ncp_function_t {
  ncphase::TestFunction f;
};

namespace {

using namespace ncphase;

thread_local std::string g_last_error;

template <class Fn>
ncp_status guard(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return NCP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return e.code();
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return NCP_ERR_CONFIG;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return NCP_ERR_BUDGET;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NCP_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown failure";
    return NCP_ERR_UNKNOWN;
  }
}

template <class T>
void need(const T* p, const char* name) {
  if (!p) throw InvalidArgumentError(std::string(name) + " must not be NULL");
}

ParamSet to_params(const ncp_params* p) {
  need(p, "params");
  return {p->m, p->omega, p->hbar, p->theta};
}

QuadratureRule to_rule(const ncp_quadrature* q) {
  need(q, "rule");
  switch (q->kind) {
    case NCP_GAUSS_HERMITE_TENSOR: return QuadratureRule::tensor(q->order_per_axis);
    case NCP_MONTE_CARLO: return QuadratureRule::monte_carlo(q->samples, q->seed);
  }
  throw InvalidArgumentError("unknown quadrature kind");
}

void store(const Mat4& m, double out[16]) {
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) out[4 * i + k] = m(i, k);
  }
}

PhasePoint point(const double* r) { return {r[0], r[1], r[2], r[3]}; }

Quantity to_quantity(ncp_quantity q) {
  if (q < NCP_Q_LAMBDA_PLUS || q > NCP_Q_GAMMA_PM) throw InvalidArgumentError("unknown quantity");
  return static_cast<Quantity>(q);
}

Direction to_direction(ncp_direction d) {
  if (d == NCP_THETA_TO_0) return Direction::ThetaToZero;
  if (d == NCP_HBAR_TO_0) return Direction::HbarToZero;
  throw InvalidArgumentError("unknown direction");
}

char* heap_copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

WignerGaussian wigner_for(ncp_wigner_family family, const ParamSet& p, double t, const double* c) {
  const PhasePoint r0 = point(c);
  auto derived = [&] { return derive(p); };
  switch (family) {
    case NCP_WIGNER_1DOF: return wigner_1dof_gaussian(p.hbar, c[0], c[1]);
    case NCP_WIGNER_4D: return wigner_4d(build(derived()), r0);
    case NCP_WIGNER_MARGINAL: return wigner_marginal_y(derived(), Vec2(c[2], c[3]));
    case NCP_WIGNER_MARGINAL_HBAR0: return wigner_marginal_hbar0(p, Vec2(c[2], c[3]));
    case NCP_WIGNER_EVOLVED: {
      const auto d = derived();
      return wigner_evolved(build(d), evolution(d, -t).a_t, r0);
    }
    case NCP_WIGNER_EVOLVED_MARGINAL: {
      const auto d = derived();
      return wigner_evolved_marginal(d, evolution(d, -t).a_t, r0);
    }
    case NCP_WIGNER_EVOLVED_MARGINAL_HBAR0: return wigner_evolved_marginal_hbar0(p, t, r0);
    case NCP_WIGNER_FINAL_1D: return wigner_final_1d_gaussian(p, c[3]);
  }
  throw InvalidArgumentError("unknown Wigner family");
}

}  // namespace

extern "C" {

const char* ncp_version(void) { return "1.0.0"; }

const char* ncp_last_error(void) { return g_last_error.c_str(); }

const char* ncp_status_string(ncp_status status) {
  switch (status) {
    case NCP_OK: return "ok";
    case NCP_ERR_DOMAIN: return "domain error";
    case NCP_ERR_OVERFLOW: return "overflow";
    case NCP_ERR_SINGULAR: return "singular";
    case NCP_ERR_BUDGET: return "budget exceeded";
    case NCP_ERR_MISSING_ASYMPTOTE: return "missing asymptote";
    case NCP_ERR_DIMENSION: return "dimension mismatch";
    case NCP_ERR_DIVISION_BY_ZERO: return "division by zero";
    case NCP_ERR_CONFIG: return "configuration error";
    case NCP_ERR_IO: return "I/O error";
    case NCP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NCP_ERR_INVALID_HANDLE: return "invalid handle";
    case NCP_ERR_UNKNOWN: return "unknown error";
  }
  return "unknown error";
}

ncp_status ncp_derive(const ncp_params* params, ncp_derived* out) {
  return guard([&] {
    need(out, "out");
    const auto d = derive(to_params(params));
    *out = {d.lambda_plus, d.lambda_minus, d.k_plus,     d.k_minus,     d.mu,         d.beta,
            d.n_norm,      d.gamma_plus,   d.gamma_minus, d.omega_plus, d.omega_minus};
  });
}

ncp_status ncp_mu_limits(const ncp_params* params, double* mu_theta0, double* mu_hbar0) {
  return guard([&] {
    need(mu_theta0, "mu_theta0");
    need(mu_hbar0, "mu_hbar0");
    const auto [a, b] = mu_limits(to_params(params));
    *mu_theta0 = a;
    *mu_hbar0 = b;
  });
}

ncp_status ncp_asymptote_ratio(const ncp_params* params, ncp_quantity quantity,
                               ncp_direction direction, double* out) {
  return guard([&] {
    need(out, "out");
    *out = asymptote_ratio(to_params(params), to_quantity(quantity), to_direction(direction));
  });
}

ncp_status ncp_phasemap_create(const ncp_params* params, ncp_phasemap* out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    const auto d = derive(to_params(params));
    *out = new ncp_phasemap_t{d, build(d)};
  });
}

void ncp_phasemap_destroy(ncp_phasemap map) { delete map; }

ncp_status ncp_phasemap_j(ncp_phasemap map, double j[16], double* j_det) {
  return guard([&] {
    if (!map) throw InvalidHandleError("phase map handle is NULL");
    need(j, "j");
    store(map->pm.j(), j);
    if (j_det) *j_det = map->pm.j_det();
  });
}

ncp_status ncp_phasemap_h(ncp_phasemap map, double h[16]) {
  return guard([&] {
    if (!map) throw InvalidHandleError("phase map handle is NULL");
    need(h, "h");
    store(map->pm.h(), h);
  });
}

ncp_status ncp_phasemap_overlap(ncp_phasemap map, const double r[4], const double r2[4],
                                double* out) {
  return guard([&] {
    if (!map) throw InvalidHandleError("phase map handle is NULL");
    need(r, "r");
    need(r2, "r2");
    need(out, "out");
    *out = overlap_kernel(map->pm, point(r), point(r2));
  });
}

ncp_status ncp_evolution(const ncp_params* params, double t, ncp_regime regime, double a[16]) {
  return guard([&] {
    need(a, "a");
    const ParamSet p = to_params(params);
    if (!std::isfinite(t)) throw DomainError("t must be finite");
    switch (regime) {
      case NCP_REGIME_EXACT: store(evolution(derive(p), t).a_t, a); return;
      case NCP_REGIME_THETA0: validate(p); store(evolution_theta0(p.omega, t).a_t, a); return;
      case NCP_REGIME_HBAR0: validate(p); store(evolution_hbar0(p.omega, t).a_t, a); return;
    }
    throw InvalidArgumentError("unknown regime");
  });
}

ncp_status ncp_function_create(const char* spec_json, ncp_function* out) {
  return guard([&] {
    need(spec_json, "spec_json");
    need(out, "out");
    *out = nullptr;
    Json spec;
    try {
      spec = Json::parse(spec_json);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("function: malformed JSON: ") + e.what());
    }
    *out = new ncp_function_t{function_from_json(spec)};
  });
}

void ncp_function_destroy(ncp_function fn) { delete fn; }

ncp_status ncp_function_eval(ncp_function fn, const double r[4], double* out) {
  return guard([&] {
    if (!fn) throw InvalidHandleError("function handle is NULL");
    need(r, "r");
    need(out, "out");
    *out = fn->f(point(r));
  });
}

ncp_status ncp_smooth(ncp_function fn, const ncp_params* params, const ncp_quadrature* rule,
                      const double* time, const double* points, size_t n, double* values,
                      double* std_errors) {
  return guard([&] {
    if (!fn) throw InvalidHandleError("function handle is NULL");
    if (n > 0) {
      need(points, "points");
      need(values, "values");
    }
    const auto d = derive(to_params(params));
    const auto pm = build(d);
    const auto q = to_rule(rule);
    const auto sf = time ? smooth_evolved(fn->f, d, pm, evolution(d, *time).a_t, q)
                         : smooth(fn->f, d, pm, q);
    std::vector<PhasePoint> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i] = point(points + 4 * i);
    const auto vals = sf.on(pts);
    for (size_t i = 0; i < n; ++i) {
      values[i] = vals[i].value;
      if (std_errors) std_errors[i] = vals[i].std_error;
    }
  });
}

ncp_status ncp_wigner_eval(ncp_wigner_family family, const ncp_params* params, double t,
                           const double center[4], const double* points, size_t n,
                           size_t point_dim, double* out) {
  return guard([&] {
    need(center, "center");
    if (n > 0) {
      need(points, "points");
      need(out, "out");
    }
    const auto w = wigner_for(family, to_params(params), t, center);
    if (point_dim != static_cast<size_t>(w.dim)) {
      throw DimensionError("this Wigner family takes points of dimension " + std::to_string(w.dim));
    }
    Eigen::VectorXd x(w.dim);
    for (size_t i = 0; i < n; ++i) {
      for (int k = 0; k < w.dim; ++k) x(k) = points[i * point_dim + k];
      out[i] = w(x);
    }
  });
}

ncp_status ncp_probe_cloud(size_t count, uint64_t seed, double lo, double hi, double* out) {
  return guard([&] {
    if (count > 0) need(out, "out");
    if (!(lo < hi)) throw DomainError("probe box needs lo < hi");
    const auto pts = probe_cloud(count, seed, lo, hi);
    for (size_t i = 0; i < count; ++i) {
      out[4 * i] = pts[i].x1;
      out[4 * i + 1] = pts[i].x2;
      out[4 * i + 2] = pts[i].y1;
      out[4 * i + 3] = pts[i].y2;
    }
  });
}

ncp_status ncp_run_config(const char* config_path, const char* only_experiment, int* all_passed) {
  return guard([&] {
    need(config_path, "config_path");
    need(all_passed, "all_passed");
    *all_passed = 0;
    const RunConfig c = load_config(config_path);
    const auto summary = run(c, only_experiment ? only_experiment : "");
    *all_passed = summary.all_passed ? 1 : 0;
  });
}

ncp_status ncp_run_appendix(const ncp_params* params, const char* out_dir, char** summary_json,
                            int* all_converged) {
  return guard([&] {
    need(all_converged, "all_converged");
    const ParamSet p = to_params(params);
    const auto reports = appendix_report(p.m, p.omega, 1, 6, p.hbar, p.theta);
    Json config{{"m", p.m}, {"omega", p.omega}, {"fixed_hbar", p.hbar}, {"fixed_theta", p.theta},
                {"first", 1}, {"last", 6}};
    bool ok = true;
    Json list = Json::array();
    for (const auto& r : reports) {
      ok = ok && r.verdict == Verdict::Converged;
      Json item{{"experiment", r.experiment}, {"verdict", std::string(to_string(r.verdict))},
                {"target", r.target_description}};
      for (const auto& [k, v] : r.scalars) item[k] = v;
      list.push_back(item);
    }
    if (out_dir) write_experiment(out_dir, "appendix", config, reports);
    *all_converged = ok ? 1 : 0;
    if (summary_json) {
      *summary_json = nullptr;
      const Json s{{"report_count", reports.size()}, {"all_converged", ok}, {"reports", list}};
      *summary_json = heap_copy(s.dump(2));
    }
  });
}

ncp_status ncp_render_heatmap(const char* grid_csv_path, const char* svg_path, const char* title) {
  return guard([&] {
    need(grid_csv_path, "grid_csv_path");
    need(svg_path, "svg_path");
    const auto g = read_grid_csv(grid_csv_path);
    write_text(svg_path, render_heatmap_svg(g, title ? title : ""));
  });
}

void ncp_string_free(char* s) { std::free(s); }

}  // extern "C"
