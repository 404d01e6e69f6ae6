/*
 * ncphase: anti-Wick quantize/de-quantize machinery for two oscillators on a
 * non-commutative configuration space, exposed as a plain C interface.
 *
 * Conventions
 *   - Every function returns an ncp_status; on failure a human-readable
 *     message is available from ncp_last_error() on the calling thread.
 *   - Phase points are double[4] laid out as (x1, x2, y1, y2).
 *   - 4x4 matrices are double[16] in row-major order.
 *   - Opaque handles are created by *_create and released by *_destroy;
 *     destroying a NULL handle is a no-op.
 */
#ifndef NCPHASE_NCPHASE_H
#define NCPHASE_NCPHASE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NCPHASE_BUILDING)
#    define NCP_API __declspec(dllexport)
#  else
#    define NCP_API __declspec(dllimport)
#  endif
#else
#  define NCP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ncp_status {
  NCP_OK = 0,
  NCP_ERR_DOMAIN = 1,
  NCP_ERR_OVERFLOW = 2,
  NCP_ERR_SINGULAR = 3,
  NCP_ERR_BUDGET = 4,
  NCP_ERR_MISSING_ASYMPTOTE = 5,
  NCP_ERR_DIMENSION = 6,
  NCP_ERR_DIVISION_BY_ZERO = 7,
  NCP_ERR_CONFIG = 8,
  NCP_ERR_IO = 9,
  NCP_ERR_INVALID_ARGUMENT = 10,
  NCP_ERR_INVALID_HANDLE = 11,
  NCP_ERR_UNKNOWN = 99
} ncp_status;

typedef struct ncp_params {
  double m;
  double omega;
  double hbar;
  double theta;
} ncp_params;

typedef struct ncp_derived {
  double lambda_plus;
  double lambda_minus;
  double k_plus;
  double k_minus;
  double mu;
  double beta;
  double n_norm;
  double gamma_plus;
  double gamma_minus;
  double omega_plus;
  double omega_minus;
} ncp_derived;

typedef enum ncp_quantity {
  NCP_Q_LAMBDA_PLUS = 0,
  NCP_Q_LAMBDA_MINUS,
  NCP_Q_SUM_LAMBDA,
  NCP_Q_MU,
  NCP_Q_K_PLUS,
  NCP_Q_K_MINUS,
  NCP_Q_OMEGA_PLUS,
  NCP_Q_OMEGA_MINUS,
  NCP_Q_GAMMA_PM
} ncp_quantity;

typedef enum ncp_direction { NCP_THETA_TO_0 = 0, NCP_HBAR_TO_0 = 1 } ncp_direction;

typedef enum ncp_regime {
  NCP_REGIME_EXACT = 0,
  NCP_REGIME_THETA0 = 1,
  NCP_REGIME_HBAR0 = 2
} ncp_regime;

typedef enum ncp_quadrature_kind {
  NCP_GAUSS_HERMITE_TENSOR = 0,
  NCP_MONTE_CARLO = 1
} ncp_quadrature_kind;

typedef struct ncp_quadrature {
  ncp_quadrature_kind kind;
  int order_per_axis; /* tensor rule, 2..64 */
  uint64_t samples;   /* Monte Carlo, >= 1000 */
  uint64_t seed;      /* Monte Carlo */
} ncp_quadrature;

/*
 * Wigner families. `center` is always a full phase point r0; `points` have
 * `point_dim` coordinates each:
 *   1DOF                    (q, p), center (q0, p0) taken from center[0], center[1]
 *   4D, EVOLVED             (x1, x2, y1, y2)
 *   MARGINAL*, EVOLVED_MARGINAL*  (y1, y2)
 *   FINAL_1D                (y2), center y20 taken from center[3]
 */
typedef enum ncp_wigner_family {
  NCP_WIGNER_1DOF = 0,
  NCP_WIGNER_4D,
  NCP_WIGNER_MARGINAL,
  NCP_WIGNER_MARGINAL_HBAR0,
  NCP_WIGNER_EVOLVED,
  NCP_WIGNER_EVOLVED_MARGINAL,
  NCP_WIGNER_EVOLVED_MARGINAL_HBAR0,
  NCP_WIGNER_FINAL_1D
} ncp_wigner_family;

typedef struct ncp_phasemap_t* ncp_phasemap;
typedef struct ncp_function_t* ncp_function;

NCP_API const char* ncp_version(void);
NCP_API const char* ncp_last_error(void);
NCP_API const char* ncp_status_string(ncp_status status);

/* params */
NCP_API ncp_status ncp_derive(const ncp_params* params, ncp_derived* out);
NCP_API ncp_status ncp_mu_limits(const ncp_params* params, double* mu_theta0, double* mu_hbar0);
NCP_API ncp_status ncp_asymptote_ratio(const ncp_params* params, ncp_quantity quantity,
                                       ncp_direction direction, double* out);

/* phasemap */
NCP_API ncp_status ncp_phasemap_create(const ncp_params* params, ncp_phasemap* out);
NCP_API void ncp_phasemap_destroy(ncp_phasemap map);
NCP_API ncp_status ncp_phasemap_j(ncp_phasemap map, double j[16], double* j_det);
NCP_API ncp_status ncp_phasemap_h(ncp_phasemap map, double h[16]);
NCP_API ncp_status ncp_phasemap_overlap(ncp_phasemap map, const double r[4], const double r2[4],
                                        double* out);

/* dynamics: A_t in the requested regime (theta0/hbar0 use omega only) */
NCP_API ncp_status ncp_evolution(const ncp_params* params, double t, ncp_regime regime,
                                 double a[16]);

/*
 * Test functions are built from a JSON constructor spec, e.g.
 *   {"kind":"gaussian_bump","center":[0,0,0,0],"widths":[1,1,1,1]}
 *   {"kind":"sigmoid_times_gaussian","x_scale":1,"y_center":[0,0],"y_widths":[1,1]}
 *   {"kind":"constant","value":1}
 */
NCP_API ncp_status ncp_function_create(const char* spec_json, ncp_function* out);
NCP_API void ncp_function_destroy(ncp_function fn);
NCP_API ncp_status ncp_function_eval(ncp_function fn, const double r[4], double* out);

/*
 * Evaluates the smoothed function F_{hbar,theta} at n points (n*4 doubles).
 * When `time` is non-NULL the time-evolved map with A_t is used.
 * `std_errors` may be NULL; it is filled with zeros for tensor rules.
 */
NCP_API ncp_status ncp_smooth(ncp_function fn, const ncp_params* params,
                              const ncp_quadrature* rule, const double* time,
                              const double* points, size_t n, double* values,
                              double* std_errors);

NCP_API ncp_status ncp_wigner_eval(ncp_wigner_family family, const ncp_params* params, double t,
                                   const double center[4], const double* points, size_t n,
                                   size_t point_dim, double* out);

/* Low-discrepancy probe cloud in [lo, hi]^4, count*4 doubles. */
NCP_API ncp_status ncp_probe_cloud(size_t count, uint64_t seed, double lo, double hi,
                                   double* out);

/*
 * Runs every experiment of a JSON run config (or only `only_experiment` when
 * non-NULL). `all_passed` is 1 iff every non-exploratory report converged.
 */
NCP_API ncp_status ncp_run_config(const char* config_path, const char* only_experiment,
                                  int* all_passed);

/*
 * Appendix asymptotics suite at the given (m, omega); hbar/theta of `params`
 * are the values held fixed while the other parameter shrinks. Writes
 * report.json/errors.csv to out_dir when non-NULL. `summary_json` (nullable)
 * receives a heap string to release with ncp_string_free.
 */
NCP_API ncp_status ncp_run_appendix(const ncp_params* params, const char* out_dir,
                                    char** summary_json, int* all_converged);

NCP_API ncp_status ncp_render_heatmap(const char* grid_csv_path, const char* svg_path,
                                      const char* title);

NCP_API void ncp_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* NCPHASE_NCPHASE_H */
