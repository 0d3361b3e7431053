/*
 * ptgl — coupled gain/loss oscillator pair: Gaussian dynamics, correlation
 * measures and stability analysis behind a plain C interface.
 *
 * Conventions:
 *   - quadrature ordering (x_L, p_L, x_G, p_G); vacuum covariance = identity
 *   - 4x4 covariance matrices passed as double[16], row-major
 *   - all entropies and correlation measures in nats
 *   - every function returning ptgl_status sets a thread-local message
 *     retrievable with ptgl_last_error() on failure
 */

#ifndef PTGL_H
#define PTGL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ptgl_status {
  PTGL_OK = 0,
  PTGL_ERR_INVALID_ARG = 1,
  PTGL_ERR_INVALID_STATE = 2,
  PTGL_ERR_OVERFLOW = 3,
  PTGL_ERR_PHASE_MISMATCH = 4,
  PTGL_ERR_DOMAIN = 5,
  PTGL_ERR_TRUNCATION = 6,
  PTGL_ERR_IO = 7,
  PTGL_ERR_INTERNAL = 8
} ptgl_status;

const char* ptgl_status_name(ptgl_status s);
const char* ptgl_last_error(void);

/* --- model ---------------------------------------------------------------*/

typedef struct ptgl_model ptgl_model;

/* g >= 0 (coherent coupling), gamma_loss >= 0, gamma_gain >= 0. */
ptgl_status ptgl_model_create(double g, double gamma_loss, double gamma_gain,
                              ptgl_model** out);
void ptgl_model_free(ptgl_model* m);

ptgl_status ptgl_model_drift(const ptgl_model* m, double out16[16]);
ptgl_status ptgl_model_diffusion(const ptgl_model* m, double out16[16]);
/* 2x2 mean-field generator, row-major, split into real/imaginary parts. */
ptgl_status ptgl_model_hamiltonian(const ptgl_model* m, double out_re[4],
                                   double out_im[4]);
/* Eigenvalues sorted by (Re, Im) descending. */
ptgl_status ptgl_model_h_eigenvalues(const ptgl_model* m, double out_re[2],
                                     double out_im[2]);

/* --- propagation ---------------------------------------------------------*/

ptgl_status ptgl_propagate_exact(const ptgl_model* m, const double sigma0[16],
                                 double t, double out16[16]);
ptgl_status ptgl_propagate_rk4(const ptgl_model* m, const double sigma0[16],
                               double t, double step, double out16[16]);
ptgl_status ptgl_evolve_mean_field(const ptgl_model* m,
                                   const double psi0_re[2],
                                   const double psi0_im[2], double t,
                                   double out_re[2], double out_im[2]);

/* --- correlation measures -------------------------------------------------*/

typedef enum ptgl_entropy_kind {
  PTGL_ENTROPY_RENYI2 = 0,
  PTGL_ENTROPY_VON_NEUMANN = 1
} ptgl_entropy_kind;

typedef enum ptgl_direction {
  PTGL_DISCORD_LG = 0, /* measurement on the gain mode */
  PTGL_DISCORD_GL = 1  /* measurement on the loss mode */
} ptgl_direction;

typedef struct ptgl_record {
  double t;
  double S;
  double S_L;
  double S_G;
  double I;
  double D_LG;
  double D_GL;
  double nu_pt_min;
} ptgl_record;

ptgl_status ptgl_correlations(const double sigma[16], ptgl_entropy_kind kind,
                              ptgl_record* out);
ptgl_status ptgl_discord_heterodyne(const double sigma[16],
                                    ptgl_direction dir,
                                    ptgl_entropy_kind kind, double* out);
/* Minimum over Gaussian measurements; also reports the optimal squeezing
 * r and axis phi of the measurement covariance. */
ptgl_status ptgl_discord_minimized(const double sigma[16], ptgl_direction dir,
                                   ptgl_entropy_kind kind, double* value,
                                   double* r, double* phi);
ptgl_status ptgl_symplectic_eigenvalues(const double sigma[16],
                                        double* nu_max, double* nu_min);
ptgl_status ptgl_ppt_min_eigenvalue(const double sigma[16], double* out);

/* --- regime classification -------------------------------------------------*/

typedef enum ptgl_pt_phase {
  PTGL_PHASE_UNBROKEN = 0,
  PTGL_PHASE_EXCEPTIONAL = 1,
  PTGL_PHASE_BROKEN = 2,
  PTGL_PHASE_NOT_APPLICABLE = 3
} ptgl_pt_phase;

typedef enum ptgl_region {
  PTGL_REGION_I = 0,
  PTGL_REGION_II = 1,
  PTGL_REGION_III = 2,
  PTGL_REGION_IV = 3,
  PTGL_REGION_V = 4,
  PTGL_REGION_BOUNDARY = 5
} ptgl_region;

typedef enum ptgl_fixed_point {
  PTGL_FP_STABLE_SPIRAL = 0,
  PTGL_FP_STABLE_NODE = 1,
  PTGL_FP_UNSTABLE_SPIRAL = 2,
  PTGL_FP_UNSTABLE_NODE = 3,
  PTGL_FP_SADDLE = 4,
  PTGL_FP_CENTER = 5,
  PTGL_FP_DEGENERATE = 6
} ptgl_fixed_point;

typedef struct ptgl_regime {
  int on_pt_line;
  ptgl_pt_phase pt_phase;
  ptgl_region region;
  ptgl_fixed_point fixed_point;
  double lambda_re[2]; /* distinct drift eigenvalues, (Re, Im) descending */
  double lambda_im[2];
} ptgl_regime;

ptgl_status ptgl_classify(const ptgl_model* m, double tol, ptgl_regime* out);
const char* ptgl_region_name(ptgl_region r);
const char* ptgl_fixed_point_name(ptgl_fixed_point f);
const char* ptgl_pt_phase_name(ptgl_pt_phase p);

/* --- asymptotic laws on the balanced line ----------------------------------*/

ptgl_status ptgl_asymptotic_up(const ptgl_model* m, double t,
                               double* mutual_info_limit, double* discord,
                               double* oscillation_frequency);
ptgl_status ptgl_asymptotic_bp(const ptgl_model* m, double t,
                               double* discord_lg_limit,
                               double* discord_gl_limit,
                               double* mutual_info_slope);
ptgl_status ptgl_asymptotic_ep(const ptgl_model* m, double t,
                               double* mutual_info, double* discord);

/* --- trajectories from the vacuum/coherent initial state -------------------*/

typedef struct ptgl_trajectory ptgl_trajectory;

/* integrator: 0 = exact (matrix exponential through the reduced
 * phase-covariant system; stable at any horizon), 1 = fixed-step RK4 on the
 * raw covariance (rk4_step ignored for exact). */
ptgl_status ptgl_trajectory_run(const ptgl_model* m, double t_final,
                                int n_samples, int integrator,
                                double rk4_step, ptgl_entropy_kind kind,
                                ptgl_trajectory** out);
int ptgl_trajectory_length(const ptgl_trajectory* t);
ptgl_status ptgl_trajectory_record(const ptgl_trajectory* t, int index,
                                   ptgl_record* out);
ptgl_status ptgl_trajectory_covariance(const ptgl_trajectory* t, int index,
                                       double out16[16]);
void ptgl_trajectory_free(ptgl_trajectory* t);

/* --- whole-command renderers (CLI backend) ---------------------------------*/

typedef enum ptgl_format { PTGL_FORMAT_CSV = 0, PTGL_FORMAT_JSON = 1 } ptgl_format;

ptgl_status ptgl_render_trajectory(const ptgl_model* m, double t_final,
                                   int n_samples, int integrator,
                                   double rk4_step, ptgl_entropy_kind kind,
                                   ptgl_format format, char** out);
ptgl_status ptgl_render_sweep_pt_line(double g, double gamma_min,
                                      double gamma_max, int n_points,
                                      double t_eval, int n_threads,
                                      ptgl_format format, char** out);
ptgl_status ptgl_render_phase_diagram(double g, double gamma_max, int grid,
                                      double t_final, int n_threads,
                                      ptgl_format format, char** out);
/* all_pass: 1 when every check passed. */
ptgl_status ptgl_render_asymptotics_check(double g, char** out_json,
                                          int* all_pass);
ptgl_status ptgl_render_oracle_check(double g, int cutoff, double t_final,
                                     double step, char** out_json,
                                     int* all_pass);
void ptgl_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PTGL_H */
