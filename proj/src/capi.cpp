#include "ptgl.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "correlations.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "gaussian.hpp"
#include "model.hpp"
#include "pt_analysis.hpp"
#include "reports.hpp"

struct ptgl_model {
  ptgl::SystemParams params;
};

struct ptgl_trajectory {
  std::vector<ptgl::CorrelationRecord> records;
  std::vector<ptgl::Mat4> covariances;
};

namespace {

thread_local std::string g_last_error;

ptgl_status status_of(const ptgl::Error& e) {
  using ptgl::ErrorKind;
  switch (e.kind()) {
    case ErrorKind::InvalidArg: return PTGL_ERR_INVALID_ARG;
    case ErrorKind::InvalidState: return PTGL_ERR_INVALID_STATE;
    case ErrorKind::Overflow: return PTGL_ERR_OVERFLOW;
    case ErrorKind::PhaseMismatch: return PTGL_ERR_PHASE_MISMATCH;
    case ErrorKind::DomainError: return PTGL_ERR_DOMAIN;
    case ErrorKind::Truncation: return PTGL_ERR_TRUNCATION;
    case ErrorKind::Io: return PTGL_ERR_IO;
  }
  return PTGL_ERR_INTERNAL;
}

template <typename Fn>
ptgl_status guarded(Fn&& fn) {
  try {
    fn();
    return PTGL_OK;
  } catch (const ptgl::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PTGL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PTGL_ERR_INTERNAL;
  }
}

ptgl::Mat4 to_matrix(const double sigma[16]) {
  ptgl::Mat4 m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = sigma[4 * i + j];
  }
  return m;
}

void from_matrix(const ptgl::Mat4& m, double out[16]) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out[4 * i + j] = m(i, j);
  }
}

ptgl::EntropyKind to_kind(ptgl_entropy_kind k) {
  return k == PTGL_ENTROPY_RENYI2 ? ptgl::EntropyKind::Renyi2
                                  : ptgl::EntropyKind::VonNeumann;
}

ptgl::Direction to_direction(ptgl_direction d) {
  return d == PTGL_DISCORD_LG ? ptgl::Direction::LG : ptgl::Direction::GL;
}

ptgl_record to_c_record(const ptgl::CorrelationRecord& r) {
  return ptgl_record{r.t, r.S, r.S_L, r.S_G, r.I, r.D_LG, r.D_GL, r.nu_pt_min};
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ptgl_status require(bool cond, const char* msg) {
  if (cond) return PTGL_OK;
  g_last_error = msg;
  return PTGL_ERR_INVALID_ARG;
}

}  // namespace

extern "C" {

const char* ptgl_status_name(ptgl_status s) {
  switch (s) {
    case PTGL_OK: return "ok";
    case PTGL_ERR_INVALID_ARG: return "invalid_argument";
    case PTGL_ERR_INVALID_STATE: return "invalid_state";
    case PTGL_ERR_OVERFLOW: return "overflow";
    case PTGL_ERR_PHASE_MISMATCH: return "phase_mismatch";
    case PTGL_ERR_DOMAIN: return "domain_error";
    case PTGL_ERR_TRUNCATION: return "truncation";
    case PTGL_ERR_IO: return "io_error";
    case PTGL_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* ptgl_last_error(void) { return g_last_error.c_str(); }

ptgl_status ptgl_model_create(double g, double gamma_loss, double gamma_gain,
                              ptgl_model** out) {
  if (ptgl_status s = require(out != nullptr, "null output pointer"); s) return s;
  return guarded([&] {
    ptgl::SystemParams p{g, gamma_loss, gamma_gain};
    p.validate();
    *out = new ptgl_model{p};
  });
}

void ptgl_model_free(ptgl_model* m) { delete m; }

ptgl_status ptgl_model_drift(const ptgl_model* m, double out16[16]) {
  if (ptgl_status s = require(m && out16, "null pointer"); s) return s;
  return guarded([&] { from_matrix(ptgl::build_drift(m->params), out16); });
}

ptgl_status ptgl_model_diffusion(const ptgl_model* m, double out16[16]) {
  if (ptgl_status s = require(m && out16, "null pointer"); s) return s;
  return guarded([&] { from_matrix(ptgl::build_diffusion(m->params), out16); });
}

ptgl_status ptgl_model_hamiltonian(const ptgl_model* m, double out_re[4],
                                   double out_im[4]) {
  if (ptgl_status s = require(m && out_re && out_im, "null pointer"); s)
    return s;
  return guarded([&] {
    const ptgl::Mat2c h = ptgl::build_mean_field_hamiltonian(m->params);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        out_re[2 * i + j] = h(i, j).real();
        out_im[2 * i + j] = h(i, j).imag();
      }
    }
  });
}

ptgl_status ptgl_model_h_eigenvalues(const ptgl_model* m, double out_re[2],
                                     double out_im[2]) {
  if (ptgl_status s = require(m && out_re && out_im, "null pointer"); s)
    return s;
  return guarded([&] {
    const auto eig = ptgl::h_eigenvalues(m->params);
    for (int i = 0; i < 2; ++i) {
      out_re[i] = eig[i].real();
      out_im[i] = eig[i].imag();
    }
  });
}

ptgl_status ptgl_propagate_exact(const ptgl_model* m, const double sigma0[16],
                                 double t, double out16[16]) {
  if (ptgl_status s = require(m && sigma0 && out16, "null pointer"); s)
    return s;
  return guarded([&] {
    from_matrix(ptgl::propagate_exact(m->params, to_matrix(sigma0), t), out16);
  });
}

ptgl_status ptgl_propagate_rk4(const ptgl_model* m, const double sigma0[16],
                               double t, double step, double out16[16]) {
  if (ptgl_status s = require(m && sigma0 && out16, "null pointer"); s)
    return s;
  return guarded([&] {
    from_matrix(ptgl::propagate_rk4(m->params, to_matrix(sigma0), t, step),
                out16);
  });
}

ptgl_status ptgl_evolve_mean_field(const ptgl_model* m,
                                   const double psi0_re[2],
                                   const double psi0_im[2], double t,
                                   double out_re[2], double out_im[2]) {
  if (ptgl_status s =
          require(m && psi0_re && psi0_im && out_re && out_im, "null pointer");
      s)
    return s;
  return guarded([&] {
    const ptgl::Vec2c psi0(ptgl::Complex(psi0_re[0], psi0_im[0]),
                           ptgl::Complex(psi0_re[1], psi0_im[1]));
    const ptgl::Vec2c psi = ptgl::evolve_mean_field(m->params, psi0, t);
    for (int i = 0; i < 2; ++i) {
      out_re[i] = psi(i).real();
      out_im[i] = psi(i).imag();
    }
  });
}

ptgl_status ptgl_correlations(const double sigma[16], ptgl_entropy_kind kind,
                              ptgl_record* out) {
  if (ptgl_status s = require(sigma && out, "null pointer"); s) return s;
  return guarded([&] {
    *out = to_c_record(ptgl::correlations(to_matrix(sigma), 0.0, to_kind(kind)));
  });
}

ptgl_status ptgl_discord_heterodyne(const double sigma[16],
                                    ptgl_direction dir,
                                    ptgl_entropy_kind kind, double* out) {
  if (ptgl_status s = require(sigma && out, "null pointer"); s) return s;
  return guarded([&] {
    *out = ptgl::discord_heterodyne(to_matrix(sigma), to_direction(dir),
                                    to_kind(kind));
  });
}

ptgl_status ptgl_discord_minimized(const double sigma[16], ptgl_direction dir,
                                   ptgl_entropy_kind kind, double* value,
                                   double* r, double* phi) {
  if (ptgl_status s = require(sigma && value, "null pointer"); s) return s;
  return guarded([&] {
    const ptgl::DiscordMinimum dm = ptgl::discord_minimized(
        to_matrix(sigma), to_direction(dir), to_kind(kind));
    *value = dm.value;
    if (r) *r = dm.argmin.r;
    if (phi) *phi = dm.argmin.phi;
  });
}

ptgl_status ptgl_symplectic_eigenvalues(const double sigma[16],
                                        double* nu_max, double* nu_min) {
  if (ptgl_status s = require(sigma && nu_max && nu_min, "null pointer"); s)
    return s;
  return guarded([&] {
    const auto nu = ptgl::symplectic_eigenvalues(to_matrix(sigma));
    *nu_max = nu[0];
    *nu_min = nu[1];
  });
}

ptgl_status ptgl_ppt_min_eigenvalue(const double sigma[16], double* out) {
  if (ptgl_status s = require(sigma && out, "null pointer"); s) return s;
  return guarded([&] { *out = ptgl::ppt_min_eigenvalue(to_matrix(sigma)); });
}

ptgl_status ptgl_classify(const ptgl_model* m, double tol, ptgl_regime* out) {
  if (ptgl_status s = require(m && out, "null pointer"); s) return s;
  return guarded([&] {
    const ptgl::RegimeClass rc = ptgl::classify(m->params, tol);
    out->on_pt_line = rc.on_pt_line ? 1 : 0;
    out->pt_phase = static_cast<ptgl_pt_phase>(rc.pt_phase);
    out->region = static_cast<ptgl_region>(rc.region);
    out->fixed_point = static_cast<ptgl_fixed_point>(rc.fixed_point);
    for (int i = 0; i < 2; ++i) {
      out->lambda_re[i] = rc.drift_eigenvalues[i].real();
      out->lambda_im[i] = rc.drift_eigenvalues[i].imag();
    }
  });
}

const char* ptgl_region_name(ptgl_region r) {
  return ptgl::to_string(static_cast<ptgl::Region>(r));
}
const char* ptgl_fixed_point_name(ptgl_fixed_point f) {
  return ptgl::to_string(static_cast<ptgl::FixedPointType>(f));
}
const char* ptgl_pt_phase_name(ptgl_pt_phase p) {
  return ptgl::to_string(static_cast<ptgl::PtPhase>(p));
}

ptgl_status ptgl_asymptotic_up(const ptgl_model* m, double t,
                               double* mutual_info_limit, double* discord,
                               double* oscillation_frequency) {
  if (ptgl_status s = require(m != nullptr, "null model"); s) return s;
  return guarded([&] {
    const ptgl::UnbrokenAsymptotics a = ptgl::asymptotic_up(m->params, t);
    if (mutual_info_limit) *mutual_info_limit = a.mutual_information_limit;
    if (discord) *discord = a.discord;
    if (oscillation_frequency)
      *oscillation_frequency = a.oscillation_frequency;
  });
}

ptgl_status ptgl_asymptotic_bp(const ptgl_model* m, double t,
                               double* discord_lg_limit,
                               double* discord_gl_limit,
                               double* mutual_info_slope) {
  if (ptgl_status s = require(m != nullptr, "null model"); s) return s;
  return guarded([&] {
    const ptgl::BrokenAsymptotics a = ptgl::asymptotic_bp(m->params, t);
    if (discord_lg_limit) *discord_lg_limit = a.discord_lg_limit;
    if (discord_gl_limit) *discord_gl_limit = a.discord_gl_limit;
    if (mutual_info_slope) *mutual_info_slope = a.mutual_information_slope;
  });
}

ptgl_status ptgl_asymptotic_ep(const ptgl_model* m, double t,
                               double* mutual_info, double* discord) {
  if (ptgl_status s = require(m != nullptr, "null model"); s) return s;
  return guarded([&] {
    const ptgl::ExceptionalAsymptotics a = ptgl::asymptotic_ep(m->params, t);
    if (mutual_info) *mutual_info = a.mutual_information;
    if (discord) *discord = a.discord;
  });
}

ptgl_status ptgl_trajectory_run(const ptgl_model* m, double t_final,
                                int n_samples, int integrator,
                                double rk4_step, ptgl_entropy_kind kind,
                                ptgl_trajectory** out) {
  if (ptgl_status s = require(m && out, "null pointer"); s) return s;
  return guarded([&] {
    auto traj = std::make_unique<ptgl_trajectory>();
    if (integrator == 0) {
      const auto states = ptgl::sample_reduced(m->params, t_final, n_samples);
      traj->records.reserve(states.size());
      traj->covariances.reserve(states.size());
      for (const auto& s : states) {
        traj->records.push_back(ptgl::correlations(s, to_kind(kind)));
        traj->covariances.push_back(s.covariance());
      }
    } else {
      ptgl::TrajectoryConfig cfg;
      cfg.t_final = t_final;
      cfg.n_samples = n_samples;
      cfg.integrator = ptgl::Integrator::Rk4;
      cfg.rk4_step = rk4_step;
      const ptgl::Trajectory t =
          ptgl::sample_trajectory(m->params, ptgl::GaussianState{}, cfg);
      for (std::size_t k = 0; k < t.states.size(); ++k) {
        traj->records.push_back(
            ptgl::correlations(t.states[k].cov, t.times[k], to_kind(kind)));
        traj->covariances.push_back(t.states[k].cov);
      }
    }
    *out = traj.release();
  });
}

int ptgl_trajectory_length(const ptgl_trajectory* t) {
  return t ? static_cast<int>(t->records.size()) : 0;
}

ptgl_status ptgl_trajectory_record(const ptgl_trajectory* t, int index,
                                   ptgl_record* out) {
  if (ptgl_status s = require(t && out, "null pointer"); s) return s;
  if (index < 0 || index >= static_cast<int>(t->records.size())) {
    g_last_error = "trajectory index out of range";
    return PTGL_ERR_INVALID_ARG;
  }
  *out = to_c_record(t->records[index]);
  return PTGL_OK;
}

ptgl_status ptgl_trajectory_covariance(const ptgl_trajectory* t, int index,
                                       double out16[16]) {
  if (ptgl_status s = require(t && out16, "null pointer"); s) return s;
  if (index < 0 || index >= static_cast<int>(t->covariances.size())) {
    g_last_error = "trajectory index out of range";
    return PTGL_ERR_INVALID_ARG;
  }
  from_matrix(t->covariances[index], out16);
  return PTGL_OK;
}

void ptgl_trajectory_free(ptgl_trajectory* t) { delete t; }

ptgl_status ptgl_render_trajectory(const ptgl_model* m, double t_final,
                                   int n_samples, int integrator,
                                   double rk4_step, ptgl_entropy_kind kind,
                                   ptgl_format format, char** out) {
  if (ptgl_status s = require(m && out, "null pointer"); s) return s;
  return guarded([&] {
    ptgl::reports::TrajectoryOptions o;
    o.params = m->params;
    o.t_final = t_final;
    o.n_samples = n_samples;
    o.integrator =
        integrator == 0 ? ptgl::Integrator::Exact : ptgl::Integrator::Rk4;
    o.rk4_step = rk4_step;
    o.kind = to_kind(kind);
    *out = dup_string(ptgl::reports::render_trajectory(
        o, format == PTGL_FORMAT_CSV ? ptgl::reports::Format::Csv
                                     : ptgl::reports::Format::Json));
  });
}

ptgl_status ptgl_render_sweep_pt_line(double g, double gamma_min,
                                      double gamma_max, int n_points,
                                      double t_eval, int n_threads,
                                      ptgl_format format, char** out) {
  if (ptgl_status s = require(out != nullptr, "null pointer"); s) return s;
  return guarded([&] {
    ptgl::reports::SweepOptions o;
    o.g = g;
    o.gamma_min = gamma_min;
    o.gamma_max = gamma_max;
    o.n_points = n_points;
    o.t_eval = t_eval;
    o.n_threads = n_threads;
    *out = dup_string(ptgl::reports::render_sweep(
        o, format == PTGL_FORMAT_CSV ? ptgl::reports::Format::Csv
                                     : ptgl::reports::Format::Json));
  });
}

ptgl_status ptgl_render_phase_diagram(double g, double gamma_max, int grid,
                                      double t_final, int n_threads,
                                      ptgl_format format, char** out) {
  if (ptgl_status s = require(out != nullptr, "null pointer"); s) return s;
  return guarded([&] {
    ptgl::reports::PhaseDiagramOptions o;
    o.g = g;
    o.gamma_max = gamma_max;
    o.grid = grid;
    o.t_final = t_final;
    o.n_threads = n_threads;
    *out = dup_string(ptgl::reports::render_phase_diagram(
        o, format == PTGL_FORMAT_CSV ? ptgl::reports::Format::Csv
                                     : ptgl::reports::Format::Json));
  });
}

ptgl_status ptgl_render_asymptotics_check(double g, char** out_json,
                                          int* all_pass) {
  if (ptgl_status s = require(out_json != nullptr, "null pointer"); s)
    return s;
  return guarded([&] {
    const ptgl::reports::CheckReport rep = ptgl::reports::asymptotics_checks(g);
    *out_json = dup_string(rep.to_json());
    if (all_pass) *all_pass = rep.all_pass() ? 1 : 0;
  });
}

ptgl_status ptgl_render_oracle_check(double g, int cutoff, double t_final,
                                     double step, char** out_json,
                                     int* all_pass) {
  if (ptgl_status s = require(out_json != nullptr, "null pointer"); s)
    return s;
  return guarded([&] {
    const ptgl::reports::CheckReport rep =
        ptgl::reports::oracle_checks(g, cutoff, t_final, step);
    *out_json = dup_string(rep.to_json());
    if (all_pass) *all_pass = rep.all_pass() ? 1 : 0;
  });
}

void ptgl_string_free(char* s) { delete[] s; }

}  // extern "C"
