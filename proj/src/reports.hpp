#pragma once

#include <functional>
#include <string>
#include <vector>

#include "correlations.hpp"
#include "pt_analysis.hpp"

namespace ptgl::reports {

enum class Format { Csv, Json };

/// %.17g — enough digits for exact round-trips, so identical configurations
/// produce byte-identical files.
std::string format_double(double v);

struct TrajectoryOptions {
  SystemParams params;
  double t_final = 50.0;
  int n_samples = 500;
  Integrator integrator = Integrator::Exact;
  double rk4_step = 1e-3;
  EntropyKind kind = EntropyKind::Renyi2;
};

/// Correlation records from the vacuum/coherent initial state σ0 = 1. The
/// exact integrator evaluates through the reduced phase-covariant system
/// (stable at any horizon); the RK4 integrator propagates the raw covariance
/// and is intended for moderate horizons and cross-validation.
std::vector<CorrelationRecord> trajectory_records(const TrajectoryOptions& o);
std::string render_trajectory(const TrajectoryOptions& o, Format f);

struct SweepOptions {
  double g = 1.0;
  double gamma_min = 0.05;  // absolute rates; CLI scales from units of g
  double gamma_max = 3.0;
  int n_points = 60;
  double t_eval = 60.0;
  int n_threads = 0;  // 0 = hardware concurrency
};

struct SweepRow {
  double gamma_over_g;
  double d_lg_formula;  // stationary law for γ > g, 0 at or below
  double d_gl_formula;
  double d_lg_measured;  // long-time trajectory value at t_eval
  double d_gl_measured;
};

std::vector<SweepRow> sweep_pt_line(const SweepOptions& o);
std::string render_sweep(const SweepOptions& o, Format f);

struct PhaseDiagramOptions {
  double g = 1.0;
  double gamma_max = 3.0;
  int grid = 50;  // grid x grid points over (0, gamma_max]²
  double t_final = 60.0;
  int n_samples = 241;
  int n_threads = 0;
};

struct PhaseDiagramRow {
  double gamma_loss;
  double gamma_gain;
  RegimeClass regime;
  ScalingForm mutual_info_form;
  double discord_longtime;  // D_LG at the horizon
};

std::vector<PhaseDiagramRow> phase_diagram(const PhaseDiagramOptions& o);
std::string render_phase_diagram(const PhaseDiagramOptions& o, Format f);

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int criterion = 0;  // acceptance criterion this check supports (0 = extra)
};

struct CheckReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  std::string to_json() const;
};

/// The long-time law battery on and off the balanced line: unbroken-phase
/// mutual-information plateau and discord decay, broken-phase stationary
/// discord and linear mutual information, exceptional-point scalings, the
/// heterodyne discord identity, the critical exponent at the transition,
/// entropy-balance scalings and the entanglement threshold.
CheckReport asymptotics_checks(double g);

/// Truncated-Fock cross-validation of the Gaussian layer.
CheckReport oracle_checks(double g, int cutoff = 12, double t_final = 2.0,
                          double step = 1e-3);

/// Runs fn(i) for i in [0, n) on up to n_threads workers; results must be
/// written by index so the output order is deterministic.
void parallel_for(int n, int n_threads, const std::function<void(int)>& fn);

}  // namespace ptgl::reports
