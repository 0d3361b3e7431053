#pragma once

#include <vector>

#include "correlations.hpp"
#include "model.hpp"

namespace ptgl {

enum class PtPhase { Unbroken, Exceptional, Broken, NotApplicable };

/// Fig.-3-style regions for the drift-matrix flow. Boundaries are the
/// balanced line γ_L = γ_G, the degeneracy line γ_L + γ_G = 2g and the
/// hyperbola γ_L·γ_G = g².
enum class Region { I, II, III, IV, V, Boundary };

enum class FixedPointType {
  StableSpiral,
  StableNode,
  UnstableSpiral,
  UnstableNode,
  Saddle,
  Center,
  Degenerate,
};

struct RegimeClass {
  bool on_pt_line = false;
  PtPhase pt_phase = PtPhase::NotApplicable;
  Region region = Region::Boundary;
  FixedPointType fixed_point = FixedPointType::Center;
  std::array<Complex, 2> drift_eigenvalues{};  // the two distinct λ of Y
};

const char* to_string(PtPhase p);
const char* to_string(Region r);
const char* to_string(FixedPointType f);

/// Classify the dynamical regime from the eigenvalues of the drift matrix.
/// Points within the relative tolerance band of a defining predicate are
/// reported as Boundary (and Degenerate on the coalescence lines) instead of
/// being assigned to a side.
RegimeClass classify(const SystemParams& p, double tol = 1e-9);

// Long-time laws on the balanced (PT) line. Each thrower checks its phase.

struct UnbrokenAsymptotics {
  double mutual_information_limit;  // log(g²/(g²-γ²))
  double discord;                   // γ/(2g²t), both directions
  double oscillation_frequency;     // 2·sqrt(g²-γ²)
};
UnbrokenAsymptotics asymptotic_up(const SystemParams& p, double t,
                                  double tol = 1e-9);

struct BrokenAsymptotics {
  double discord_lg_limit;          // log((γ(γ+Ω)+g²)/(2γ²))
  double discord_gl_limit;          // log((γ(3γ+Ω)-g²)/(2γ²))
  double mutual_information;        // 2Ωt
  double mutual_information_slope;  // 2Ω
};
BrokenAsymptotics asymptotic_bp(const SystemParams& p, double t,
                                double tol = 1e-9);

struct ExceptionalAsymptotics {
  double mutual_information;  // log(4g²t²/3)
  double discord;             // 1/(gt), both directions
};
ExceptionalAsymptotics asymptotic_ep(const SystemParams& p, double t,
                                     double tol = 1e-9);

// --- empirical long-time fits ----------------------------------------------

enum class ScalingForm { Constant, PowerLawDecay, LinearGrowth, LogGrowth };
const char* to_string(ScalingForm f);

struct ScalingFit {
  ScalingForm form = ScalingForm::Constant;
  double coefficient = 0.0;  // exponent (power law) or slope (linear/log)
  double offset = 0.0;
  double goodness = 0.0;  // rms residual relative to the data scale

  double evaluate(double t) const;
};

enum class Quantity { S, S_L, S_G, I, D_LG, D_GL };
double quantity_of(const CorrelationRecord& r, Quantity q);

/// Least-squares competition between constant, linear-in-t, linear-in-log-t
/// and log-log (power law) models over the window [t_min, t_max]. Throws
/// InvalidArg when fewer than 4 samples fall inside the window.
ScalingFit fit_longtime_scaling(const std::vector<CorrelationRecord>& records,
                                Quantity q, double t_min, double t_max);

/// Defined for the balanced line: fitted forms of S, S_L, S_G plus the
/// phase-specific entropy-balance combinations.
struct Table1Scalings {
  PtPhase phase;
  ScalingFit total;              // S
  ScalingFit loss;               // S_L
  ScalingFit gain;               // S_G
  double s_minus_sg_drift;       // |Δ(S - S_G)| over the second half window
  double s_minus_sl_drift;       // |Δ(S - S_L)| likewise
  double growth_rate_ratio;      // slope(S_L)/slope(S_G)
  double mutual_info_over_sl;    // I/S_L at the window end
};
Table1Scalings table1_scalings(const SystemParams& p,
                               const std::vector<CorrelationRecord>& records,
                               double t_min, double tol = 1e-9);

/// Dominant angular frequency of a uniformly sampled signal via a windowed
/// DFT with parabolic peak interpolation; frequencies below omega_min are
/// ignored (slow drift).
double dominant_frequency(const std::vector<double>& times,
                          const std::vector<double>& values,
                          double omega_min);

/// Slope of log D_GL(∞) against log(γ/g - 1) on a log-spaced grid of
/// γ/g ∈ [ratio_min, ratio_max]; the square-root onset at the exceptional
/// point gives 1/2.
double ep_critical_exponent(double g, double ratio_min = 1.001,
                            double ratio_max = 1.05, int n_points = 16);

}  // namespace ptgl
