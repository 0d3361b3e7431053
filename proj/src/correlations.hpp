#pragma once

#include "dynamics.hpp"
#include "gaussian.hpp"

namespace ptgl {

// All entropies and correlation measures are in nats. The entanglement
// threshold for the Rényi-2 discord is log 2 ≈ 0.6931 in these units.

enum class EntropyKind { Renyi2, VonNeumann };

/// D_LG conditions mode L on a measurement of mode G; D_GL the reverse.
enum class Direction { LG, GL };

/// A single-mode Gaussian measurement with covariance
/// R(φ)·diag(e^{2r}, e^{-2r})·R(φ)ᵀ. r = 0 is the phase-insensitive
/// (heterodyne) measurement.
struct GaussianMeasurement {
  double r = 0.0;    // squeezing, ≥ 0
  double phi = 0.0;  // squeezing axis, in [0, π)
  enum class Target { OnL, OnG } target = Target::OnG;

  Mat2 covariance() const;
};

struct CorrelationRecord {
  double t = 0.0;
  double S = 0.0;    // joint entropy
  double S_L = 0.0;  // loss-mode entropy
  double S_G = 0.0;  // gain-mode entropy
  double I = 0.0;    // mutual information S_L + S_G - S
  double D_LG = 0.0;
  double D_GL = 0.0;
  double nu_pt_min = 1.0;  // smallest partial-transpose symplectic eigenvalue
};

/// Counters for the tiny-negative clamp (values in (-1e-9, 0) are snapped
/// to 0; anything below raises InvalidState). Thread-local.
struct ClampStats {
  long count = 0;
  double max_magnitude = 0.0;
};
ClampStats clamp_stats();
void reset_clamp_stats();

/// Rényi-2: ½ log det σ. Von Neumann: Σ_k f(ν_k) with
/// f(ν) = ((ν+1)/2)log((ν+1)/2) - ((ν-1)/2)log((ν-1)/2).
double entropy(const Mat2& block, EntropyKind kind);
double entropy(const Mat4& cov, EntropyKind kind);

double mutual_information(const Mat4& cov, EntropyKind kind);

/// Covariance of the unmeasured mode after a Gaussian measurement on the
/// other one: σ_L - σ_C (σ_G + σ_M)⁻¹ σ_Cᵀ for target OnG. Outcome
/// independent.
Mat2 conditional_covariance(const Mat4& cov, const GaussianMeasurement& m);

/// Discord with the measurement fixed to heterodyne (σ_M = 1); the global
/// optimum for states generated by the gain/loss dynamics.
double discord_heterodyne(const Mat4& cov, Direction dir, EntropyKind kind);

struct DiscordGrid {
  int n_r = 64;
  int n_phi = 32;
  double r_max = 2.0;
};

struct DiscordMinimum {
  double value = 0.0;
  GaussianMeasurement argmin;
};

/// Discord minimized over Gaussian measurements: coarse (r, φ) grid followed
/// by a Nelder–Mead refinement in the smooth chart
/// (u, v) = r(cos 2φ, sin 2φ). Deterministic.
DiscordMinimum discord_minimized(const Mat4& cov, Direction dir,
                                 EntropyKind kind,
                                 const DiscordGrid& grid = {});

/// ≥ 1 iff separable (necessary and sufficient for one-vs-one mode
/// Gaussian states).
double ppt_min_eigenvalue(const Mat4& cov);

/// log(1 + (e^I - 1)/(e^{S_meas} + 1)) from Rényi-2 quantities; equals the
/// heterodyne discord for every state the gain/loss dynamics generates.
double central_identity_rhs(const Mat4& cov, Direction dir = Direction::LG);
double central_identity_from(double mutual_information,
                             double measured_entropy);

/// Long-time approximation log(1 + e^{-(S-S_L)} - e^{-S_G}). Throws
/// DomainError when the argument is non-positive.
double approx_identity_rhs(double s, double s_l, double s_g);

CorrelationRecord correlations(const Mat4& cov, double t, EntropyKind kind);

// --- reduced-path evaluation (stable at any horizon) ----------------------

double entropy_joint(const ReducedState& s, EntropyKind kind);
double entropy_loss(const ReducedState& s, EntropyKind kind);
double entropy_gain(const ReducedState& s, EntropyKind kind);

/// Heterodyne conditional covariance is ((w+a)/(b+1))·1 for LG; evaluated
/// from those quantities directly so no precision is lost to the e^{2Ωt}
/// amplitudes.
double discord_heterodyne(const ReducedState& s, Direction dir,
                          EntropyKind kind);
double central_identity_rhs(const ReducedState& s, Direction dir);

/// Conditional entropy after a measurement with squeezing r (the axis angle
/// drops out by phase covariance):
/// det σ_{L|G}(r) = (w + a e^{2r})(w + a e^{-2r}) / ((b + e^{2r})(b + e^{-2r})).
double conditional_entropy_squeezed(const ReducedState& s, Direction dir,
                                    double r, EntropyKind kind);

/// 1-D minimization of the reduced discord over the measurement squeezing.
struct ReducedDiscordMinimum {
  double value = 0.0;
  double r = 0.0;
};
ReducedDiscordMinimum discord_minimized_r(const ReducedState& s,
                                          Direction dir, EntropyKind kind,
                                          double r_max = 2.0);

CorrelationRecord correlations(const ReducedState& s, EntropyKind kind);

std::vector<CorrelationRecord> reduced_records(const SystemParams& p,
                                               double t_final, int n_samples,
                                               EntropyKind kind);
std::vector<CorrelationRecord> reduced_records_at(
    const SystemParams& p, const std::vector<double>& times,
    EntropyKind kind);

}  // namespace ptgl
