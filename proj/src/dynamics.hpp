#pragma once

#include <vector>

#include "gaussian.hpp"
#include "model.hpp"

namespace ptgl {

enum class Integrator { Exact, Rk4 };

struct TrajectoryConfig {
  double t_final = 10.0;
  int n_samples = 100;
  Integrator integrator = Integrator::Exact;
  double rk4_step = 1e-3;        // in units of 1/g for g = 1
  double physicality_tol = kPhysicalityTol;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<GaussianState> states;
};

/// Exact covariance propagation of dσ/dt = Yσ + σYᵀ + 4D by one matrix
/// exponential of the 8x8 augmented block matrix [[Y, 4D], [0, -Yᵀ]]
/// (Van Loan construction). The output is symmetrized. Throws Overflow,
/// naming the largest exponent, when the result is non-finite.
Mat4 propagate_exact(const SystemParams& p, const Mat4& sigma0, double t);

/// Classical fixed-step 4th-order integration of the same equation; the
/// final partial step is shortened to land exactly on t. Symmetrized every
/// step.
Mat4 propagate_rk4(const SystemParams& p, const Mat4& sigma0, double t,
                   double step);

/// Mean-field amplitudes ψ = (<a_L>, <a_G>) evolved as ψ(t) = exp(-iHt)ψ0.
Vec2c evolve_mean_field(const SystemParams& p, const Vec2c& psi0, double t);

/// n_samples states at uniform times in [0, t_final]. Exact samples are
/// each propagated from t = 0, RK4 samples by continuation. Every sampled
/// state is checked against ν_min ≥ 1 - tol (tolerance widened by the
/// resolvable precision floor when the entries get large).
Trajectory sample_trajectory(const SystemParams& p, const GaussianState& s0,
                             const TrajectoryConfig& cfg);

/// Unique solution of Yσ + σYᵀ + 4D = 0. Throws InvalidArg when the drift
/// is not Hurwitz (no stable fixed point).
Mat4 stationary_covariance(const SystemParams& p);

// ---------------------------------------------------------------------------
// Reduced phase-covariant representation.
//
// The dynamics preserves the U(1) phase symmetry of the generator, and the
// vacuum/coherent initial condition σ0 = 1 is phase-invariant, so every
// state reached from it has the form
//
//     σ_L = a·1,  σ_G = b·1,  σ_C = d·J,   (J = [[0,1],[-1,0]])
//
// with w = sqrt(det σ) = ab - d². The quadruple (a, b, d, w) obeys a closed
// affine-linear ODE with no cancelling terms:
//
//     da/dt = -2γ_L a + 2g d + 2γ_L
//     db/dt = +2γ_G b - 2g d + 2γ_G
//     dd/dt = (γ_G - γ_L) d + g (b - a)
//     dw/dt = 2(γ_G - γ_L) w + 2γ_G a + 2γ_L b
//
// Tracking w through its own equation is what keeps entropies computable at
// long times: reading sqrt(det σ) off the matrix instead loses all digits
// once the unstable modes dominate (ab and d² grow like e^{4Ωt} while their
// difference grows like e^{2Ωt}).
// ---------------------------------------------------------------------------

struct ReducedState {
  double t = 0.0;
  double a = 1.0;  // σ_L = a·1
  double b = 1.0;  // σ_G = b·1
  double d = 0.0;  // σ_C = d·J
  double w = 1.0;  // sqrt(det σ)

  Mat4 covariance() const;

  /// Symplectic spectrum {ν₁ ≥ ν₂} from the cancellation-free forms
  /// Δ = (a+b)² - 2w, Δ² - 4w² = (a+b)²((a-b)² + 4d²).
  std::array<double, 2> symplectic_eigenvalues() const;

  /// Smallest symplectic eigenvalue after partial transposition, from
  /// Δ̃ = (a-b)² + 2w, Δ̃² - 4w² = (a-b)²((a-b)² + 4w).
  double ppt_min_eigenvalue() const;
};

/// Exact reduced state at time t from σ0 = 1 (one 5x5 matrix exponential).
ReducedState propagate_reduced(const SystemParams& p, double t);

/// Reduced states at n_samples uniform times in [0, t_final], stepped by a
/// single precomputed exponential.
std::vector<ReducedState> sample_reduced(const SystemParams& p,
                                         double t_final, int n_samples);

/// Reduced states at arbitrary (non-negative, increasing) times, each from
/// one exponential.
std::vector<ReducedState> reduced_at_times(const SystemParams& p,
                                           const std::vector<double>& times);

}  // namespace ptgl
