#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "errors.hpp"

namespace ptgl {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using Mat2c = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;
using Complex = std::complex<double>;

// Quadrature ordering is fixed to (x_L, p_L, x_G, p_G) everywhere; all 2x2
// block extractions rely on it.

/// Coupling rate g and incoherent rates of the loss/gain modes. g sets the
/// time unit; the core is unit-agnostic and the CLI normalizes at its
/// boundary.
struct SystemParams {
  double g = 1.0;
  double gamma_loss = 0.0;  // γ_L ≥ 0
  double gamma_gain = 0.0;  // γ_G ≥ 0

  void validate() const;

  double mean_rate() const { return 0.5 * (gamma_loss + gamma_gain); }
  double rate_imbalance() const { return 0.5 * (gamma_gain - gamma_loss); }
};

/// Drift matrix Y of the covariance equation of motion
/// dσ/dt = Yσ + σYᵀ + 4D.
Mat4 build_drift(const SystemParams& p);

/// Diffusion matrix D = ½·diag(γ_L, γ_L, γ_G, γ_G).
Mat4 build_diffusion(const SystemParams& p);

/// Non-Hermitian 2x2 mean-field generator: off-diagonal g, diagonal
/// (-iγ_L, +iγ_G). PT-symmetric for balanced rates.
Mat2c build_mean_field_hamiltonian(const SystemParams& p);

/// Eigenvalues of the mean-field generator, sorted by (Re, Im) descending.
/// Balanced rates give ±sqrt(g²-γ²): real below the exceptional point,
/// imaginary above it, coalescing at γ = g.
std::array<Complex, 2> h_eigenvalues(const SystemParams& p);

/// The two distinct eigenvalues of Y (each is doubly degenerate in the 4x4),
/// sorted by (Re, Im) descending: δ ± sqrt(γ̄² - g²) with
/// δ = (γ_G-γ_L)/2, γ̄ = (γ_L+γ_G)/2.
std::array<Complex, 2> drift_eigenvalues(const SystemParams& p);

/// max Re λ(Y); growth rate of the fastest second-moment mode is twice this.
double spectral_abscissa(const SystemParams& p);

}  // namespace ptgl
