#pragma once

#include <array>

#include "model.hpp"

namespace ptgl {

// Covariance convention: σ_ij = <X_iX_j + X_jX_i> - 2<X_i><X_j>, so the
// vacuum (and any coherent state) is the 4x4 identity.

inline constexpr double kPhysicalityTol = 1e-9;

/// Symplectic form Ω = diag(J, J) with J = [[0,1],[-1,0]].
Mat4 symplectic_form();

struct TwoModeBlocks {
  Mat2 loss;   // σ_L
  Mat2 gain;   // σ_G
  Mat2 cross;  // σ_C, rows = L quadratures, cols = G quadratures
};

TwoModeBlocks blocks(const Mat4& sigma);
Mat4 assemble(const TwoModeBlocks& b);

/// Mean quadrature vector plus covariance; the full descriptor of a
/// two-mode Gaussian state.
struct GaussianState {
  Vec4 mean = Vec4::Zero();
  Mat4 cov = Mat4::Identity();
};

/// Throws InvalidArg/InvalidState unless sigma is finite and symmetric
/// within 1e-12 * max(1, ||σ||).
void check_covariance(const Mat4& sigma);

/// Symplectic spectrum {ν₁ ≥ ν₂}: moduli of the eigenvalues of iΩσ,
/// degenerate pairs averaged. Physical states have ν ≥ 1.
std::array<double, 2> symplectic_eigenvalues(const Mat4& sigma);

/// Same spectrum through sqrt(eig(-(Ωσ)²)); kept as an independent route
/// for cross-checking the primary one.
std::array<double, 2> symplectic_eigenvalues_squared(const Mat4& sigma);

/// Momentum reflection on the gain mode (sign flip of the p_G row and
/// column). An involution.
Mat4 partial_transpose(const Mat4& sigma);

/// Tr ρ² = 1 / sqrt(det σ) in this convention. Throws InvalidState when σ
/// is not positive definite.
double purity(const Mat4& sigma);

/// log det σ through a Cholesky factorization (overflow-safe for the large
/// covariances the unstable phases produce). Throws InvalidState when not
/// positive definite.
double log_det(const Mat4& sigma);
double log_det(const Mat2& block);

}  // namespace ptgl
