#include "gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ptgl {

Mat4 symplectic_form() {
  Mat4 omega = Mat4::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

TwoModeBlocks blocks(const Mat4& sigma) {
  return TwoModeBlocks{sigma.topLeftCorner<2, 2>(),
                       sigma.bottomRightCorner<2, 2>(),
                       sigma.topRightCorner<2, 2>()};
}

Mat4 assemble(const TwoModeBlocks& b) {
  Mat4 sigma;
  sigma.topLeftCorner<2, 2>() = b.loss;
  sigma.bottomRightCorner<2, 2>() = b.gain;
  sigma.topRightCorner<2, 2>() = b.cross;
  sigma.bottomLeftCorner<2, 2>() = b.cross.transpose();
  return sigma;
}

void check_covariance(const Mat4& sigma) {
  if (!sigma.allFinite()) {
    fail(ErrorKind::InvalidArg, "covariance matrix has non-finite entries");
  }
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  const double asym = (sigma - sigma.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream os;
    os << "covariance matrix not symmetric: |σ - σᵀ| = " << asym;
    fail(ErrorKind::InvalidState, os.str());
  }
}

namespace {

std::array<double, 2> pair_and_sort(std::array<double, 4> m) {
  std::sort(m.begin(), m.end(), std::greater<double>());
  // spectrum comes out as {ν₁, ν₁, ν₂, ν₂}; average the pairs
  return {0.5 * (m[0] + m[1]), 0.5 * (m[2] + m[3])};
}

}  // namespace

std::array<double, 2> symplectic_eigenvalues(const Mat4& sigma) {
  check_covariance(sigma);
  Eigen::EigenSolver<Mat4> es(symplectic_form() * sigma, false);
  std::array<double, 4> moduli;
  for (int k = 0; k < 4; ++k) moduli[k] = std::abs(es.eigenvalues()[k]);
  return pair_and_sort(moduli);
}

std::array<double, 2> symplectic_eigenvalues_squared(const Mat4& sigma) {
  check_covariance(sigma);
  const Mat4 m = symplectic_form() * sigma;
  Eigen::EigenSolver<Mat4> es(Mat4(-m * m), false);
  std::array<double, 4> moduli;
  for (int k = 0; k < 4; ++k) {
    moduli[k] = std::sqrt(std::max(0.0, es.eigenvalues()[k].real()));
  }
  return pair_and_sort(moduli);
}

Mat4 partial_transpose(const Mat4& sigma) {
  Mat4 flip = Mat4::Identity();
  flip(3, 3) = -1.0;
  return flip * sigma * flip;
}

double purity(const Mat4& sigma) {
  return std::exp(-0.5 * log_det(sigma));
}

double log_det(const Mat4& sigma) {
  check_covariance(sigma);
  Eigen::LLT<Mat4> llt(sigma);
  if (llt.info() != Eigen::Success) {
    fail(ErrorKind::InvalidState,
         "covariance matrix is not positive definite");
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

double log_det(const Mat2& block) {
  // Cholesky by hand; avoids overflowing the raw determinant when the
  // entries are already ~1e300.
  const double a = block(0, 0), c = 0.5 * (block(0, 1) + block(1, 0)),
               d = block(1, 1);
  if (!(a > 0.0)) {
    fail(ErrorKind::InvalidState, "2x2 block is not positive definite");
  }
  const double schur = d - (c / a) * c;
  if (!(schur > 0.0)) {
    fail(ErrorKind::InvalidState, "2x2 block is not positive definite");
  }
  return std::log(a) + std::log(schur);
}

}  // namespace ptgl
