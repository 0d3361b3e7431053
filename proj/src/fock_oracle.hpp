#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "gaussian.hpp"
#include "model.hpp"

namespace ptgl {

// Brute-force integration of the full master equation in a truncated
// two-mode Fock basis |n_L⟩⊗|n_G⟩, used to validate the Gaussian layer
// end-to-end. The gain heats the system exponentially, so runs are short
// (t ≲ 2/g) and fail loudly when population reaches the top level.

using DensityMatrix = Eigen::MatrixXcd;
using SparseOp = Eigen::SparseMatrix<Complex>;

struct FockConfig {
  int cutoff = 12;  // levels 0..cutoff per mode
  Complex alpha_loss{0.0, 0.0};
  Complex alpha_gain{0.0, 0.0};
  double leak_tol = 1e-6;  // max tolerated population in the top level

  void validate() const;
};

/// Truncated ladder and quadrature operators on the joint space; built once
/// per cutoff.
class FockSpace {
 public:
  explicit FockSpace(int cutoff);

  int cutoff() const { return cutoff_; }
  int dim() const { return dim_; }

  const SparseOp& a_loss() const { return a_loss_; }
  const SparseOp& a_gain() const { return a_gain_; }
  const SparseOp& quadrature(int i) const { return quadrature_[i]; }

  DensityMatrix coherent_density(Complex alpha_loss, Complex alpha_gain) const;
  DensityMatrix thermal_loss_density(double nbar) const;

  /// dρ/dt of the master equation, with the beam-splitter coupling at rate g,
  /// loss 2γ_L D[a_L] and incoherent gain 2γ_G D[a_G†].
  DensityMatrix lindblad_rhs(const SystemParams& p,
                             const DensityMatrix& rho) const;

  /// RK4 with Hermitization and trace renormalization each step. Throws
  /// Truncation, naming the time, when the top-level population exceeds
  /// leak_tol. Requested checkpoint states (times rounded up to step
  /// boundaries) are copied into *checkpoints when given.
  struct Run {
    DensityMatrix rho;
    double t = 0.0;
    double renorm_drift = 0.0;    // accumulated |1 - tr ρ|
    double top_population = 0.0;  // final leak estimate
  };
  Run integrate(const SystemParams& p, const FockConfig& cfg, double t,
                double step,
                const std::vector<double>& checkpoint_times = {},
                std::vector<DensityMatrix>* checkpoints = nullptr) const;

  /// Quadrature means and symmetrized covariance in the fixed ordering.
  GaussianState extract_moments(const DensityMatrix& rho) const;

  DensityMatrix reduced_loss(const DensityMatrix& rho) const;
  DensityMatrix reduced_gain(const DensityMatrix& rho) const;

  /// Average Rényi-2 entropy of the loss mode conditioned on heterodyne
  /// outcomes on the gain mode, Monte-Carlo sampled from the Gaussian
  /// outcome distribution (covariance (σ_G + 1)/2). Deterministic for a
  /// fixed seed.
  double heterodyne_conditional_renyi2(const DensityMatrix& rho,
                                       const Mat2& gain_cov, int n_samples,
                                       std::uint64_t seed) const;

  double top_level_population(const DensityMatrix& rho) const;

 private:
  // writes dρ/dt into out using the shared scratch buffer
  void rhs_into(const SystemParams& p, const DensityMatrix& rho,
                DensityMatrix& out, DensityMatrix& scratch) const;

  int cutoff_;
  int dim_;
  SparseOp a_loss_, a_gain_;
  SparseOp a_loss_dag_, a_gain_dag_;
  SparseOp coupling_;  // a_L† a_G + a_G† a_L
  Eigen::VectorXd damping_loss_;  // diag of a_L† a_L
  Eigen::VectorXd damping_gain_;  // diag of a_G a_G† (truncated product)
  std::array<SparseOp, 4> quadrature_;
  SparseOp number_loss_, number_gain_;
};

/// -log Tr ρ².
double renyi2_entropy(const DensityMatrix& rho);

}  // namespace ptgl
