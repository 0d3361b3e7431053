#include "fock_oracle.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace ptgl {

void FockConfig::validate() const {
  if (cutoff < 2) fail(ErrorKind::InvalidArg, "Fock cutoff must be >= 2");
  if (!(leak_tol > 0.0 && leak_tol < 1.0)) {
    fail(ErrorKind::InvalidArg, "leak_tol must be in (0, 1)");
  }
}

namespace {

using Triplet = Eigen::Triplet<Complex>;

int flat(int m, int n, int levels) { return m * levels + n; }

}  // namespace

FockSpace::FockSpace(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 2) fail(ErrorKind::InvalidArg, "Fock cutoff must be >= 2");
  const int levels = cutoff + 1;
  dim_ = levels * levels;

  std::vector<Triplet> tl, tg;
  tl.reserve(dim_);
  tg.reserve(dim_);
  for (int m = 0; m < levels; ++m) {
    for (int n = 0; n < levels; ++n) {
      if (m > 0) {
        tl.emplace_back(flat(m - 1, n, levels), flat(m, n, levels),
                        Complex(std::sqrt(double(m)), 0.0));
      }
      if (n > 0) {
        tg.emplace_back(flat(m, n - 1, levels), flat(m, n, levels),
                        Complex(std::sqrt(double(n)), 0.0));
      }
    }
  }
  a_loss_.resize(dim_, dim_);
  a_gain_.resize(dim_, dim_);
  a_loss_.setFromTriplets(tl.begin(), tl.end());
  a_gain_.setFromTriplets(tg.begin(), tg.end());
  a_loss_dag_ = SparseOp(a_loss_.adjoint());
  a_gain_dag_ = SparseOp(a_gain_.adjoint());
  coupling_ = SparseOp(a_loss_dag_ * a_gain_) + SparseOp(a_gain_dag_ * a_loss_);
  coupling_.makeCompressed();
  number_loss_ = SparseOp(a_loss_dag_ * a_loss_);
  number_gain_ = SparseOp(a_gain_dag_ * a_gain_);

  // anticommutator parts are diagonal; a_G a_G† is kept as the truncated
  // product (not n_G + 1) so the dissipator stays exactly trace-preserving
  // at the cutoff
  damping_loss_.resize(dim_);
  damping_gain_.resize(dim_);
  for (int m = 0; m < levels; ++m) {
    for (int n = 0; n < levels; ++n) {
      damping_loss_(flat(m, n, levels)) = double(m);
      damping_gain_(flat(m, n, levels)) = (n < cutoff_) ? double(n + 1) : 0.0;
    }
  }

  const Complex inv_rt2(1.0 / std::sqrt(2.0), 0.0);
  const Complex i_rt2(0.0, 1.0 / std::sqrt(2.0));
  quadrature_[0] = SparseOp(inv_rt2 * (a_loss_ + a_loss_dag_));
  quadrature_[1] = SparseOp(i_rt2 * (a_loss_dag_ - a_loss_));
  quadrature_[2] = SparseOp(inv_rt2 * (a_gain_ + a_gain_dag_));
  quadrature_[3] = SparseOp(i_rt2 * (a_gain_dag_ - a_gain_));
  for (auto& q : quadrature_) q.makeCompressed();
}

namespace {

Eigen::VectorXcd coherent_vector(Complex alpha, int levels) {
  Eigen::VectorXcd c(levels);
  c(0) = Complex(1.0, 0.0);
  for (int n = 1; n < levels; ++n) {
    c(n) = c(n - 1) * alpha / std::sqrt(double(n));
  }
  c *= std::exp(-0.5 * std::norm(alpha));
  return c;
}

}  // namespace

DensityMatrix FockSpace::coherent_density(Complex alpha_loss,
                                          Complex alpha_gain) const {
  const int levels = cutoff_ + 1;
  const Eigen::VectorXcd cl = coherent_vector(alpha_loss, levels);
  const Eigen::VectorXcd cg = coherent_vector(alpha_gain, levels);
  Eigen::VectorXcd v(dim_);
  for (int m = 0; m < levels; ++m) {
    for (int n = 0; n < levels; ++n) v(flat(m, n, levels)) = cl(m) * cg(n);
  }
  DensityMatrix rho = v * v.adjoint();
  rho /= rho.trace().real();
  return rho;
}

DensityMatrix FockSpace::thermal_loss_density(double nbar) const {
  const int levels = cutoff_ + 1;
  const double q = nbar / (1.0 + nbar);
  Eigen::VectorXd p(levels);
  double norm = 0.0, pk = 1.0;
  for (int m = 0; m < levels; ++m) {
    p(m) = pk;
    norm += pk;
    pk *= q;
  }
  p /= norm;
  DensityMatrix rho = DensityMatrix::Zero(dim_, dim_);
  for (int m = 0; m < levels; ++m) {
    rho(flat(m, 0, levels), flat(m, 0, levels)) = Complex(p(m), 0.0);
  }
  return rho;
}

void FockSpace::rhs_into(const SystemParams& p, const DensityMatrix& rho,
                         DensityMatrix& out, DensityMatrix& scratch) const {
  const Complex minus_i_g(0.0, -p.g);
  const double gl = p.gamma_loss, gg = p.gamma_gain;

  out.noalias() = minus_i_g * (coupling_ * rho);
  out.noalias() -= minus_i_g * (rho * coupling_);
  if (gl > 0.0) {
    scratch.noalias() = a_loss_ * rho;
    out.noalias() += (2.0 * gl) * (scratch * a_loss_dag_);
    out.noalias() -= gl * (damping_loss_.asDiagonal() * rho);
    out.noalias() -= gl * (rho * damping_loss_.asDiagonal());
  }
  if (gg > 0.0) {
    scratch.noalias() = a_gain_dag_ * rho;
    out.noalias() += (2.0 * gg) * (scratch * a_gain_);
    out.noalias() -= gg * (damping_gain_.asDiagonal() * rho);
    out.noalias() -= gg * (rho * damping_gain_.asDiagonal());
  }
}

DensityMatrix FockSpace::lindblad_rhs(const SystemParams& p,
                                      const DensityMatrix& rho) const {
  p.validate();
  DensityMatrix out(dim_, dim_), scratch(dim_, dim_);
  rhs_into(p, rho, out, scratch);
  return out;
}

double FockSpace::top_level_population(const DensityMatrix& rho) const {
  const int levels = cutoff_ + 1;
  double pop = 0.0;
  for (int m = 0; m < levels; ++m) {
    pop += rho(flat(m, cutoff_, levels), flat(m, cutoff_, levels)).real();
  }
  for (int n = 0; n < cutoff_; ++n) {  // avoid double-counting the corner
    pop += rho(flat(cutoff_, n, levels), flat(cutoff_, n, levels)).real();
  }
  return pop;
}

FockSpace::Run FockSpace::integrate(
    const SystemParams& p, const FockConfig& cfg, double t, double step,
    const std::vector<double>& checkpoint_times,
    std::vector<DensityMatrix>* checkpoints) const {
  cfg.validate();
  p.validate();
  if (cfg.cutoff != cutoff_) {
    fail(ErrorKind::InvalidArg, "config cutoff does not match this space");
  }
  if (!(t >= 0.0)) fail(ErrorKind::InvalidArg, "time must be non-negative");
  if (!(step > 0.0)) fail(ErrorKind::InvalidArg, "step must be positive");
  if (checkpoints) checkpoints->clear();
  std::size_t next_checkpoint = 0;

  Run run;
  run.rho = coherent_density(cfg.alpha_loss, cfg.alpha_gain);
  DensityMatrix k1(dim_, dim_), k2(dim_, dim_), k3(dim_, dim_), k4(dim_, dim_);
  DensityMatrix stage(dim_, dim_), scratch(dim_, dim_);

  double elapsed = 0.0;
  while (elapsed < t) {
    const double h = std::min(step, t - elapsed);
    rhs_into(p, run.rho, k1, scratch);
    stage.noalias() = run.rho + (0.5 * h) * k1;
    rhs_into(p, stage, k2, scratch);
    stage.noalias() = run.rho + (0.5 * h) * k2;
    rhs_into(p, stage, k3, scratch);
    stage.noalias() = run.rho + h * k3;
    rhs_into(p, stage, k4, scratch);
    run.rho.noalias() += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    stage = run.rho.adjoint();
    run.rho = 0.5 * (run.rho + stage);
    const double tr = run.rho.trace().real();
    run.renorm_drift += std::abs(1.0 - tr);
    run.rho /= tr;
    elapsed += h;

    run.top_population = top_level_population(run.rho);
    if (run.top_population > cfg.leak_tol) {
      std::ostringstream os;
      os << "Fock truncation exhausted at t = " << elapsed
         << ": top-level population " << run.top_population << " > "
         << cfg.leak_tol << " (cutoff " << cutoff_ << ")";
      fail(ErrorKind::Truncation, os.str());
    }
    if (checkpoints && next_checkpoint < checkpoint_times.size() &&
        elapsed >= checkpoint_times[next_checkpoint] - 1e-12) {
      checkpoints->push_back(run.rho);
      ++next_checkpoint;
    }
  }
  run.t = elapsed;
  return run;
}

namespace {

Complex trace_product(const SparseOp& op, const DensityMatrix& rho) {
  // tr(op·ρ) over the sparse pattern
  Complex acc(0.0, 0.0);
  for (int k = 0; k < op.outerSize(); ++k) {
    for (SparseOp::InnerIterator it(op, k); it; ++it) {
      acc += it.value() * rho(it.col(), it.row());
    }
  }
  return acc;
}

}  // namespace

GaussianState FockSpace::extract_moments(const DensityMatrix& rho) const {
  GaussianState out;
  std::array<DensityMatrix, 4> applied;
  for (int i = 0; i < 4; ++i) {
    applied[i] = quadrature_[i] * rho;
    out.mean(i) = applied[i].trace().real();
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      const Complex t_ij = trace_product(quadrature_[i], applied[j]);
      const Complex t_ji = trace_product(quadrature_[j], applied[i]);
      const double s =
          (t_ij + t_ji).real() - 2.0 * out.mean(i) * out.mean(j);
      out.cov(i, j) = s;
      out.cov(j, i) = s;
    }
  }
  return out;
}

DensityMatrix FockSpace::reduced_loss(const DensityMatrix& rho) const {
  const int levels = cutoff_ + 1;
  DensityMatrix out = DensityMatrix::Zero(levels, levels);
  for (int m = 0; m < levels; ++m) {
    for (int mp = 0; mp < levels; ++mp) {
      Complex acc(0.0, 0.0);
      for (int n = 0; n < levels; ++n) {
        acc += rho(flat(m, n, levels), flat(mp, n, levels));
      }
      out(m, mp) = acc;
    }
  }
  return out;
}

DensityMatrix FockSpace::reduced_gain(const DensityMatrix& rho) const {
  const int levels = cutoff_ + 1;
  DensityMatrix out = DensityMatrix::Zero(levels, levels);
  for (int n = 0; n < levels; ++n) {
    for (int np = 0; np < levels; ++np) {
      Complex acc(0.0, 0.0);
      for (int m = 0; m < levels; ++m) {
        acc += rho(flat(m, n, levels), flat(m, np, levels));
      }
      out(n, np) = acc;
    }
  }
  return out;
}

double renyi2_entropy(const DensityMatrix& rho) {
  // tr ρ² = Σ |ρ_ij|² for Hermitian ρ
  return -std::log(rho.squaredNorm());
}

double FockSpace::heterodyne_conditional_renyi2(const DensityMatrix& rho,
                                                const Mat2& gain_cov,
                                                int n_samples,
                                                std::uint64_t seed) const {
  const int levels = cutoff_ + 1;
  const Mat2 outcome_cov = 0.5 * (gain_cov + Mat2::Identity());
  const Eigen::LLT<Mat2> llt(outcome_cov);
  if (llt.info() != Eigen::Success) {
    fail(ErrorKind::InvalidState, "outcome covariance not positive definite");
  }
  const Mat2 chol = llt.matrixL();
  const double mean_x = trace_product(quadrature_[2], rho).real();
  const double mean_p = trace_product(quadrature_[3], rho).real();

  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return (rng() >> 11) * (1.0 / 9007199254740992.0);  // [0, 1)
  };
  auto normal_pair = [&](double& z1, double& z2) {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    z1 = r * std::cos(2.0 * M_PI * u2);
    z2 = r * std::sin(2.0 * M_PI * u2);
  };

  double acc = 0.0;
  int used = 0;
  for (int s = 0; s < n_samples; ++s) {
    double z1, z2;
    normal_pair(z1, z2);
    const Eigen::Vector2d xp =
        Eigen::Vector2d(mean_x, mean_p) + chol * Eigen::Vector2d(z1, z2);
    const Complex alpha((xp(0)) / std::sqrt(2.0), (xp(1)) / std::sqrt(2.0));
    const Eigen::VectorXcd c = coherent_vector(alpha, levels);

    // ρ_{L|α} ∝ ⟨α|ρ|α⟩_G
    DensityMatrix k(dim_, levels);
    for (int mp = 0; mp < levels; ++mp) {
      k.col(mp) = rho.block(0, mp * levels, dim_, levels) * c;
    }
    DensityMatrix cond(levels, levels);
    for (int m = 0; m < levels; ++m) {
      cond.row(m) = c.adjoint() * k.middleRows(m * levels, levels);
    }
    const double tr = cond.trace().real();
    if (!(tr > 1e-12)) continue;  // outcome far outside the truncated basis
    cond /= tr;
    cond = 0.5 * (cond + cond.adjoint().eval());
    acc += renyi2_entropy(cond);
    ++used;
  }
  if (used == 0) fail(ErrorKind::Truncation, "all heterodyne samples leaked");
  return acc / used;
}

}  // namespace ptgl
