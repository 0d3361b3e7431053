#include "dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

namespace ptgl {

void TrajectoryConfig::validate() const {
  if (!(t_final > 0.0)) {
    fail(ErrorKind::InvalidArg, "t_final must be positive");
  }
  if (n_samples < 2) fail(ErrorKind::InvalidArg, "n_samples must be >= 2");
  if (integrator == Integrator::Rk4 &&
      !(rk4_step > 0.0 && rk4_step <= t_final)) {
    fail(ErrorKind::InvalidArg, "rk4_step must be in (0, t_final]");
  }
}

namespace {

using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Vec5 = Eigen::Matrix<double, 5, 1>;

[[noreturn]] void overflow(const SystemParams& p, double t,
                           const char* where) {
  std::ostringstream os;
  os << where << " overflowed at t = " << t
     << " (largest exponent 2·max Re λ(Y)·t = "
     << 2.0 * spectral_abscissa(p) * t << ")";
  fail(ErrorKind::Overflow, os.str());
}

Mat8 augmented_drift(const SystemParams& p) {
  const Mat4 y = build_drift(p);
  Mat8 m = Mat8::Zero();
  m.topLeftCorner<4, 4>() = y;
  m.topRightCorner<4, 4>() = 4.0 * build_diffusion(p);
  m.bottomRightCorner<4, 4>() = -y.transpose();
  return m;
}

Mat4 lyapunov_rhs(const Mat4& y, const Mat4& four_d, const Mat4& sigma) {
  return y * sigma + sigma * y.transpose() + four_d;
}

// 5x5 generator of the reduced (a, b, d, w, 1) system.
Mat5 reduced_generator(const SystemParams& p) {
  const double g = p.g, gl = p.gamma_loss, gg = p.gamma_gain;
  Mat5 m = Mat5::Zero();
  m(0, 0) = -2.0 * gl;
  m(0, 2) = 2.0 * g;
  m(0, 4) = 2.0 * gl;
  m(1, 1) = 2.0 * gg;
  m(1, 2) = -2.0 * g;
  m(1, 4) = 2.0 * gg;
  m(2, 0) = -g;
  m(2, 1) = g;
  m(2, 2) = gg - gl;
  m(3, 0) = 2.0 * gg;
  m(3, 1) = 2.0 * gl;
  m(3, 3) = 2.0 * (gg - gl);
  return m;
}

ReducedState reduced_from_vector(double t, const Vec5& v) {
  return ReducedState{t, v(0), v(1), v(2), v(3)};
}

void check_reduced(const SystemParams& p, const ReducedState& s) {
  if (!(std::isfinite(s.a) && std::isfinite(s.b) && std::isfinite(s.d) &&
        std::isfinite(s.w))) {
    overflow(p, s.t, "reduced covariance propagation");
  }
  if (!(s.a > 0.0 && s.b > 0.0 && s.w > 0.0)) {
    std::ostringstream os;
    os << "reduced state lost positivity at t = " << s.t << " (a = " << s.a
       << ", b = " << s.b << ", w = " << s.w << ")";
    fail(ErrorKind::InvalidState, os.str());
  }
}

}  // namespace

Mat4 propagate_exact(const SystemParams& p, const Mat4& sigma0, double t) {
  check_covariance(sigma0);
  if (!(t >= 0.0)) fail(ErrorKind::InvalidArg, "time must be non-negative");
  if (t == 0.0) return sigma0;

  const Mat8 e = (augmented_drift(p) * t).exp();
  if (!e.allFinite()) overflow(p, t, "covariance propagation");
  const Mat4 f11 = e.topLeftCorner<4, 4>();
  const Mat4 f12 = e.topRightCorner<4, 4>();
  // σ(t) = e^{Yt} σ0 e^{Yᵀt} + ∫₀ᵗ e^{Ys} 4D e^{Yᵀs} ds
  //      = F11 σ0 F11ᵀ + F12 F11ᵀ
  Mat4 sigma = f11 * sigma0 * f11.transpose() + f12 * f11.transpose();
  if (!sigma.allFinite()) overflow(p, t, "covariance propagation");
  return 0.5 * (sigma + sigma.transpose());
}

Mat4 propagate_rk4(const SystemParams& p, const Mat4& sigma0, double t,
                   double step) {
  check_covariance(sigma0);
  if (!(t >= 0.0)) fail(ErrorKind::InvalidArg, "time must be non-negative");
  if (!(step > 0.0)) fail(ErrorKind::InvalidArg, "step must be positive");

  const Mat4 y = build_drift(p);
  const Mat4 four_d = 4.0 * build_diffusion(p);
  Mat4 sigma = sigma0;
  double elapsed = 0.0;
  while (elapsed < t) {
    const double h = std::min(step, t - elapsed);
    const Mat4 k1 = lyapunov_rhs(y, four_d, sigma);
    const Mat4 k2 = lyapunov_rhs(y, four_d, Mat4(sigma + 0.5 * h * k1));
    const Mat4 k3 = lyapunov_rhs(y, four_d, Mat4(sigma + 0.5 * h * k2));
    const Mat4 k4 = lyapunov_rhs(y, four_d, Mat4(sigma + h * k3));
    sigma += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    sigma = 0.5 * (sigma + sigma.transpose());
    elapsed += h;
    if (!sigma.allFinite()) overflow(p, elapsed, "RK4 covariance propagation");
  }
  return sigma;
}

Vec2c evolve_mean_field(const SystemParams& p, const Vec2c& psi0, double t) {
  if (!(t >= 0.0)) fail(ErrorKind::InvalidArg, "time must be non-negative");
  const Mat2c h = build_mean_field_hamiltonian(p);
  const Mat2c u = (Complex(0.0, -1.0) * h * t).exp();
  Vec2c psi = u * psi0;
  if (!psi.allFinite()) overflow(p, t, "mean-field propagation");
  return psi;
}

namespace {

void check_physical(const SystemParams& p, const Mat4& sigma, double t,
                    double tol) {
  const auto nu = symplectic_eigenvalues(sigma);
  // At large amplitudes the smallest symplectic eigenvalue is only
  // resolvable down to ~eps·ν_max; widen the band accordingly.
  const double floor_tol =
      std::max(tol, 64.0 * std::numeric_limits<double>::epsilon() * nu[0]);
  if (nu[1] < 1.0 - floor_tol) {
    std::ostringstream os;
    os << "state at t = " << t << " is unphysical: ν_min = " << nu[1]
       << " < 1 - " << floor_tol << " (params g=" << p.g
       << ", γ_L=" << p.gamma_loss << ", γ_G=" << p.gamma_gain << ")";
    fail(ErrorKind::InvalidState, os.str());
  }
}

}  // namespace

namespace {

// Quadrature means evolve with the same drift as the complex amplitudes:
// x_n = sqrt(2) Re <a_n>, p_n = sqrt(2) Im <a_n>.
Vec4 evolve_mean(const SystemParams& p, const Vec4& mean0, double t) {
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  const Vec2c psi0(Complex(mean0(0), mean0(1)) * inv_rt2,
                   Complex(mean0(2), mean0(3)) * inv_rt2);
  const Vec2c psi = evolve_mean_field(p, psi0, t) * std::sqrt(2.0);
  return Vec4(psi(0).real(), psi(0).imag(), psi(1).real(), psi(1).imag());
}

}  // namespace

Trajectory sample_trajectory(const SystemParams& p, const GaussianState& s0,
                             const TrajectoryConfig& cfg) {
  cfg.validate();
  check_covariance(s0.cov);

  Trajectory traj;
  traj.times.reserve(cfg.n_samples);
  traj.states.reserve(cfg.n_samples);
  const double dt = cfg.t_final / (cfg.n_samples - 1);

  if (cfg.integrator == Integrator::Exact) {
    for (int k = 0; k < cfg.n_samples; ++k) {
      const double t = k * dt;
      GaussianState s;
      s.cov = propagate_exact(p, s0.cov, t);
      s.mean = evolve_mean(p, s0.mean, t);
      traj.times.push_back(t);
      traj.states.push_back(std::move(s));
    }
  } else {
    GaussianState s = s0;
    traj.times.push_back(0.0);
    traj.states.push_back(s);
    for (int k = 1; k < cfg.n_samples; ++k) {
      const double t = k * dt;
      s.cov = propagate_rk4(p, s.cov, dt, cfg.rk4_step);
      s.mean = evolve_mean(p, s0.mean, t);
      traj.times.push_back(t);
      traj.states.push_back(s);
    }
  }

  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    check_physical(p, traj.states[k].cov, traj.times[k], cfg.physicality_tol);
  }
  return traj;
}

Mat4 stationary_covariance(const SystemParams& p) {
  if (!(spectral_abscissa(p) < 0.0)) {
    fail(ErrorKind::InvalidArg,
         "no stable fixed point: drift matrix is not Hurwitz");
  }
  const Mat4 y = build_drift(p);
  const Mat4 id = Mat4::Identity();
  // vec(Yσ + σYᵀ) = (1⊗Y + Y⊗1) vec σ with column-major vec
  Eigen::Matrix<double, 16, 16> a = Eigen::Matrix<double, 16, 16>::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      a.block<4, 4>(4 * i, 4 * j) += id(i, j) * y;    // 1 ⊗ Y
      a.block<4, 4>(4 * i, 4 * j) += y(i, j) * id;    // Y ⊗ 1
    }
  }
  const Mat4 four_d = 4.0 * build_diffusion(p);
  Eigen::Matrix<double, 16, 1> rhs;
  for (int j = 0; j < 4; ++j) rhs.segment<4>(4 * j) = -four_d.col(j);
  const Eigen::Matrix<double, 16, 1> x = a.fullPivLu().solve(rhs);
  Mat4 sigma;
  for (int j = 0; j < 4; ++j) sigma.col(j) = x.segment<4>(4 * j);
  return 0.5 * (sigma + sigma.transpose());
}

Mat4 ReducedState::covariance() const {
  Mat4 sigma;
  sigma << a, 0.0, 0.0, d,  //
      0.0, a, -d, 0.0,      //
      0.0, -d, b, 0.0,      //
      d, 0.0, 0.0, b;
  return sigma;
}

std::array<double, 2> ReducedState::symplectic_eigenvalues() const {
  const double diff = a - b, sum = a + b;
  const double delta = sum * sum - 2.0 * w;
  const double root = sum * std::sqrt(diff * diff + 4.0 * d * d);
  const double nu_max = std::sqrt(0.5 * (delta + root));
  const double nu_min = w * std::sqrt(2.0 / (delta + root));
  return {nu_max, nu_min};
}

double ReducedState::ppt_min_eigenvalue() const {
  const double diff = a - b;
  const double delta = diff * diff + 2.0 * w;
  const double root = std::abs(diff) * std::sqrt(diff * diff + 4.0 * w);
  return w * std::sqrt(2.0 / (delta + root));
}

ReducedState propagate_reduced(const SystemParams& p, double t) {
  p.validate();
  if (!(t >= 0.0)) fail(ErrorKind::InvalidArg, "time must be non-negative");
  Vec5 v0;
  v0 << 1.0, 1.0, 0.0, 1.0, 1.0;
  const Mat5 e = (reduced_generator(p) * t).exp();
  if (!e.allFinite()) overflow(p, t, "reduced covariance propagation");
  const ReducedState s = reduced_from_vector(t, e * v0);
  check_reduced(p, s);
  return s;
}

std::vector<ReducedState> sample_reduced(const SystemParams& p,
                                         double t_final, int n_samples) {
  p.validate();
  if (!(t_final > 0.0)) fail(ErrorKind::InvalidArg, "t_final must be positive");
  if (n_samples < 2) fail(ErrorKind::InvalidArg, "n_samples must be >= 2");

  const double dt = t_final / (n_samples - 1);
  const Mat5 step = (reduced_generator(p) * dt).exp();
  if (!step.allFinite()) overflow(p, dt, "reduced covariance propagation");

  std::vector<ReducedState> out;
  out.reserve(n_samples);
  Vec5 v;
  v << 1.0, 1.0, 0.0, 1.0, 1.0;
  out.push_back(reduced_from_vector(0.0, v));
  for (int k = 1; k < n_samples; ++k) {
    v = step * v;
    const ReducedState s = reduced_from_vector(k * dt, v);
    check_reduced(p, s);
    out.push_back(s);
  }
  return out;
}

std::vector<ReducedState> reduced_at_times(const SystemParams& p,
                                           const std::vector<double>& times) {
  std::vector<ReducedState> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(propagate_reduced(p, t));
  return out;
}

}  // namespace ptgl
