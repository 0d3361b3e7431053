#include "correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ptgl {

namespace {

thread_local ClampStats g_clamp;

double clamp_nonneg(double x, const char* what) {
  if (x >= 0.0) return x;
  if (x > -1e-9) {
    ++g_clamp.count;
    g_clamp.max_magnitude = std::max(g_clamp.max_magnitude, -x);
    return 0.0;
  }
  std::ostringstream os;
  os << what << " = " << x << " is negative beyond the rounding budget";
  fail(ErrorKind::InvalidState, os.str());
}

// f(ν) for the von Neumann entropy of one symplectic eigenvalue. The
// rearranged form log((ν-1)/2) + ((ν+1)/2)·log1p(2/(ν-1)) keeps the two
// O(ν log ν) terms from cancelling at large ν.
double vn_term(double nu) {
  if (nu <= 1.0) return 0.0;
  if (nu < 2.0) {
    const double xp = 0.5 * (nu + 1.0), xm = 0.5 * (nu - 1.0);
    return xp * std::log(xp) - (xm > 0.0 ? xm * std::log(xm) : 0.0);
  }
  return std::log(0.5 * (nu - 1.0)) +
         0.5 * (nu + 1.0) * std::log1p(2.0 / (nu - 1.0));
}

// Precision floor for "ν ≥ 1" checks: below ~eps·ν_max the small eigenvalue
// is not resolvable from the matrix entries.
double nu_floor(double nu_max) {
  return std::max(kPhysicalityTol,
                  64.0 * std::numeric_limits<double>::epsilon() * nu_max);
}

void require_physical_nu(double nu_min, double nu_max) {
  if (nu_min < 1.0 - nu_floor(nu_max)) {
    std::ostringstream os;
    os << "unphysical covariance: ν_min = " << nu_min << " < 1";
    fail(ErrorKind::InvalidState, os.str());
  }
}

}  // namespace

ClampStats clamp_stats() { return g_clamp; }
void reset_clamp_stats() { g_clamp = ClampStats{}; }

Mat2 GaussianMeasurement::covariance() const {
  const double c = std::cos(phi), s = std::sin(phi);
  Mat2 rot;
  rot << c, -s, s, c;
  Mat2 squeeze = Mat2::Zero();
  squeeze(0, 0) = std::exp(2.0 * r);
  squeeze(1, 1) = std::exp(-2.0 * r);
  return rot * squeeze * rot.transpose();
}

double entropy(const Mat2& block, EntropyKind kind) {
  const double ld = log_det(block);
  if (kind == EntropyKind::Renyi2) {
    return clamp_nonneg(0.5 * ld, "Renyi-2 block entropy");
  }
  const double nu = std::exp(0.5 * ld);  // single-mode symplectic eigenvalue
  require_physical_nu(nu, nu);
  return vn_term(std::max(nu, 1.0));
}

double entropy(const Mat4& cov, EntropyKind kind) {
  if (kind == EntropyKind::Renyi2) {
    return clamp_nonneg(0.5 * log_det(cov), "Renyi-2 entropy");
  }
  const auto nu = symplectic_eigenvalues(cov);
  require_physical_nu(nu[1], nu[0]);
  return vn_term(std::max(nu[0], 1.0)) + vn_term(std::max(nu[1], 1.0));
}

double mutual_information(const Mat4& cov, EntropyKind kind) {
  const auto b = blocks(cov);
  const double i =
      entropy(b.loss, kind) + entropy(b.gain, kind) - entropy(cov, kind);
  return clamp_nonneg(i, "mutual information");
}

Mat2 conditional_covariance(const Mat4& cov, const GaussianMeasurement& m) {
  check_covariance(cov);
  const auto b = blocks(cov);
  const Mat2 measured =
      (m.target == GaussianMeasurement::Target::OnG ? b.gain : b.loss) +
      m.covariance();
  const double det = measured.determinant();
  if (!(det > 0.0)) {
    fail(ErrorKind::InvalidState,
         "singular measured-mode covariance in conditional update");
  }
  Mat2 inv;
  inv << measured(1, 1), -measured(0, 1), -measured(1, 0), measured(0, 0);
  inv /= det;
  Mat2 out;
  if (m.target == GaussianMeasurement::Target::OnG) {
    out = b.loss - b.cross * inv * b.cross.transpose();
  } else {
    out = b.gain - b.cross.transpose() * inv * b.cross;
  }
  return 0.5 * (out + out.transpose());
}

namespace {

double discord_with_measurement(const Mat4& cov, Direction dir,
                                EntropyKind kind,
                                const GaussianMeasurement& m) {
  const auto b = blocks(cov);
  const Mat2& measured_block = (dir == Direction::LG) ? b.gain : b.loss;
  const double d = entropy(measured_block, kind) - entropy(cov, kind) +
                   entropy(conditional_covariance(cov, m), kind);
  return clamp_nonneg(d, "discord");
}

GaussianMeasurement measurement_for(Direction dir, double r, double phi) {
  GaussianMeasurement m;
  m.r = r;
  m.phi = phi;
  m.target = (dir == Direction::LG) ? GaussianMeasurement::Target::OnG
                                    : GaussianMeasurement::Target::OnL;
  return m;
}

}  // namespace

double discord_heterodyne(const Mat4& cov, Direction dir, EntropyKind kind) {
  return discord_with_measurement(cov, dir, kind,
                                  measurement_for(dir, 0.0, 0.0));
}

namespace {

// Measurement covariance from the chart (u, v) = r(cos 2φ, sin 2φ):
// exp(2[[u, v], [v, -u]]) = cosh(2ρ)·1 + sinh(2ρ)/ρ·[[u, v], [v, -u]].
Mat2 measurement_cov_uv(double u, double v) {
  const double rho = std::hypot(u, v);
  Mat2 out = Mat2::Identity() * std::cosh(2.0 * rho);
  if (rho > 0.0) {
    const double scale = std::sinh(2.0 * rho) / rho;
    out(0, 0) += scale * u;
    out(1, 1) -= scale * u;
    out(0, 1) += scale * v;
    out(1, 0) += scale * v;
  }
  return out;
}

struct UvObjective {
  const Mat4& cov;
  Direction dir;
  EntropyKind kind;

  double operator()(double u, double v) const {
    const auto b = blocks(cov);
    const Mat2& measured_block = (dir == Direction::LG) ? b.gain : b.loss;
    const Mat2 sum = measured_block + measurement_cov_uv(u, v);
    const double det = sum.determinant();
    if (!(det > 0.0)) return std::numeric_limits<double>::infinity();
    Mat2 inv;
    inv << sum(1, 1), -sum(0, 1), -sum(1, 0), sum(0, 0);
    inv /= det;
    Mat2 cond;
    if (dir == Direction::LG) {
      cond = b.loss - b.cross * inv * b.cross.transpose();
    } else {
      cond = b.gain - b.cross.transpose() * inv * b.cross;
    }
    cond = 0.5 * (cond + cond.transpose());
    try {
      return entropy(measured_block, kind) - entropy(cov, kind) +
             entropy(cond, kind);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  }
};

}  // namespace

DiscordMinimum discord_minimized(const Mat4& cov, Direction dir,
                                 EntropyKind kind, const DiscordGrid& grid) {
  check_covariance(cov);
  const UvObjective obj{cov, dir, kind};

  double best = std::numeric_limits<double>::infinity();
  double best_u = 0.0, best_v = 0.0;
  for (int ir = 0; ir < grid.n_r; ++ir) {
    const double r = grid.r_max * ir / (grid.n_r - 1);
    for (int ip = 0; ip < grid.n_phi; ++ip) {
      const double phi = M_PI * ip / grid.n_phi;
      const double u = r * std::cos(2.0 * phi), v = r * std::sin(2.0 * phi);
      const double val = obj(u, v);
      if (val < best) {
        best = val;
        best_u = u;
        best_v = v;
      }
      if (r == 0.0) break;  // r = 0 is one point regardless of φ
    }
  }

  // Nelder–Mead refinement in the (u, v) chart.
  struct Vertex {
    double u, v, f;
  };
  const double h = std::max(0.5 * grid.r_max / (grid.n_r - 1), 1e-4);
  std::array<Vertex, 3> s = {
      Vertex{best_u, best_v, best},
      Vertex{best_u + h, best_v, obj(best_u + h, best_v)},
      Vertex{best_u, best_v + h, obj(best_u, best_v + h)}};
  auto order = [&s]() {
    std::sort(s.begin(), s.end(),
              [](const Vertex& x, const Vertex& y) { return x.f < y.f; });
  };
  order();
  for (int iter = 0; iter < 300; ++iter) {
    if (s[2].f - s[0].f < 1e-12 * std::max(1.0, std::abs(s[0].f))) break;
    const double cu = 0.5 * (s[0].u + s[1].u), cv = 0.5 * (s[0].v + s[1].v);
    const double ru = cu + (cu - s[2].u), rv = cv + (cv - s[2].v);
    const double fr = obj(ru, rv);
    if (fr < s[0].f) {
      const double eu = cu + 2.0 * (cu - s[2].u),
                   ev = cv + 2.0 * (cv - s[2].v);
      const double fe = obj(eu, ev);
      s[2] = (fe < fr) ? Vertex{eu, ev, fe} : Vertex{ru, rv, fr};
    } else if (fr < s[1].f) {
      s[2] = Vertex{ru, rv, fr};
    } else {
      const double ku = cu + 0.5 * (s[2].u - cu), kv = cv + 0.5 * (s[2].v - cv);
      const double fk = obj(ku, kv);
      if (fk < s[2].f) {
        s[2] = Vertex{ku, kv, fk};
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].u = 0.5 * (s[i].u + s[0].u);
          s[i].v = 0.5 * (s[i].v + s[0].v);
          s[i].f = obj(s[i].u, s[i].v);
        }
      }
    }
    order();
  }

  DiscordMinimum out;
  out.value = clamp_nonneg(s[0].f, "minimized discord");
  const double rho = std::hypot(s[0].u, s[0].v);
  double phi = (rho > 0.0) ? 0.5 * std::atan2(s[0].v, s[0].u) : 0.0;
  if (phi < 0.0) phi += M_PI;
  out.argmin = measurement_for(dir, rho, phi);
  return out;
}

double ppt_min_eigenvalue(const Mat4& cov) {
  return symplectic_eigenvalues(partial_transpose(cov))[1];
}

double central_identity_from(double mutual_information,
                             double measured_entropy) {
  // log(e^S + 1), overflow-safe
  const double sp =
      (measured_entropy > 0.0)
          ? measured_entropy + std::log1p(std::exp(-measured_entropy))
          : std::log1p(std::exp(measured_entropy));
  return std::log1p(std::exp(mutual_information - sp) - std::exp(-sp));
}

double central_identity_rhs(const Mat4& cov, Direction dir) {
  const auto b = blocks(cov);
  const double i = mutual_information(cov, EntropyKind::Renyi2);
  const double s_meas =
      entropy(dir == Direction::LG ? b.gain : b.loss, EntropyKind::Renyi2);
  return central_identity_from(i, s_meas);
}

double approx_identity_rhs(double s, double s_l, double s_g) {
  const double arg = 1.0 + std::exp(-(s - s_l)) - std::exp(-s_g);
  if (!(arg > 0.0)) {
    std::ostringstream os;
    os << "long-time discord approximation invalid here: log argument = "
       << arg;
    fail(ErrorKind::DomainError, os.str());
  }
  return std::log(arg);
}

CorrelationRecord correlations(const Mat4& cov, double t, EntropyKind kind) {
  check_covariance(cov);
  const auto b = blocks(cov);
  CorrelationRecord r;
  r.t = t;
  r.S = entropy(cov, kind);
  r.S_L = entropy(b.loss, kind);
  r.S_G = entropy(b.gain, kind);
  r.I = clamp_nonneg(r.S_L + r.S_G - r.S, "mutual information");
  r.D_LG = discord_heterodyne(cov, Direction::LG, kind);
  r.D_GL = discord_heterodyne(cov, Direction::GL, kind);
  r.nu_pt_min = ppt_min_eigenvalue(cov);
  return r;
}

// --- reduced path ----------------------------------------------------------

double entropy_joint(const ReducedState& s, EntropyKind kind) {
  if (kind == EntropyKind::Renyi2) {
    return clamp_nonneg(std::log(s.w), "Renyi-2 entropy");
  }
  const auto nu = s.symplectic_eigenvalues();
  require_physical_nu(nu[1], nu[0]);
  return vn_term(std::max(nu[0], 1.0)) + vn_term(std::max(nu[1], 1.0));
}

double entropy_loss(const ReducedState& s, EntropyKind kind) {
  return (kind == EntropyKind::Renyi2)
             ? clamp_nonneg(std::log(s.a), "Renyi-2 block entropy")
             : vn_term(std::max(s.a, 1.0));
}

double entropy_gain(const ReducedState& s, EntropyKind kind) {
  return (kind == EntropyKind::Renyi2)
             ? clamp_nonneg(std::log(s.b), "Renyi-2 block entropy")
             : vn_term(std::max(s.b, 1.0));
}

namespace {

// Heterodyne conditional covariance scale: σ_{L|G} = ((w+a)/(b+1))·1,
// σ_{G|L} = ((w+b)/(a+1))·1.
double conditional_scale(const ReducedState& s, Direction dir) {
  return (dir == Direction::LG) ? (s.w + s.a) / (s.b + 1.0)
                                : (s.w + s.b) / (s.a + 1.0);
}

}  // namespace

double discord_heterodyne(const ReducedState& s, Direction dir,
                          EntropyKind kind) {
  if (kind == EntropyKind::Renyi2) {
    // S_meas - S + S_cond = log1p(unmeasured/w) - log1p(1/measured)
    const double unmeasured = (dir == Direction::LG) ? s.a : s.b;
    const double measured = (dir == Direction::LG) ? s.b : s.a;
    const double d =
        std::log1p(unmeasured / s.w) - std::log1p(1.0 / measured);
    return clamp_nonneg(d, "discord");
  }
  const double measured_entropy =
      (dir == Direction::LG) ? entropy_gain(s, kind) : entropy_loss(s, kind);
  const double d = measured_entropy - entropy_joint(s, kind) +
                   vn_term(std::max(conditional_scale(s, dir), 1.0));
  return clamp_nonneg(d, "discord");
}

double central_identity_rhs(const ReducedState& s, Direction dir) {
  const double i = clamp_nonneg(std::log(s.a) + std::log(s.b) - std::log(s.w),
                                "mutual information");
  const double s_meas = (dir == Direction::LG) ? std::log(s.b) : std::log(s.a);
  return central_identity_from(i, s_meas);
}

double conditional_entropy_squeezed(const ReducedState& s, Direction dir,
                                    double r, EntropyKind kind) {
  const double unmeasured = (dir == Direction::LG) ? s.a : s.b;
  const double measured = (dir == Direction::LG) ? s.b : s.a;
  const double xp = std::exp(2.0 * r), xm = std::exp(-2.0 * r);
  const double log_det = std::log(s.w + unmeasured * xp) -
                         std::log(measured + xp) +
                         std::log(s.w + unmeasured * xm) -
                         std::log(measured + xm);
  if (kind == EntropyKind::Renyi2) return 0.5 * log_det;
  return vn_term(std::max(std::exp(0.5 * log_det), 1.0));
}

ReducedDiscordMinimum discord_minimized_r(const ReducedState& s,
                                          Direction dir, EntropyKind kind,
                                          double r_max) {
  const double measured_entropy =
      (dir == Direction::LG) ? entropy_gain(s, kind) : entropy_loss(s, kind);
  const double base = measured_entropy - entropy_joint(s, kind);
  auto obj = [&](double r) {
    return base + conditional_entropy_squeezed(s, dir, r, kind);
  };

  const int n = 129;
  double best_r = 0.0, best = obj(0.0);
  for (int k = 1; k < n; ++k) {
    const double r = r_max * k / (n - 1);
    const double val = obj(r);
    if (val < best) {
      best = val;
      best_r = r;
    }
  }
  // golden-section polish around the best grid point
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = std::max(0.0, best_r - r_max / (n - 1));
  double hi = std::min(r_max, best_r + r_max / (n - 1));
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = obj(x1), f2 = obj(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = obj(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = obj(x2);
    }
  }
  const double r_opt = 0.5 * (lo + hi);
  const double f_opt = obj(r_opt);
  ReducedDiscordMinimum out;
  if (f_opt < best) {
    out.value = clamp_nonneg(f_opt, "minimized discord");
    out.r = r_opt;
  } else {
    out.value = clamp_nonneg(best, "minimized discord");
    out.r = best_r;
  }
  return out;
}

CorrelationRecord correlations(const ReducedState& s, EntropyKind kind) {
  CorrelationRecord r;
  r.t = s.t;
  r.S = entropy_joint(s, kind);
  r.S_L = entropy_loss(s, kind);
  r.S_G = entropy_gain(s, kind);
  r.I = clamp_nonneg(r.S_L + r.S_G - r.S, "mutual information");
  r.D_LG = discord_heterodyne(s, Direction::LG, kind);
  r.D_GL = discord_heterodyne(s, Direction::GL, kind);
  r.nu_pt_min = s.ppt_min_eigenvalue();
  return r;
}

std::vector<CorrelationRecord> reduced_records(const SystemParams& p,
                                               double t_final, int n_samples,
                                               EntropyKind kind) {
  const auto states = sample_reduced(p, t_final, n_samples);
  std::vector<CorrelationRecord> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(correlations(s, kind));
  return out;
}

std::vector<CorrelationRecord> reduced_records_at(
    const SystemParams& p, const std::vector<double>& times,
    EntropyKind kind) {
  const auto states = reduced_at_times(p, times);
  std::vector<CorrelationRecord> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(correlations(s, kind));
  return out;
}

}  // namespace ptgl
