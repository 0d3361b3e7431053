#include "pt_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace ptgl {

const char* to_string(PtPhase p) {
  switch (p) {
    case PtPhase::Unbroken: return "UP";
    case PtPhase::Exceptional: return "EP";
    case PtPhase::Broken: return "BP";
    case PtPhase::NotApplicable: return "n/a";
  }
  return "?";
}

const char* to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::V: return "V";
    case Region::Boundary: return "boundary";
  }
  return "?";
}

const char* to_string(FixedPointType f) {
  switch (f) {
    case FixedPointType::StableSpiral: return "stable_spiral";
    case FixedPointType::StableNode: return "stable_node";
    case FixedPointType::UnstableSpiral: return "unstable_spiral";
    case FixedPointType::UnstableNode: return "unstable_node";
    case FixedPointType::Saddle: return "saddle";
    case FixedPointType::Center: return "center";
    case FixedPointType::Degenerate: return "degenerate";
  }
  return "?";
}

const char* to_string(ScalingForm f) {
  switch (f) {
    case ScalingForm::Constant: return "constant";
    case ScalingForm::PowerLawDecay: return "power_law";
    case ScalingForm::LinearGrowth: return "linear";
    case ScalingForm::LogGrowth: return "logarithmic";
  }
  return "?";
}

RegimeClass classify(const SystemParams& p, double tol) {
  p.validate();
  const double g = p.g, gl = p.gamma_loss, gg = p.gamma_gain;
  const double gbar = p.mean_rate();
  const double rate_scale = std::max({g, gl, gg});

  RegimeClass rc;
  rc.drift_eigenvalues = drift_eigenvalues(p);

  const bool on_line = std::abs(gg - gl) <= tol * rate_scale;
  const bool on_ep_line = std::abs(gbar - g) <= tol * std::max(g, gbar);
  const bool on_hyperbola =
      std::abs(gl * gg - g * g) <= tol * std::max(g * g, gl * gg);

  if (on_line) {
    rc.on_pt_line = true;
    rc.region = Region::Boundary;
    if (on_ep_line) {
      rc.pt_phase = PtPhase::Exceptional;
      rc.fixed_point = FixedPointType::Degenerate;
    } else if (gbar < g) {
      rc.pt_phase = PtPhase::Unbroken;
      rc.fixed_point = FixedPointType::Center;  // purely imaginary pair
    } else {
      rc.pt_phase = PtPhase::Broken;
      rc.fixed_point = FixedPointType::Saddle;  // real pair ±Ω
    }
    return rc;
  }

  rc.pt_phase = PtPhase::NotApplicable;
  if (on_ep_line || on_hyperbola) {
    // coalesced spectrum on the degeneracy line; marginal zero mode on the
    // hyperbola
    rc.region = Region::Boundary;
    rc.fixed_point = FixedPointType::Degenerate;
    return rc;
  }

  if (gl * gg > g * g) {
    rc.region = Region::V;
    rc.fixed_point = FixedPointType::Saddle;
    return rc;
  }
  const bool stable = gl > gg;  // both Re λ share the sign of (γ_G - γ_L)/2
  if (gbar < g) {
    rc.region = stable ? Region::III : Region::I;
    rc.fixed_point =
        stable ? FixedPointType::StableSpiral : FixedPointType::UnstableSpiral;
  } else {
    rc.region = stable ? Region::IV : Region::II;
    rc.fixed_point =
        stable ? FixedPointType::StableNode : FixedPointType::UnstableNode;
  }
  return rc;
}

namespace {

double balanced_rate(const SystemParams& p, PtPhase want, double tol) {
  const RegimeClass rc = classify(p, tol);
  if (!rc.on_pt_line || rc.pt_phase != want) {
    std::ostringstream os;
    os << "asymptotic law for phase " << to_string(want)
       << " queried at γ_L=" << p.gamma_loss << ", γ_G=" << p.gamma_gain
       << ", g=" << p.g << " (" << (rc.on_pt_line ? to_string(rc.pt_phase)
                                                  : "unbalanced rates")
       << ")";
    fail(ErrorKind::PhaseMismatch, os.str());
  }
  return p.mean_rate();
}

void require_positive_time(double t) {
  if (!(t > 0.0)) fail(ErrorKind::InvalidArg, "time must be positive");
}

}  // namespace

UnbrokenAsymptotics asymptotic_up(const SystemParams& p, double t,
                                  double tol) {
  const double gamma = balanced_rate(p, PtPhase::Unbroken, tol);
  require_positive_time(t);
  const double g2 = p.g * p.g;
  UnbrokenAsymptotics out;
  out.mutual_information_limit = std::log(g2 / (g2 - gamma * gamma));
  out.discord = gamma / (2.0 * g2 * t);
  out.oscillation_frequency = 2.0 * std::sqrt(g2 - gamma * gamma);
  return out;
}

BrokenAsymptotics asymptotic_bp(const SystemParams& p, double t, double tol) {
  const double gamma = balanced_rate(p, PtPhase::Broken, tol);
  require_positive_time(t);
  const double g2 = p.g * p.g;
  const double omega = std::sqrt(gamma * gamma - g2);
  BrokenAsymptotics out;
  out.discord_lg_limit =
      std::log((gamma * (gamma + omega) + g2) / (2.0 * gamma * gamma));
  out.discord_gl_limit =
      std::log((gamma * (3.0 * gamma + omega) - g2) / (2.0 * gamma * gamma));
  out.mutual_information_slope = 2.0 * omega;
  out.mutual_information = 2.0 * omega * t;
  return out;
}

ExceptionalAsymptotics asymptotic_ep(const SystemParams& p, double t,
                                     double tol) {
  balanced_rate(p, PtPhase::Exceptional, tol);
  require_positive_time(t);
  ExceptionalAsymptotics out;
  out.mutual_information = std::log(4.0 * p.g * p.g * t * t / 3.0);
  out.discord = 1.0 / (p.g * t);
  return out;
}

double ScalingFit::evaluate(double t) const {
  switch (form) {
    case ScalingForm::Constant: return offset;
    case ScalingForm::PowerLawDecay:
      return std::exp(offset) * std::pow(t, coefficient);
    case ScalingForm::LinearGrowth: return offset + coefficient * t;
    case ScalingForm::LogGrowth: return offset + coefficient * std::log(t);
  }
  return offset;
}

double quantity_of(const CorrelationRecord& r, Quantity q) {
  switch (q) {
    case Quantity::S: return r.S;
    case Quantity::S_L: return r.S_L;
    case Quantity::S_G: return r.S_G;
    case Quantity::I: return r.I;
    case Quantity::D_LG: return r.D_LG;
    case Quantity::D_GL: return r.D_GL;
  }
  return 0.0;
}

namespace {

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
};

LineFit least_squares(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit f;
  f.slope = (denom != 0.0) ? (n * sxy - sx * sy) / denom : 0.0;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

double sse(const std::vector<double>& y, const std::vector<double>& yhat) {
  double s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - yhat[i];
    s += r * r;
  }
  return s;
}

}  // namespace

ScalingFit fit_longtime_scaling(const std::vector<CorrelationRecord>& records,
                                Quantity q, double t_min, double t_max) {
  if (!(t_min > 0.0 && t_max > t_min)) {
    fail(ErrorKind::InvalidArg, "fit window must satisfy 0 < t_min < t_max");
  }
  std::vector<double> t, y;
  for (const auto& r : records) {
    if (r.t >= t_min && r.t <= t_max) {
      t.push_back(r.t);
      y.push_back(quantity_of(r, q));
    }
  }
  if (t.size() < 4) {
    fail(ErrorKind::InvalidArg,
         "fit window contains fewer than 4 trajectory samples");
  }
  const std::size_t n = t.size();

  std::vector<double> log_t(n);
  for (std::size_t i = 0; i < n; ++i) log_t[i] = std::log(t[i]);

  double mean = 0;
  for (double v : y) mean += v;
  mean /= n;
  std::vector<double> yhat(n, mean);
  const double sse_const = sse(y, yhat);
  double scale = 0;
  for (double v : y) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, 1e-300);

  ScalingFit best;
  best.form = ScalingForm::Constant;
  best.offset = mean;
  double best_sse = sse_const;

  auto consider = [&](ScalingForm form, const LineFit& f,
                      const std::vector<double>& predicted) {
    const double s = sse(y, predicted);
    // a trend model must explain at least half the variance around the mean
    if (s < best_sse && s <= 0.5 * sse_const) {
      best_sse = s;
      best.form = form;
      best.coefficient = f.slope;
      best.offset = f.intercept;
    }
  };

  {
    const LineFit f = least_squares(t, y);
    for (std::size_t i = 0; i < n; ++i) yhat[i] = f.intercept + f.slope * t[i];
    consider(ScalingForm::LinearGrowth, f, yhat);
  }
  {
    const LineFit f = least_squares(log_t, y);
    for (std::size_t i = 0; i < n; ++i)
      yhat[i] = f.intercept + f.slope * log_t[i];
    consider(ScalingForm::LogGrowth, f, yhat);
  }
  if (std::all_of(y.begin(), y.end(), [](double v) { return v > 0.0; })) {
    std::vector<double> log_y(n);
    for (std::size_t i = 0; i < n; ++i) log_y[i] = std::log(y[i]);
    const LineFit f = least_squares(log_t, log_y);
    for (std::size_t i = 0; i < n; ++i)
      yhat[i] = std::exp(f.intercept + f.slope * log_t[i]);
    consider(ScalingForm::PowerLawDecay, f, yhat);
  }

  best.goodness = std::sqrt(best_sse / n) / scale;
  return best;
}

Table1Scalings table1_scalings(const SystemParams& p,
                               const std::vector<CorrelationRecord>& records,
                               double t_min, double tol) {
  const RegimeClass rc = classify(p, tol);
  if (!rc.on_pt_line) {
    fail(ErrorKind::PhaseMismatch,
         "entropy scaling table is defined on the balanced line only");
  }
  if (records.empty()) fail(ErrorKind::InvalidArg, "empty trajectory");
  const double t_max = records.back().t;

  Table1Scalings out;
  out.phase = rc.pt_phase;
  out.total = fit_longtime_scaling(records, Quantity::S, t_min, t_max);
  out.loss = fit_longtime_scaling(records, Quantity::S_L, t_min, t_max);
  out.gain = fit_longtime_scaling(records, Quantity::S_G, t_min, t_max);

  // drift of the entropy differences over the second half of the window
  auto value_near = [&](double t_target, auto&& get) {
    const CorrelationRecord* bestr = &records.front();
    for (const auto& r : records) {
      if (std::abs(r.t - t_target) < std::abs(bestr->t - t_target)) bestr = &r;
    }
    return get(*bestr);
  };
  const double t_half = 0.5 * (t_min + t_max);
  auto s_minus_sg = [](const CorrelationRecord& r) { return r.S - r.S_G; };
  auto s_minus_sl = [](const CorrelationRecord& r) { return r.S - r.S_L; };
  out.s_minus_sg_drift =
      std::abs(value_near(t_max, s_minus_sg) - value_near(t_half, s_minus_sg));
  out.s_minus_sl_drift =
      std::abs(value_near(t_max, s_minus_sl) - value_near(t_half, s_minus_sl));

  const double gain_slope = out.gain.coefficient;
  out.growth_rate_ratio =
      (gain_slope != 0.0) ? out.loss.coefficient / gain_slope
                          : std::numeric_limits<double>::quiet_NaN();
  const double sl_end =
      value_near(t_max, [](const CorrelationRecord& r) { return r.S_L; });
  const double i_end =
      value_near(t_max, [](const CorrelationRecord& r) { return r.I; });
  out.mutual_info_over_sl =
      (sl_end != 0.0) ? i_end / sl_end : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double dominant_frequency(const std::vector<double>& times,
                          const std::vector<double>& values,
                          double omega_min) {
  const std::size_t n = times.size();
  if (n < 16 || values.size() != n) {
    fail(ErrorKind::InvalidArg, "need at least 16 uniform samples");
  }
  const double dt = times[1] - times[0];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::abs((times[i + 1] - times[i]) - dt) > 1e-9 * std::abs(dt)) {
      fail(ErrorKind::InvalidArg, "samples must be uniform in time");
    }
  }

  // remove the slow baseline, then Hann window
  std::vector<double> x(n);
  {
    LineFit trend = least_squares(times, values);
    for (std::size_t i = 0; i < n; ++i) {
      const double hann =
          0.5 * (1.0 - std::cos(2.0 * M_PI * i / (n - 1)));
      x[i] = (values[i] - trend.intercept - trend.slope * times[i]) * hann;
    }
  }

  const double domega = 2.0 * M_PI / (n * dt);
  const std::size_t k_lo = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(omega_min / domega)));
  const std::size_t k_hi = n / 2;
  if (k_lo >= k_hi) fail(ErrorKind::InvalidArg, "omega_min above Nyquist");

  std::vector<double> mag(k_hi + 1, 0.0);
  for (std::size_t k = std::max<std::size_t>(1, k_lo - 1); k <= k_hi; ++k) {
    std::complex<double> acc(0.0, 0.0);
    const double base = -2.0 * M_PI * k / n;
    for (std::size_t i = 0; i < n; ++i) {
      acc += x[i] * std::polar(1.0, base * i);
    }
    mag[k] = std::abs(acc);
  }

  std::size_t k_peak = k_lo;
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    if (mag[k] > mag[k_peak]) k_peak = k;
  }
  double delta = 0.0;
  if (k_peak > k_lo && k_peak < k_hi && mag[k_peak] > 0.0) {
    const double lm = std::log(std::max(mag[k_peak - 1], 1e-300));
    const double cm = std::log(std::max(mag[k_peak], 1e-300));
    const double rm = std::log(std::max(mag[k_peak + 1], 1e-300));
    const double denom = lm - 2.0 * cm + rm;
    if (denom != 0.0) delta = 0.5 * (lm - rm) / denom;
  }
  return (k_peak + delta) * domega;
}

double ep_critical_exponent(double g, double ratio_min, double ratio_max,
                            int n_points) {
  if (!(g > 0.0 && ratio_min > 1.0 && ratio_max > ratio_min && n_points >= 4)) {
    fail(ErrorKind::InvalidArg, "bad critical-exponent fit window");
  }
  std::vector<double> log_eps, log_d;
  for (int k = 0; k < n_points; ++k) {
    const double f = static_cast<double>(k) / (n_points - 1);
    const double eps =
        std::exp(std::log(ratio_min - 1.0) +
                 f * (std::log(ratio_max - 1.0) - std::log(ratio_min - 1.0)));
    SystemParams p{g, g * (1.0 + eps), g * (1.0 + eps)};
    const BrokenAsymptotics bp = asymptotic_bp(p, 1.0);
    log_eps.push_back(std::log(eps));
    log_d.push_back(std::log(bp.discord_gl_limit));
  }
  return least_squares(log_eps, log_d).slope;
}

}  // namespace ptgl
