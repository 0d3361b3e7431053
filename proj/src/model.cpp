#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ptgl {

void SystemParams::validate() const {
  if (!(std::isfinite(g) && std::isfinite(gamma_loss) &&
        std::isfinite(gamma_gain))) {
    fail(ErrorKind::InvalidArg, "system parameters must be finite");
  }
  // g = 0 is allowed here (decoupled modes are useful analytic limits); the
  // CLI layer requires g > 0 since it expresses everything in units of g.
  if (!(g >= 0.0)) {
    std::ostringstream os;
    os << "coupling g must be non-negative, got " << g;
    fail(ErrorKind::InvalidArg, os.str());
  }
  if (gamma_loss < 0.0 || gamma_gain < 0.0) {
    std::ostringstream os;
    os << "rates must be non-negative, got gamma_loss=" << gamma_loss
       << " gamma_gain=" << gamma_gain;
    fail(ErrorKind::InvalidArg, os.str());
  }
}

Mat4 build_drift(const SystemParams& p) {
  p.validate();
  const double g = p.g, gl = p.gamma_loss, gg = p.gamma_gain;
  Mat4 y;
  y << -gl, 0.0, 0.0, g,    //
      0.0, -gl, -g, 0.0,    //
      0.0, g, gg, 0.0,      //
      -g, 0.0, 0.0, gg;
  return y;
}

Mat4 build_diffusion(const SystemParams& p) {
  p.validate();
  Vec4 diag(p.gamma_loss, p.gamma_loss, p.gamma_gain, p.gamma_gain);
  return (0.5 * diag).asDiagonal();
}

Mat2c build_mean_field_hamiltonian(const SystemParams& p) {
  p.validate();
  Mat2c h;
  h << Complex(0.0, -p.gamma_loss), Complex(p.g, 0.0),  //
      Complex(p.g, 0.0), Complex(0.0, p.gamma_gain);
  return h;
}

namespace {

std::array<Complex, 2> sorted_pair(Complex e1, Complex e2) {
  auto before = [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  };
  if (before(e2, e1)) std::swap(e1, e2);
  return {e1, e2};
}

}  // namespace

std::array<Complex, 2> h_eigenvalues(const SystemParams& p) {
  p.validate();
  // tr H = i(γ_G-γ_L), det H = γ_Lγ_G - g²; ε± = iδ ± sqrt(g² - γ̄²).
  const Complex half_tr(0.0, p.rate_imbalance());
  const Complex root =
      std::sqrt(Complex(p.g * p.g - p.mean_rate() * p.mean_rate(), 0.0));
  return sorted_pair(half_tr + root, half_tr - root);
}

std::array<Complex, 2> drift_eigenvalues(const SystemParams& p) {
  p.validate();
  const Complex root =
      std::sqrt(Complex(p.mean_rate() * p.mean_rate() - p.g * p.g, 0.0));
  const Complex delta(p.rate_imbalance(), 0.0);
  return sorted_pair(delta + root, delta - root);
}

double spectral_abscissa(const SystemParams& p) {
  return drift_eigenvalues(p)[0].real();
}

}  // namespace ptgl
