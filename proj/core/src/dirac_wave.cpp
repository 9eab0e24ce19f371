#include "spinrotor/dirac_wave.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinrotor/constants.hpp"
#include "spinrotor/errors.hpp"

namespace spinrotor {

using cd = std::complex<double>;

void WaveConfig::validate() const {
  if (!std::isfinite(Hz) || !std::isfinite(H) || !std::isfinite(Omega))
    throw Error(ErrorCode::ConfigError, "wave config fields must be finite");
  if (Omega == 0.0)
    throw Error(ErrorCode::ConfigError, "Omega must be nonzero");
  if (H < 0.0)
    throw Error(ErrorCode::ConfigError, "wave amplitude H must be >= 0");
}

DerivedParams derived_params(const WaveConfig& cfg) {
  cfg.validate();
  DerivedParams d;
  d.d = -cfg.Hz / 2.0;
  if (!(d.d > 0.0))
    throw Error(ErrorCode::NonNormalizable,
                "Hz must be negative: the Gaussian envelope width -Hz/2 must be positive");
  d.h = cfg.H / cfg.Omega;
  d.E0 = -cfg.Hz / cfg.Omega;
  return d;
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::PlusSingular: return "plus_singular";
    case Branch::MinusSingular: return "minus_singular";
    case Branch::Regular: return "regular";
  }
  return "unknown";
}

const char* to_string(D2Convention c) {
  return c == D2Convention::Direct ? "direct" : "omega_scaled";
}

std::array<double, 4> characteristic_cubic(double E0, double h, double A) {
  return {1.0, A - E0, -(1.0 + A * E0 + h * h), E0};
}

cd cubic_eval(const std::array<double, 4>& c, cd x) {
  return ((c[0] * x + c[1]) * x + c[2]) * x + c[3];
}

namespace {

cd cubic_deriv(const std::array<double, 4>& c, cd x) {
  return (3.0 * c[0] * x + 2.0 * c[1]) * x + c[2];
}

double coeff_scale(const std::array<double, 4>& c) {
  double m = 1.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

std::array<CubicRoot, 3> characteristic_roots(double E0, double h, double p,
                                              double Omega) {
  if (!std::isfinite(E0) || !std::isfinite(h) || !std::isfinite(p) ||
      !std::isfinite(Omega))
    throw Error(ErrorCode::ConfigError, "characteristic_roots: non-finite input");
  const double A = 2.0 * p - Omega;
  const auto c = characteristic_cubic(E0, h, A);

  Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  comp(0, 2) = -c[3];
  comp(1, 2) = -c[2];
  comp(2, 2) = -c[1];
  Eigen::EigenSolver<Eigen::Matrix3d> es(comp);

  const double scale = coeff_scale(c);
  std::array<CubicRoot, 3> roots;
  for (int i = 0; i < 3; ++i) {
    cd z = es.eigenvalues()(i);
    // one guarded Newton step; skipped near the double-root where f' ~ 0
    for (int it = 0; it < 2; ++it) {
      const cd f = cubic_eval(c, z);
      const cd df = cubic_deriv(c, z);
      if (std::abs(df) < 1e-12 * scale) break;
      const cd znew = z - f / df;
      if (std::abs(cubic_eval(c, znew)) < std::abs(f)) z = znew; else break;
    }
    roots[i].value = z;
    roots[i].residual = std::abs(cubic_eval(c, z)) / scale;
    roots[i].near_pole =
        h != 0.0 && std::abs(z - E0) < 1e-14 * std::max(1.0, std::abs(E0));
  }
  std::sort(roots.begin(), roots.end(), [](const CubicRoot& a, const CubicRoot& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return roots;
}

double singular_momentum(double E0, double Omega, bool corrected) {
  if (E0 == 0.0 || !std::isfinite(E0))
    throw Error(ErrorCode::DomainError, "singular_momentum requires E0 != 0");
  const double base = 1.0 / E0 - E0;
  return (corrected ? 0.5 * base : base) + 0.5 * Omega;
}

double singular_energy(double E0, double Omega) {
  if (E0 == 0.0 || !std::isfinite(E0))
    throw Error(ErrorCode::DomainError, "singular_energy requires E0 != 0");
  return 0.5 * (1.0 / E0 + E0) + 0.5 * Omega;
}

ComplexVector4 ground_state_spinor(double Ecal, double E0, double h) {
  ComplexVector4 psi;
  psi << cd(h * Ecal), cd(-(Ecal + 1.0) * (Ecal - E0)), cd(h * Ecal),
      cd(-(Ecal - 1.0) * (Ecal - E0));
  return psi;
}

double spinor_bracket(double Ecal, double E0, double h) {
  const double dE = Ecal - E0;
  return h * h * Ecal * Ecal + (Ecal * Ecal + 1.0) * dE * dE;
}

double normalization_constant(double bracket, double d, double d2, int factor) {
  if (!(d > 0.0) || !std::isfinite(d))
    throw Error(ErrorCode::DomainError, "normalization requires d > 0");
  if (!(bracket > 0.0))
    throw Error(ErrorCode::DegeneratePair, "normalization of a zero spinor");
  if (factor != 1 && factor != 2)
    throw Error(ErrorCode::ConfigError, "normalization factor must be 1 or 2");
  // log form: exp(d2^2/d) overflows long before N underflows
  const double logN2 = -(std::log(static_cast<double>(factor) * bracket) +
                         std::log(std::numbers::pi / d) + d2 * d2 / d);
  return std::exp(0.5 * logN2);
}

namespace {

double d2_value(double Ecal, double E0, double h, double Omega, D2Convention conv) {
  if (h == 0.0) return 0.0;
  const double base = E0 * h / (2.0 * (Ecal - E0));
  return conv == D2Convention::Direct ? base : base / Omega;
}

}  // namespace

ModeSolution make_mode(const WaveConfig& cfg, double Ecal, double p, Branch branch,
                       const Calibration& calib) {
  const DerivedParams der = derived_params(cfg);
  if (der.h == 0.0 && Ecal == der.E0)
    throw Error(ErrorCode::DegeneratePair,
                "mode degenerates to the zero spinor at h = 0, Ecal = E0");
  ModeSolution m;
  m.Ecal = Ecal;
  m.p = p;
  m.E = Ecal + p;
  m.branch = branch;
  m.d2 = d2_value(Ecal, der.E0, der.h, cfg.Omega, calib.d2_convention);
  const ComplexVector4 raw = ground_state_spinor(Ecal, der.E0, der.h);
  const double bracket = spinor_bracket(Ecal, der.E0, der.h);
  m.N = normalization_constant(bracket, der.d, m.d2, calib.normalization_factor);
  m.psi = m.N * raw;
  return m;
}

SingularPair singular_pair(const WaveConfig& cfg, const Calibration& calib) {
  const DerivedParams der = derived_params(cfg);
  if (!(der.h > 0.0))
    throw Error(ErrorCode::ConfigError,
                "singular pair requires a nonzero wave amplitude (h > 0)");
  if (!(der.E0 > 0.0))
    throw Error(ErrorCode::ConfigError, "singular pair requires E0 > 0");

  const double p = singular_momentum(der.E0, cfg.Omega, true);
  const auto roots = characteristic_roots(der.E0, der.h, p, cfg.Omega);

  // the two roots nearest E0 form the pair; the third sits near -1/E0
  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::abs(roots[a].value - der.E0) < std::abs(roots[b].value - der.E0);
  });
  const CubicRoot& ra = roots[idx[0]];
  const CubicRoot& rb = roots[idx[1]];
  const double scale = std::max(1.0, std::abs(der.E0));
  if (std::abs(ra.value.imag()) > 1e-10 * scale ||
      std::abs(rb.value.imag()) > 1e-10 * scale)
    throw Error(ErrorCode::DegeneratePair,
                "singular pair not resolvable: complex conjugate roots");
  if (std::abs(ra.value - rb.value) < 1e-14 * scale)
    throw Error(ErrorCode::DegeneratePair,
                "singular pair not resolvable: roots merged");

  double e_hi = ra.value.real(), e_lo = rb.value.real();
  if (e_hi < e_lo) std::swap(e_hi, e_lo);

  SingularPair pair;
  pair.large_h_warning = der.h > 0.1;
  pair.plus = make_mode(cfg, e_hi, p, Branch::PlusSingular, calib);
  pair.minus = make_mode(cfg, e_lo, p, Branch::MinusSingular, calib);
  return pair;
}

double d2_leading_order(double E0, Branch branch) {
  if (branch == Branch::Regular)
    throw Error(ErrorCode::ConfigError, "d2_leading_order is for the singular branches");
  const double mag = std::sqrt(E0 * E0 + 1.0) / 2.0;
  return branch == Branch::PlusSingular ? mag : -mag;
}

ComplexVector4 assemble_wavefunction(const ModeSolution& mode, const WaveConfig& cfg,
                                     double x, double y, double z, double t,
                                     const Calibration& calib) {
  const DerivedParams der = derived_params(cfg);
  const double xi = cfg.Omega * (t - z);
  const double cx = std::cos(xi), sx = std::sin(xi);
  const double xt = x * cx + y * sx;   // wave-following transverse coordinates
  const double yt = -x * sx + y * cx;
  const double r2 = x * x + y * y;
  const cd D(-0.5 * der.d * r2 + mode.d2 * yt, -mode.d2 * xt);
  const cd phase = std::exp(cd(0.0, -mode.E * t + mode.p * z) + D);

  const DiracSet& dm = dirac_matrices(calib.rep);
  const ComplexMatrix4 rot = mat_exp(-0.5 * xi * (dm.alpha1 * dm.alpha2));
  return phase * (rot * mode.psi);
}

SpinObservable spin_expectation(const ModeSolution& mode, const WaveConfig& cfg) {
  const DerivedParams der = derived_params(cfg);
  const double dE = mode.Ecal - der.E0;
  const double br = spinor_bracket(mode.Ecal, der.E0, der.h);
  if (!(br > 0.0))
    throw Error(ErrorCode::DegeneratePair, "spin expectation of a zero spinor");
  const double e2 = mode.Ecal * mode.Ecal;
  const double s1_at_zero = -der.h * e2 * dE / br;
  SpinObservable obs;
  obs.amp_perp = std::abs(s1_at_zero);
  obs.phase_sign = s1_at_zero < 0.0 ? -1 : +1;
  obs.s3 = 0.5 * (der.h * der.h * e2 - (e2 + 1.0) * dE * dE) / br;
  return obs;
}

SpinObservable singular_spin_limit(double g, Branch branch) {
  if (!(g > 0.0) || !std::isfinite(g))
    throw Error(ErrorCode::DomainError, "singular_spin_limit requires g > 0");
  if (branch == Branch::Regular)
    throw Error(ErrorCode::ConfigError, "singular_spin_limit is for the singular branches");
  SpinObservable obs;
  obs.amp_perp = 1.0 / std::sqrt(4.0 + g * g);
  obs.s3 = 0.0;
  obs.phase_sign = branch == Branch::PlusSingular ? -1 : +1;
  return obs;
}

std::array<double, 3> spin_at(const SpinObservable& obs, double Omega, double t,
                              double z) {
  const double xi = Omega * (t - z);
  const double a = obs.phase_sign * obs.amp_perp;
  return {a * std::cos(xi), a * std::sin(xi), obs.s3};
}

double suppression_exponent(double E0, double lambda_ratio) {
  if (!(E0 > 0.0) || !std::isfinite(E0))
    throw Error(ErrorCode::DomainError, "suppression_exponent requires E0 > 0");
  if (!(lambda_ratio > 0.0) || !std::isfinite(lambda_ratio))
    throw Error(ErrorCode::DomainError, "suppression_exponent requires lambda_ratio > 0");
  return (E0 * E0 + 1.0) / E0 * lambda_ratio;
}

SiConversion si_to_normalized(const SiInput& in) {
  if (!(in.frequency_hz > 0.0) || !std::isfinite(in.frequency_hz))
    throw Error(ErrorCode::ConfigError, "frequency must be > 0");
  if (!std::isfinite(in.B_z_tesla) || !std::isfinite(in.B_wave_tesla))
    throw Error(ErrorCode::ConfigError, "fields must be finite");

  namespace K = constants;
  const double lam_bar = K::electron_compton;
  const double field_unit = K::elementary_charge * lam_bar * lam_bar / K::hbar;

  SiConversion out;
  out.compton = lam_bar;
  out.lambda_ratio = (K::c / in.frequency_hz) / lam_bar;
  out.cfg.Omega = 2.0 * std::numbers::pi * in.frequency_hz * lam_bar / K::c;
  // negative charge: a physical field +B_z maps to a negative normalized Hz
  out.cfg.Hz = -field_unit * in.B_z_tesla;
  out.cfg.H = field_unit * std::abs(in.B_wave_tesla);
  return out;
}

}  // namespace spinrotor
