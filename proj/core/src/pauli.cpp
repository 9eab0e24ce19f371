#include "spinrotor/pauli.hpp"

#include <cmath>

#include "spinrotor/errors.hpp"

namespace spinrotor {

void PauliConfig::validate() const {
  if (!std::isfinite(g) || !std::isfinite(H) || !std::isfinite(Hz) ||
      !std::isfinite(Omega))
    throw Error(ErrorCode::ConfigError, "pauli config fields must be finite");
}

double SpinVector::norm() const {
  return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3);
}

SpinVector spin_rhs(const SpinVector& s, const PauliConfig& cfg) {
  cfg.validate();
  if (s.frame != SpinFrame::Rotating)
    throw Error(ErrorCode::FrameMismatch,
                "spin_rhs expects a rotating-frame spin vector");
  const double delta = cfg.detuning();
  const double gH = cfg.g * cfg.H;
  SpinVector ds;
  ds.s1 = delta * s.s2;
  ds.s2 = gH * s.s3 - delta * s.s1;
  ds.s3 = -gH * s.s2;
  ds.frame = SpinFrame::Rotating;
  return ds;
}

double default_time_step(const PauliConfig& cfg) {
  const double rate = std::abs(cfg.g * cfg.H) + std::abs(cfg.detuning());
  return 0.01 / (rate + 1e-12);
}

namespace {

std::array<double, 3> rhs(const std::array<double, 3>& s, double delta, double gH) {
  return {delta * s[1], gH * s[2] - delta * s[0], -gH * s[1]};
}

std::array<double, 3> axpy(const std::array<double, 3>& s, double a,
                           const std::array<double, 3>& d) {
  return {s[0] + a * d[0], s[1] + a * d[1], s[2] + a * d[2]};
}

}  // namespace

std::vector<SpinSample> integrate_spin(const SpinVector& s0, const PauliConfig& cfg,
                                       double t_max, double dt) {
  cfg.validate();
  if (s0.frame != SpinFrame::Rotating)
    throw Error(ErrorCode::FrameMismatch,
                "integrate_spin expects a rotating-frame initial spin");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw Error(ErrorCode::ConfigError, "time step must be finite and > 0");
  if (!(t_max >= 0.0) || !std::isfinite(t_max))
    throw Error(ErrorCode::ConfigError, "t_max must be finite and >= 0");
  if (std::abs(s0.norm() - 1.0) > 1e-9)
    throw Error(ErrorCode::DomainError, "initial spin must be unit length");

  const double delta = cfg.detuning();
  const double gH = cfg.g * cfg.H;

  std::vector<SpinSample> out;
  out.reserve(static_cast<size_t>(t_max / dt) + 2);
  std::array<double, 3> s{s0.s1, s0.s2, s0.s3};
  double t = 0.0;
  out.push_back({t, SpinVector{s[0], s[1], s[2], SpinFrame::Rotating}});
  while (t < t_max - 1e-12 * std::max(1.0, t_max)) {
    const double h = std::min(dt, t_max - t);
    const auto k1 = rhs(s, delta, gH);
    const auto k2 = rhs(axpy(s, 0.5 * h, k1), delta, gH);
    const auto k3 = rhs(axpy(s, 0.5 * h, k2), delta, gH);
    const auto k4 = rhs(axpy(s, h, k3), delta, gH);
    for (int i = 0; i < 3; ++i)
      s[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t += h;
    out.push_back({t, SpinVector{s[0], s[1], s[2], SpinFrame::Rotating}});
  }
  return out;
}

double resonance_frequency(double g, double Hz) { return -g * Hz; }

SpinVector analytic_resonant_solution(const PauliConfig& cfg, double t) {
  cfg.validate();
  if (std::abs(cfg.detuning()) > 1e-12)
    throw Error(ErrorCode::DomainError,
                "analytic solution requires Omega + g Hz = 0");
  const double w = cfg.g * cfg.H;
  return SpinVector{0.0, std::sin(w * t), std::cos(w * t), SpinFrame::Rotating};
}

SpinVector to_lab_frame(const SpinVector& s, double Omega, double t) {
  if (s.frame != SpinFrame::Rotating)
    throw Error(ErrorCode::FrameMismatch, "to_lab_frame expects a rotating-frame spin");
  const double c = std::cos(Omega * t), sn = std::sin(Omega * t);
  return SpinVector{s.s1 * c - s.s2 * sn, s.s1 * sn + s.s2 * c, s.s3, SpinFrame::Lab};
}

std::vector<SpinSample> to_lab_frame(const std::vector<SpinSample>& series, double Omega) {
  std::vector<SpinSample> out;
  out.reserve(series.size());
  for (const auto& p : series) out.push_back({p.t, to_lab_frame(p.s, Omega, p.t)});
  return out;
}

}  // namespace spinrotor
