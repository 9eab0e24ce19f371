#pragma once

#include <array>
#include <vector>

namespace spinrotor {

// Constant axial field Hz plus a circularly polarized transverse field of
// amplitude H co-rotating with the frame at angular velocity Omega.
// Fields are in normalized (critical-field) units, g is the gyromagnetic ratio.
struct PauliConfig {
  double g = 2.0;
  double H = 0.0;
  double Hz = 0.0;
  double Omega = 0.0;

  void validate() const;
  double detuning() const { return Omega + g * Hz; }
};

enum class SpinFrame { Rotating, Lab };

struct SpinVector {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 1.0;
  SpinFrame frame = SpinFrame::Rotating;

  double norm() const;
};

struct SpinSample {
  double t = 0.0;
  SpinVector s;
};

// Right-hand side of the averaged-spin equations in the rotating frame:
//   s1' = (Omega + g Hz) s2
//   s2' = g H s3 - (Omega + g Hz) s1
//   s3' = -g H s2
SpinVector spin_rhs(const SpinVector& s, const PauliConfig& cfg);

// Stable step for the fixed-step integrator, 0.01 / max angular rate.
double default_time_step(const PauliConfig& cfg);

// Classic fixed-step RK4 from t = 0 to t_max; samples at every step.
std::vector<SpinSample> integrate_spin(const SpinVector& s0, const PauliConfig& cfg,
                                       double t_max, double dt);

// Frame angular velocity that cancels the axial precession: Omega* = -g Hz.
double resonance_frequency(double g, double Hz);

// On-resonance solution from s(0) = (0,0,1): a full flip at t = pi / (g H).
SpinVector analytic_resonant_solution(const PauliConfig& cfg, double t);

SpinVector to_lab_frame(const SpinVector& s, double Omega, double t);
std::vector<SpinSample> to_lab_frame(const std::vector<SpinSample>& series, double Omega);

}  // namespace spinrotor
