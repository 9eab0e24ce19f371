#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>

#include "spinrotor/clifford.hpp"

namespace spinrotor {

// Frame pair at fixed cylindrical radius r (lengths in Compton units).
// Omega is the angular velocity of the rotating frame; a nonzero axial
// boost v of the composed transform is declared but not implemented.
struct FrameParams {
  double r = 1.0;
  double Omega = 0.0;
  double v = 0.0;

  void validate() const;
  double s() const;  // sqrt(1 - r^2 Omega^2)
};

// Point on the cylinder: angle phi (radians, unwrapped), axial z, time t.
struct CylEvent {
  double phi = 0.0;
  double z = 0.0;
  double t = 0.0;
  double r = 1.0;
};

// Linear map on (phi, z, t) at fixed r. Mixes the angle with z and t, so it
// is not a Lorentz boost of the embedding space; det a = 1 and the two
// light-speed constraints a21 = a31, a22 + a23 = a32 + a33 hold.
struct FrameTransform {
  Eigen::Matrix3d a;
  double r = 1.0;
  double Omega = 0.0;

  double det() const { return a.determinant(); }
  // max |a21-a31|, |a22+a23-a32-a33|
  double constraint_residual() const;
};

// Spinor operators accompanying the coordinate change. P_Phi = exp(alpha2 Phi/2)
// is the boost part (Hermitian), P_Phi1 = exp(alpha2 alpha3 Phi1/2) the rotation
// part (unitary); P = P_Phi1 P_Phi and P_tilde = beta P beta act on the equation
// and on the spinor respectively.
struct SpinorFrameOps {
  ComplexMatrix4 P;
  ComplexMatrix4 P_tilde;
  double Phi = 0.0;   // tanh Phi = r Omega
  double Phi1 = 0.0;  // sin Phi1 = -r Omega, cos Phi1 = sqrt(1 - r^2 Omega^2)
};

FrameTransform build_transform(const FrameParams& p);
FrameTransform inverse(const FrameTransform& tf);

CylEvent apply(const FrameTransform& tf, const CylEvent& e);

// r^2 phi^2 + z^2 - t^2, preserved by the transform.
double quadratic_invariant(const CylEvent& e);

// Scalar field on the cylinder, f(phi, z, t).
using ScalarField = std::function<double(double, double, double)>;

// Central-difference evaluation of (1/r^2) d^2/dphi^2 + d^2/dz^2 - d^2/dt^2
// applied to f at `at`, in the original frame and in the transformed frame
// (pulling samples back through the linear map). Returns |difference|;
// second-order small in `step` when the operator is frame-invariant.
double dalembert_invariance_check(const ScalarField& f, const FrameParams& p,
                                  const CylEvent& at, double step);

// (dt_rot/dt_lab for a clock at fixed rotating coordinates,
//  dt_rot/dt_lab for a clock at fixed lab coordinates).
// v generalizes to the composed transform; the two are reciprocal at v = 0.
std::pair<double, double> time_dilation_ratios(const FrameParams& p, double v);

struct KinematicState {
  double omega = 0.0;  // angular velocity dphi/dt
  double v = 0.0;      // axial velocity dz/dt
};

// Angular and axial velocity seen from the rotating frame.
KinematicState kinematic_map(const FrameParams& p, const KinematicState& lab);

SpinorFrameOps frame_spinor_operators(const FrameParams& p,
                                      Representation rep = Representation::DiracPauli);

// Difference between P_tilde = beta P beta and the single-exponential form
// exp(alpha2 alpha3 Phi1/2 - alpha2 Phi/2); nonzero because the generators
// do not commute.
double ptilde_sum_form_discrepancy(const FrameParams& p,
                                   Representation rep = Representation::DiracPauli);

// Nonrelativistic comparison map phi' = phi - Omega t.
CylEvent galilean_map(const CylEvent& e, double Omega);

}  // namespace spinrotor
