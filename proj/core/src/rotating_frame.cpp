#include "spinrotor/rotating_frame.hpp"

#include <cmath>

#include "spinrotor/errors.hpp"

namespace spinrotor {

void FrameParams::validate() const {
  if (!(r >= 0.0) || !std::isfinite(r))
    throw Error(ErrorCode::ConfigError, "frame radius must be finite and >= 0");
  if (!std::isfinite(Omega))
    throw Error(ErrorCode::ConfigError, "Omega must be finite");
  if (r * r * Omega * Omega >= 1.0)
    throw Error(ErrorCode::RadiusBound,
                "r^2 Omega^2 >= 1: rotating frame undefined at or beyond the light cylinder");
  if (std::abs(v) >= 1.0)
    throw Error(ErrorCode::ConfigError, "|v| must be < 1");
}

double FrameParams::s() const { return std::sqrt(1.0 - r * r * Omega * Omega); }

double FrameTransform::constraint_residual() const {
  const double c1 = std::abs(a(1, 0) - a(2, 0));
  const double c2 = std::abs(a(1, 1) + a(1, 2) - a(2, 1) - a(2, 2));
  return std::max(c1, c2);
}

FrameTransform build_transform(const FrameParams& p) {
  p.validate();
  if (p.v != 0.0)
    throw Error(ErrorCode::UnsupportedParameter,
                "composed transform with axial boost v != 0 is not implemented");
  const double s = p.s();
  const double r2O = p.r * p.r * p.Omega;
  FrameTransform tf;
  tf.r = p.r;
  tf.Omega = p.Omega;
  tf.a << 1.0,      p.Omega, -p.Omega,
          -r2O / s, s,        r2O * p.Omega / s,
          -r2O / s, 0.0,      1.0 / s;
  return tf;
}

FrameTransform inverse(const FrameTransform& tf) {
  FrameTransform inv;
  inv.r = tf.r;
  inv.Omega = -tf.Omega;  // labeling only; the matrix below is exact
  inv.a = tf.a.inverse();
  return inv;
}

CylEvent apply(const FrameTransform& tf, const CylEvent& e) {
  if (e.r != tf.r)
    throw Error(ErrorCode::FrameMismatch,
                "event radius does not match the transform radius");
  const Eigen::Vector3d x(e.phi, e.z, e.t);
  const Eigen::Vector3d y = tf.a * x;
  return CylEvent{y(0), y(1), y(2), e.r};
}

double quadratic_invariant(const CylEvent& e) {
  return e.r * e.r * e.phi * e.phi + e.z * e.z - e.t * e.t;
}

namespace {

// (1/r^2) f_phiphi + f_zz - f_tt by central second differences.
double box_fd(const ScalarField& f, double r, double phi, double z, double t,
              double h) {
  const double f0 = f(phi, z, t);
  const double dpp = (f(phi + h, z, t) - 2.0 * f0 + f(phi - h, z, t)) / (h * h);
  const double dzz = (f(phi, z + h, t) - 2.0 * f0 + f(phi, z - h, t)) / (h * h);
  const double dtt = (f(phi, z, t + h) - 2.0 * f0 + f(phi, z, t - h)) / (h * h);
  return dpp / (r * r) + dzz - dtt;
}

}  // namespace

double dalembert_invariance_check(const ScalarField& f, const FrameParams& p,
                                  const CylEvent& at, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw Error(ErrorCode::DomainError, "finite-difference step must be > 0");
  const FrameTransform tf = build_transform(p);
  if (at.r != p.r)
    throw Error(ErrorCode::FrameMismatch, "evaluation point radius mismatch");

  const double lab = box_fd(f, p.r, at.phi, at.z, at.t, step);

  const Eigen::Matrix3d ainv = tf.a.inverse();
  // pullback f_rot(x~) = f(a^{-1} x~), sampled around x~ = a x
  const Eigen::Vector3d xt = tf.a * Eigen::Vector3d(at.phi, at.z, at.t);
  const ScalarField frot = [&](double phi, double z, double t) {
    const Eigen::Vector3d x = ainv * Eigen::Vector3d(phi, z, t);
    return f(x(0), x(1), x(2));
  };
  const double rot = box_fd(frot, p.r, xt(0), xt(1), xt(2), step);
  return std::abs(rot - lab);
}

std::pair<double, double> time_dilation_ratios(const FrameParams& p, double v) {
  p.validate();
  if (std::abs(v) >= 1.0)
    throw Error(ErrorCode::ConfigError, "|v| must be < 1");
  const double x = p.r * p.r * p.Omega * p.Omega;
  const double den = 1.0 - v * x;
  if (den == 0.0)
    throw Error(ErrorCode::SingularMap, "time dilation ratio undefined: 1 - v r^2 Omega^2 = 0");
  const double g = std::sqrt(1.0 - v * v) * p.s();
  return {g / den, den / g};
}

KinematicState kinematic_map(const FrameParams& p, const KinematicState& lab) {
  p.validate();
  const double den = 1.0 - p.r * p.r * p.Omega * lab.omega;
  if (std::abs(den) < 1e-300)
    throw Error(ErrorCode::SingularMap,
                "kinematic map singular: 1 - r^2 Omega omega = 0");
  KinematicState rot;
  rot.omega = (lab.omega + lab.v * p.Omega - p.Omega) * p.s() / den;
  rot.v = (-p.r * p.r * p.Omega * lab.omega + lab.v * p.s() * p.s() +
           p.r * p.r * p.Omega * p.Omega) /
          den;
  return rot;
}

SpinorFrameOps frame_spinor_operators(const FrameParams& p, Representation rep) {
  p.validate();
  const DiracSet& d = dirac_matrices(rep);
  SpinorFrameOps ops;
  ops.Phi = std::atanh(p.r * p.Omega);
  ops.Phi1 = std::asin(-p.r * p.Omega);
  const ComplexMatrix4 P_Phi = mat_exp(0.5 * ops.Phi * d.alpha2);
  const ComplexMatrix4 P_Phi1 = mat_exp(0.5 * ops.Phi1 * d.alpha2 * d.alpha3);
  ops.P = P_Phi1 * P_Phi;
  ops.P_tilde = d.beta * ops.P * d.beta;
  return ops;
}

double ptilde_sum_form_discrepancy(const FrameParams& p, Representation rep) {
  const DiracSet& d = dirac_matrices(rep);
  const SpinorFrameOps ops = frame_spinor_operators(p, rep);
  const ComplexMatrix4 sum_form =
      mat_exp(0.5 * ops.Phi1 * d.alpha2 * d.alpha3 - 0.5 * ops.Phi * d.alpha2);
  return (ops.P_tilde - sum_form).cwiseAbs().maxCoeff();
}

CylEvent galilean_map(const CylEvent& e, double Omega) {
  return CylEvent{e.phi - Omega * e.t, e.z, e.t, e.r};
}

}  // namespace spinrotor
