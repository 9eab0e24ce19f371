#include "spinrotor/rotating_frame.hpp"

#include <cmath>

#include "doctest.h"
#include "spinrotor/errors.hpp"

using namespace spinrotor;

namespace {

FrameParams reference_frame() {
  FrameParams p;
  p.r = 1.0;
  p.Omega = 0.6;
  return p;
}

double mdiff(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("transform matrix at r=1, Omega=0.6") {
  const FrameTransform tf = build_transform(reference_frame());
  // s = 0.8, r^2 Omega / s = 0.75, r^2 Omega^2 / s = 0.45
  Eigen::Matrix3d want;
  want << 1.0, 0.6, -0.6,
      -0.75, 0.8, 0.45,
      -0.75, 0.0, 1.25;
  CHECK((tf.a - want).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(tf.det() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(tf.constraint_residual() < 1e-15);

  const FrameTransform inv = inverse(tf);
  Eigen::Matrix3d want_inv;
  want_inv << 1.0, -0.75, 0.75,
      0.6, 0.8, 0.0,
      0.6, -0.45, 1.25;
  CHECK((inv.a - want_inv).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((inv.a * tf.a - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
        1e-13);
}

TEST_CASE("omega = 0 gives the identity map") {
  FrameParams p;
  p.r = 1.7;
  const FrameTransform tf = build_transform(p);
  CHECK((tf.a - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("events transform with the invariant intact") {
  const FrameTransform tf = build_transform(reference_frame());
  const CylEvent e{0.3, -0.4, 0.25, 1.0};
  const CylEvent out = apply(tf, e);
  CHECK(out.phi == doctest::Approx(-0.09).epsilon(1e-13));
  CHECK(out.z == doctest::Approx(-0.4325).epsilon(1e-13));
  CHECK(out.t == doctest::Approx(0.0875).epsilon(1e-13));
  CHECK(quadratic_invariant(e) == doctest::Approx(0.1875).epsilon(1e-14));
  CHECK(quadratic_invariant(out) ==
        doctest::Approx(quadratic_invariant(e)).epsilon(1e-12));

  // a lab light ray z = t stays a light ray
  const CylEvent ray{0.2, 0.7, 0.7, 1.0};
  const CylEvent tray = apply(tf, ray);
  CHECK(tray.z / tray.t == doctest::Approx(1.0).epsilon(1e-13));

  CHECK_THROWS_AS(apply(tf, CylEvent{0.0, 0.0, 0.0, 2.0}), Error);
}

TEST_CASE("parameter validation") {
  FrameParams fast;
  fast.r = 2.0;
  fast.Omega = 0.5;  // r Omega = 1, on the bound
  CHECK_THROWS_AS(build_transform(fast), Error);
  try {
    build_transform(fast);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RadiusBound);
  }

  FrameParams boosted = reference_frame();
  boosted.v = 0.2;
  CHECK_THROWS_AS(build_transform(boosted), Error);
  try {
    build_transform(boosted);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedParameter);
  }
}

TEST_CASE("clock rates are (s, 1/s) and reciprocal") {
  const auto [frame_clock, lab_clock] = time_dilation_ratios(reference_frame(), 0.0);
  CHECK(frame_clock == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(lab_clock == doctest::Approx(1.25).epsilon(1e-14));

  const auto [f2, l2] = time_dilation_ratios(reference_frame(), 0.5);
  CHECK(f2 * l2 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(f2 ==
        doctest::Approx(std::sqrt(0.75) * 0.8 / 0.82).epsilon(1e-13));
}

TEST_CASE("kinematic map") {
  const FrameParams p = reference_frame();

  SUBCASE("co-rotation is exactly at rest") {
    const KinematicState rot = kinematic_map(p, {0.6, 0.0});
    CHECK(rot.omega == 0.0);
    CHECK(rot.v == 0.0);
  }
  SUBCASE("lab rest acquires frame velocities") {
    const KinematicState rot = kinematic_map(p, {0.0, 0.0});
    CHECK(rot.omega == doctest::Approx(-0.48).epsilon(1e-14));
    CHECK(rot.v == doctest::Approx(0.36).epsilon(1e-14));
  }
  SUBCASE("near-critical frames push speed toward 1") {
    double prev_speed = 0.0;
    double prev_omega = 1.0;
    for (double x : {0.99, 0.999, 0.9999}) {
      FrameParams q;
      q.r = 1.0;
      q.Omega = std::sqrt(x);
      const KinematicState rot = kinematic_map(q, {0.0, 0.0});
      const double speed = std::hypot(q.r * rot.omega, rot.v);
      CHECK(std::abs(rot.omega) < prev_omega);
      CHECK(speed > prev_speed);
      prev_omega = std::abs(rot.omega);
      prev_speed = speed;
    }
    CHECK(prev_speed > 0.999);
  }
  SUBCASE("resonant denominator") {
    CHECK_THROWS_AS(kinematic_map(p, {1.0 / 0.6, 0.0}), Error);
    try {
      kinematic_map(p, {1.0 / 0.6, 0.0});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SingularMap);
    }
  }
}

TEST_CASE("spinor frame operators") {
  const FrameParams p = reference_frame();
  const DiracSet& dm = dirac_matrices(Representation::DiracPauli);
  const SpinorFrameOps ops = frame_spinor_operators(p);

  CHECK(ops.Phi == doctest::Approx(std::log(2.0)).epsilon(1e-15));  // atanh 0.6
  CHECK(ops.Phi1 == doctest::Approx(std::asin(-0.6)).epsilon(1e-15));

  const ComplexMatrix4 boost = mat_exp(ComplexMatrix4(0.5 * ops.Phi * dm.alpha2));
  const ComplexMatrix4 rot =
      mat_exp(ComplexMatrix4(0.5 * ops.Phi1 * (dm.alpha2 * dm.alpha3)));
  CHECK(mdiff(ops.P, rot * boost) < 1e-13);
  CHECK(mdiff(ops.P_tilde, dm.beta * ops.P * dm.beta) < 1e-13);

  CHECK(mdiff(boost, boost.adjoint()) < 1e-13);
  CHECK(mdiff(rot * rot.adjoint(), ComplexMatrix4::Identity()) < 1e-13);
  // beta conjugation inverts the boost and fixes the rotation
  CHECK(mdiff(dm.beta * boost * dm.beta * boost, ComplexMatrix4::Identity()) <
        1e-13);
  CHECK(mdiff(dm.beta * rot * dm.beta, rot) < 1e-13);
  CHECK(std::abs(ops.P.determinant() - std::complex<double>(1.0, 0.0)) < 1e-12);

  // single-exponential shortcut for P_tilde is measurably wrong
  CHECK(ptilde_sum_form_discrepancy(p) > 1e-3);

  FrameParams still;
  const SpinorFrameOps id_ops = frame_spinor_operators(still);
  CHECK(mdiff(id_ops.P, ComplexMatrix4::Identity()) < 1e-15);
  CHECK(mdiff(id_ops.P_tilde, ComplexMatrix4::Identity()) < 1e-15);
  CHECK(ptilde_sum_form_discrepancy(still) < 1e-15);
}

TEST_CASE("galilean comparison map") {
  const CylEvent e{1.0, -0.3, 2.0, 1.0};
  const CylEvent g = galilean_map(e, 0.5);
  CHECK(g.phi == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g.z == e.z);
  CHECK(g.t == e.t);
  const CylEvent same = galilean_map(e, 0.0);
  CHECK(same.phi == e.phi);
}

TEST_CASE("wave operator is frame-invariant on smooth fields") {
  const FrameParams p = reference_frame();
  const CylEvent at{0.3, -0.4, 0.25, 1.0};

  // quadratic field: the second differences are exact, residual is rounding
  const ScalarField quad = [](double, double, double t) { return t * t; };
  CHECK(dalembert_invariance_check(quad, p, at, 1e-2) < 1e-9);

  const ScalarField wave = [](double phi, double z, double t) {
    return std::cos(0.55 * phi - 0.35 * z + 0.45 * t - 0.8);
  };
  CHECK(dalembert_invariance_check(wave, p, at, 1e-3) < 1e-6);

  // not a plane wave, not a symmetry eigenfunction; invariance is generic
  const ScalarField lumpy = [](double phi, double z, double t) {
    return std::sin(phi) * std::exp(0.3 * z) * std::cos(0.7 * t);
  };
  CHECK(dalembert_invariance_check(lumpy, p, at, 1e-3) < 1e-5);

  CHECK_THROWS_AS(dalembert_invariance_check(quad, p, at, 0.0), Error);
}
