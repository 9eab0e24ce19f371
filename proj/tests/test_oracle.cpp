#include "spinrotor/oracle.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"
#include "spinrotor/errors.hpp"
#include "spinrotor/quadrature.hpp"

using namespace spinrotor;
using oracle::ResidualReport;
using cd = std::complex<double>;

TEST_CASE("gauss-hermite rules integrate moments exactly") {
  for (int n : {2, 5, 16, 48}) {
    const GaussHermiteRule rule = gauss_hermite(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    double w = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
      w += rule.weights[i];
      m2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
      if (i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    }
    CHECK(w == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gauss_hermite(0), Error);
  CHECK_THROWS_AS(gauss_hermite(1000), Error);
}

TEST_CASE("plane integrator reproduces Gaussian integrals") {
  // f carries the envelope itself; nodes follow exp(-d x^2 - d (y - d2/d)^2)
  const auto unit = [](double x, double y) { return std::exp(-x * x - y * y); };
  CHECK(oracle::integrate_plane(unit, 1.0, 0.0, 32) ==
        doctest::Approx(M_PI).epsilon(1e-12));

  const double d = 0.25, d2 = 0.7071;
  const auto shifted = [&](double x, double y) {
    return std::exp(-d * (x * x + y * y) + 2.0 * d2 * y);
  };
  const double closed = (M_PI / d) * std::exp(d2 * d2 / d);
  const auto [val, ok] = oracle::integrate_plane_checked(shifted, d, d2, 48);
  CHECK(ok);
  CHECK(val == doctest::Approx(closed).epsilon(1e-10));

  CHECK_THROWS_AS(oracle::integrate_plane(unit, 0.0, 0.0, 16), Error);
}

TEST_CASE("sample points are deterministic and inside the core") {
  const auto a = oracle::core_sample_points(0.25, 12, 7);
  const auto b = oracle::core_sample_points(0.25, 12, 7);
  const auto c = oracle::core_sample_points(0.25, 12, 8);
  REQUIRE(a.size() == 12);
  bool same = true, differ = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    same = same && a[i].x == b[i].x && a[i].y == b[i].y && a[i].z == b[i].z &&
           a[i].t == b[i].t;
    differ = differ || a[i].x != c[i].x;
    CHECK(std::abs(a[i].x) <= 3.0);  // 1.5 / sqrt(0.25)
    CHECK(std::abs(a[i].y) <= 3.0);
    CHECK(std::abs(a[i].z) <= 1.0);
    CHECK(std::abs(a[i].t) <= 1.0);
  }
  CHECK(same);
  CHECK(differ);
  CHECK_THROWS_AS(oracle::core_sample_points(0.0, 4, 1), Error);
}

TEST_CASE("free plane waves satisfy the wave equation residual") {
  // A = 0: exact eigenvector of k.alpha + beta at its eigenvalue
  for (Representation rep : {Representation::DiracPauli, Representation::Weyl}) {
    const DiracSet& dm = dirac_matrices(rep);
    const double kx = 0.3, ky = -0.2, kz = 0.5;
    ComplexMatrix4 hmat = kx * dm.alpha1 + ky * dm.alpha2 + kz * dm.alpha3 + dm.beta;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix4> es(hmat);
    const double Epos = es.eigenvalues()(3);
    CHECK(Epos == doctest::Approx(std::sqrt(1.0 + kx * kx + ky * ky + kz * kz))
                      .epsilon(1e-12));
    const ComplexVector4 u = es.eigenvectors().col(3);

    const oracle::SpinorField psi = [&](double x, double y, double z, double t) {
      return ComplexVector4(
          std::exp(cd(0.0, kx * x + ky * y + kz * z - Epos * t)) * u);
    };
    WaveConfig free_cfg{-1e-300, 0.0, 1.0};  // vanishing potential
    const auto pts = oracle::core_sample_points(1.0, 5, 11);
    const ResidualReport rep_out =
        oracle::dirac_residual(psi, free_cfg, pts, 1e-4, rep);
    CHECK_FALSE(rep_out.inconclusive);
    CHECK(rep_out.max_residual < 1e-8);
  }
}

TEST_CASE("calibrated singular mode passes, perturbed mode fails") {
  const WaveConfig cfg{-0.5, 0.0025, 0.25};
  const SingularPair sp = singular_pair(cfg);
  const auto pts = oracle::core_sample_points(0.25, 6, 20240817ULL);

  const ResidualReport good = oracle::dirac_residual(sp.plus, cfg, pts, 2e-3);
  CHECK_FALSE(good.inconclusive);
  CHECK(good.convergence_order > 1.7);
  CHECK(good.convergence_order < 2.3);
  CHECK(good.extrapolated_residual < 1e-8);

  const ModeSolution detuned =
      make_mode(cfg, sp.plus.Ecal * 1.01, sp.plus.p, Branch::PlusSingular);
  const ResidualReport bad = oracle::dirac_residual(detuned, cfg, pts, 2e-3);
  CHECK(bad.max_residual > 1e3 * good.max_residual);
}

TEST_CASE("reduced-operator invariance under the frame map") {
  FrameParams p;
  p.r = 1.0;
  p.Omega = 0.6;
  oracle::PlaneWaveSpinor mode;
  mode.k_phi = 0.7;
  mode.k_z = 0.4;
  mode.omega = 1.1;
  mode.u << cd(0.3, 0.1), cd(-0.2, 0.4), cd(0.5, 0.0), cd(0.1, -0.3);

  const ResidualReport good =
      oracle::rotating_frame_invariance_residual(p, mode, 2e-4);
  CHECK_FALSE(good.inconclusive);
  CHECK(good.extrapolated_residual < 1e-8);
  CHECK(good.convergence_order > 1.7);
  CHECK(good.convergence_order < 2.3);

  const ResidualReport bad =
      oracle::rotating_frame_invariance_residual(p, mode, 2e-4, true);
  CHECK(bad.max_residual > 1e-3);
  CHECK(bad.max_residual > 1e4 * good.max_residual);

  FrameParams still;
  const ResidualReport id_rep =
      oracle::rotating_frame_invariance_residual(still, mode, 2e-4);
  CHECK(id_rep.max_residual < 1e-14);
}

TEST_CASE("quadrature check ties the closed forms together") {
  const WaveConfig cfg{-0.5, 0.005, 0.5};
  const SingularPair sp = singular_pair(cfg);
  const auto q = oracle::quadrature_check(sp.minus, cfg, 48, 0.7, 0.3);
  CHECK(q.converged);
  CHECK(q.weight_integral ==
        doctest::Approx(q.weight_closed_form).epsilon(1e-11));
  CHECK(q.psi_norm_integral == doctest::Approx(1.0).epsilon(1e-9));
  const SpinObservable obs = spin_expectation(sp.minus, cfg);
  const auto s = spin_at(obs, cfg.Omega, 0.7, 0.3);
  for (int k = 0; k < 3; ++k) {
    CHECK(q.spin_integrals[k] == doctest::Approx(s[k]).epsilon(1e-9));
    CHECK(q.spin_pointwise[k] == doctest::Approx(s[k]).epsilon(1e-11));
  }
}

TEST_CASE("brute-force cubic roots match the companion matrix") {
  const auto check_poly = [](double E0, double h, double A) {
    const auto c = characteristic_cubic(E0, h, A);
    const auto brute = oracle::brute_force_roots(c);
    const double Omega = 0.25;
    const auto fast = characteristic_roots(E0, h, 0.5 * (A + Omega), Omega);
    // both sides sorted by (re, im)
    std::array<cd, 3> b = brute.roots;
    std::array<cd, 3> f{fast[0].value, fast[1].value, fast[2].value};
    const auto lt = [](cd x, cd y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    };
    std::sort(b.begin(), b.end(), lt);
    std::sort(f.begin(), f.end(), lt);
    for (int i = 0; i < 3; ++i) {
      const double scale = std::max(1.0, std::abs(f[i]));
      CHECK(std::abs(b[i] - f[i]) < 1e-9 * scale);
    }
  };
  check_poly(2.0, 0.1, -1.5);
  check_poly(0.7, 0.05, 1.2);
  check_poly(3.0, 0.0, -2.0);
  check_poly(1.0, 0.001, -0.75);

  CHECK_THROWS_AS(oracle::brute_force_roots({0.0, 1.0, 1.0, 1.0}), Error);
}

TEST_CASE("convention search lands on the shipped calibration") {
  const oracle::CalibrationOutcome out = oracle::calibrate_conventions();
  CHECK(out.scores.size() == 16);
  CHECK(out.winner.rep == Representation::DiracPauli);
  CHECK(out.winner.d2_convention == D2Convention::Direct);
  CHECK(out.winner.normalization_factor == 2);
  CHECK(out.winner.plus_branch_sign == -1);
  CHECK(out.winner.minus_branch_sign == +1);
  REQUIRE(out.winner_score > 0.0);
  CHECK(out.runner_up_score / out.winner_score >= 1e4);

  const Calibration& shipped = default_calibration();
  CHECK(shipped.rep == out.winner.rep);
  CHECK(shipped.d2_convention == out.winner.d2_convention);
  CHECK(shipped.normalization_factor == out.winner.normalization_factor);
  CHECK(shipped.plus_branch_sign == out.winner.plus_branch_sign);
  CHECK(shipped.winner_margin ==
        doctest::Approx(out.runner_up_score / out.winner_score).epsilon(1e-9));
}
