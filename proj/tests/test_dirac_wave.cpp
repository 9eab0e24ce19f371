#include "spinrotor/dirac_wave.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"
#include "spinrotor/constants.hpp"
#include "spinrotor/errors.hpp"

using namespace spinrotor;
using cd = std::complex<double>;

namespace {

// d = 0.25, h = 0.01, E0 = 2 (g factor 1)
WaveConfig reference_wave() { return WaveConfig{-0.5, 0.0025, 0.25}; }

}  // namespace

TEST_CASE("derived parameters") {
  const DerivedParams der = derived_params(reference_wave());
  CHECK(der.d == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(der.h == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(der.E0 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(der.g_factor() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(derived_params(WaveConfig{0.1, 0.0, 0.25}), Error);
  try {
    derived_params(WaveConfig{0.1, 0.0, 0.25});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonNormalizable);
  }
  CHECK_THROWS_AS(derived_params(WaveConfig{-0.5, 0.1, 0.0}), Error);
  CHECK_THROWS_AS(derived_params(WaveConfig{-0.5, -0.1, 0.25}), Error);
}

TEST_CASE("characteristic cubic coefficients and roots") {
  // (Ecal^2 + A Ecal - 1)(Ecal - E0) - h^2 Ecal with E0=2, h=0.1, A=-1.5
  const auto c = characteristic_cubic(2.0, 0.1, -1.5);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == doctest::Approx(-3.5).epsilon(1e-15));
  CHECK(c[2] == doctest::Approx(1.99).epsilon(1e-15));
  CHECK(c[3] == doctest::Approx(2.0).epsilon(1e-15));

  const double Omega = 0.25;
  const double p = 0.5 * (-1.5 + Omega);  // so that A = 2p - Omega = -1.5
  const auto roots = characteristic_roots(2.0, 0.1, p, Omega);
  cd sum = 0.0, prod = 1.0;
  for (const CubicRoot& r : roots) {
    CHECK(std::abs(cubic_eval(c, r.value)) < 1e-10);
    CHECK(r.residual < 1e-10);
    CHECK_FALSE(r.near_pole);
    sum += r.value;
    prod *= r.value;
  }
  CHECK(std::abs(sum - cd(3.5)) < 1e-10);    // -c2
  CHECK(std::abs(prod - cd(-2.0)) < 1e-10);  // -c0
}

TEST_CASE("corrected momentum makes E0 a double root at h = 0") {
  const double E0 = 2.0, Omega = 0.25;
  CHECK(singular_momentum(E0, Omega) == doctest::Approx(-0.625).epsilon(1e-15));
  CHECK(singular_momentum(E0, Omega, false) ==
        doctest::Approx(-1.375).epsilon(1e-15));
  CHECK(singular_energy(E0, Omega) == doctest::Approx(1.375).epsilon(1e-15));

  const auto roots = characteristic_roots(E0, 0.0, -0.625, Omega);
  int at_E0 = 0, at_third = 0;
  for (const CubicRoot& r : roots) {
    if (std::abs(r.value - cd(E0)) < 1e-7) ++at_E0;
    if (std::abs(r.value - cd(-0.5)) < 1e-9) ++at_third;
  }
  CHECK(at_E0 == 2);
  CHECK(at_third == 1);

  // without the correction E0 stays a root but only a simple one
  const auto bad = characteristic_roots(E0, 0.0, -1.375, Omega);
  int bad_at_E0 = 0;
  for (const CubicRoot& r : bad)
    if (std::abs(r.value - cd(E0)) < 1e-3) ++bad_at_E0;
  CHECK(bad_at_E0 == 1);
}

TEST_CASE("singular pair at E0 = 2, h = 0.01") {
  const SingularPair sp = singular_pair(reference_wave());
  CHECK_FALSE(sp.large_h_warning);

  // frozen roots of the cleared cubic at p = -0.625
  CHECK(sp.plus.Ecal == doctest::Approx(2.008948258531916).epsilon(1e-12));
  CHECK(sp.minus.Ecal == doctest::Approx(1.9910597415449018).epsilon(1e-12));
  CHECK(sp.plus.p == doctest::Approx(-0.625).epsilon(1e-14));
  CHECK(sp.minus.p == sp.plus.p);
  CHECK(sp.plus.E == doctest::Approx(1.383948258531916).epsilon(1e-12));
  CHECK(sp.plus.branch == Branch::PlusSingular);
  CHECK(sp.minus.branch == Branch::MinusSingular);

  // per-mode envelope shift, direct convention d2 = E0 h / (2 (Ecal - E0))
  CHECK(sp.plus.d2 == doctest::Approx(1.117535883024911).epsilon(1e-12));
  CHECK(sp.minus.d2 ==
        doctest::Approx(2.0 * 0.01 / (2.0 * (sp.minus.Ecal - 2.0))).epsilon(1e-13));
  CHECK(d2_leading_order(2.0, Branch::PlusSingular) ==
        doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-15));
  CHECK(d2_leading_order(2.0, Branch::MinusSingular) ==
        doctest::Approx(-std::sqrt(5.0) / 2.0).epsilon(1e-15));
  CHECK(sp.plus.d2 == doctest::Approx(d2_leading_order(2.0, sp.plus.branch))
                          .epsilon(5e-3));

  // split rate approaches E0/sqrt(E0^2+1)
  const double rate = (sp.plus.Ecal - sp.minus.Ecal) / (2.0 * 0.01);
  CHECK(rate == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-5));
}

TEST_CASE("singular pair at E0 = 1 reproduces the h/sqrt(2) splits") {
  const WaveConfig cfg{-0.25, 2.5e-4, 0.25};  // h = 1e-3
  const SingularPair sp = singular_pair(cfg);
  const double split = 1e-3 / std::sqrt(2.0);
  CHECK(sp.plus.Ecal - 1.0 == doctest::Approx(split).epsilon(0.01));
  CHECK(sp.minus.Ecal - 1.0 == doctest::Approx(-split).epsilon(0.01));
  CHECK(std::abs(sp.plus.E - singular_energy(1.0, 0.25)) < 2e-3);
}

TEST_CASE("large wave amplitudes only warn") {
  const WaveConfig cfg{-0.5, 0.03, 0.25};  // h = 0.12
  CHECK(singular_pair(cfg).large_h_warning);

  CHECK_THROWS_AS(singular_pair(WaveConfig{-0.5, 0.0, 0.25}), Error);
}

TEST_CASE("ground state spinor and bracket") {
  const ComplexVector4 psi = ground_state_spinor(1.0, 2.0, 0.1);
  CHECK(std::abs(psi(0) - cd(0.1)) < 1e-15);
  CHECK(std::abs(psi(1) - cd(2.0)) < 1e-15);
  CHECK(std::abs(psi(2) - cd(0.1)) < 1e-15);
  CHECK(std::abs(psi(3) - cd(0.0)) < 1e-15);

  CHECK(spinor_bracket(1.0, 2.0, 0.1) == doctest::Approx(2.01).epsilon(1e-15));
  // psi^dag psi = 2 * bracket for the whole family
  CHECK(psi.squaredNorm() == doctest::Approx(2.0 * 2.01).epsilon(1e-14));

  const ComplexVector4 zero = ground_state_spinor(2.0, 2.0, 0.0);
  CHECK(zero.norm() == 0.0);
}

TEST_CASE("normalization constant") {
  // unit case: bracket 1, d = pi, no shift, factor 1
  CHECK(normalization_constant(1.0, M_PI, 0.0, 1) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normalization_constant(1.0, M_PI, 0.0, 2) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  CHECK_THROWS_AS(normalization_constant(1.0, -1.0, 0.0, 2), Error);
  CHECK_THROWS_AS(normalization_constant(0.0, M_PI, 0.0, 2), Error);
  CHECK_THROWS_AS(normalization_constant(1.0, M_PI, 0.0, 3), Error);

  // modes carry N with N^2 * 2 * bracket * (pi/d) * exp(d2^2/d) = 1
  const SingularPair sp = singular_pair(reference_wave());
  const double bracket = spinor_bracket(sp.plus.Ecal, 2.0, 0.01);
  const double weight = (M_PI / 0.25) * std::exp(sp.plus.d2 * sp.plus.d2 / 0.25);
  CHECK(sp.plus.N * sp.plus.N * 2.0 * bracket * weight ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sp.plus.psi.squaredNorm() ==
        doctest::Approx(sp.plus.N * sp.plus.N * 2.0 * bracket).epsilon(1e-12));
}

TEST_CASE("degenerate inputs are rejected") {
  WaveConfig cfg = reference_wave();
  cfg.H = 0.0;
  CHECK_THROWS_AS(make_mode(cfg, 2.0, -0.625, Branch::Regular), Error);
  try {
    make_mode(cfg, 2.0, -0.625, Branch::Regular);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegeneratePair);
  }
}

TEST_CASE("assembled wavefunction") {
  const SingularPair sp = singular_pair(reference_wave());
  const ModeSolution& m = sp.plus;

  // at the origin only the spinor survives
  const ComplexVector4 at0 = assemble_wavefunction(m, reference_wave(), 0, 0, 0, 0);
  CHECK((at0 - m.psi).norm() < 1e-14);

  // one wave period multiplies by -exp(-i E T)
  const double T = 2.0 * M_PI / 0.25;
  const cd phase = -std::exp(cd(0.0, -m.E * T));
  const double x = 0.4, y = -0.7, z = 0.3, t = 0.9;
  const ComplexVector4 a = assemble_wavefunction(m, reference_wave(), x, y, z, t);
  const ComplexVector4 b =
      assemble_wavefunction(m, reference_wave(), x, y, z, t + T);
  CHECK((b - phase * a).norm() < 1e-12 * a.norm());

  // Gaussian falloff in the transverse plane
  const ComplexVector4 far =
      assemble_wavefunction(m, reference_wave(), 8.0, 0.0, 0.0, 0.0);
  CHECK(far.norm() < at0.norm() * 1e-3);
}

TEST_CASE("spin observables") {
  SUBCASE("singular limit closed forms") {
    const SpinObservable plus = singular_spin_limit(2.0, Branch::PlusSingular);
    CHECK(plus.amp_perp == doctest::Approx(0.35355339059327373).epsilon(1e-15));
    CHECK(plus.s3 == 0.0);
    CHECK(plus.phase_sign == -1);
    const SpinObservable minus = singular_spin_limit(2.0, Branch::MinusSingular);
    CHECK(minus.amp_perp == doctest::Approx(0.35355339059327373).epsilon(1e-15));
    CHECK(minus.phase_sign == +1);
    // g = 1: amplitude 1/sqrt(5)
    CHECK(singular_spin_limit(1.0, Branch::PlusSingular).amp_perp ==
          doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK_THROWS_AS(singular_spin_limit(2.0, Branch::Regular), Error);
    CHECK_THROWS_AS(singular_spin_limit(-1.0, Branch::PlusSingular), Error);
  }

  SUBCASE("closed form equals the spinor bilinear") {
    const WaveConfig cfg{-0.5, 0.005, 0.5};
    const SingularPair sp = singular_pair(cfg);
    const DiracSet& dm = dirac_matrices(Representation::DiracPauli);
    for (const ModeSolution* m : {&sp.plus, &sp.minus}) {
      const SpinObservable obs = spin_expectation(*m, cfg);
      const double nn = m->psi.squaredNorm();
      const double b1 = 0.5 * (m->psi.adjoint() * dm.sigma1 * m->psi)(0).real() / nn;
      const double b2 = 0.5 * (m->psi.adjoint() * dm.sigma2 * m->psi)(0).real() / nn;
      const double b3 = 0.5 * (m->psi.adjoint() * dm.sigma3 * m->psi)(0).real() / nn;
      CHECK(obs.phase_sign * obs.amp_perp == doctest::Approx(b1).epsilon(1e-12));
      CHECK(b2 == doctest::Approx(0.0).epsilon(1e-13));
      CHECK(obs.s3 == doctest::Approx(b3).epsilon(1e-12));
    }
  }

  SUBCASE("h = 0 mode is fully polarized") {
    WaveConfig cfg = reference_wave();
    cfg.H = 0.0;
    const ModeSolution m = make_mode(cfg, -0.5, -0.625, Branch::Regular);
    const SpinObservable obs = spin_expectation(m, cfg);
    CHECK(obs.amp_perp == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(obs.s3 == doctest::Approx(-0.5).epsilon(1e-14));
  }

  SUBCASE("spin trace follows the wave phase") {
    const SpinObservable obs{0.3, 0.1, -1};
    const auto s = spin_at(obs, 0.5, 1.0, 0.2);
    const double xi = 0.5 * (1.0 - 0.2);
    CHECK(s[0] == doctest::Approx(-0.3 * std::cos(xi)).epsilon(1e-14));
    CHECK(s[1] == doctest::Approx(-0.3 * std::sin(xi)).epsilon(1e-14));
    CHECK(s[2] == 0.1);
  }
}

TEST_CASE("suppression exponent") {
  CHECK(suppression_exponent(1.0, 7.7e9) == doctest::Approx(2.0 * 7.7e9).epsilon(1e-14));
  CHECK(suppression_exponent(2.0, 1.0) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK_THROWS_AS(suppression_exponent(-1.0, 1.0), Error);
  CHECK_THROWS_AS(suppression_exponent(1.0, 0.0), Error);
}

TEST_CASE("si conversion for the electron") {
  const SiConversion conv = si_to_normalized({1.0, 1e-3, 1e11});
  CHECK(conv.compton == doctest::Approx(constants::electron_compton).epsilon(1e-15));
  CHECK(conv.compton == doctest::Approx(3.8615926796e-13).epsilon(1e-9));

  // 100 GHz: Omega ~ 8.09e-10, lambda ratio ~ 7.76e9
  CHECK(conv.cfg.Omega > 8.0e-10);
  CHECK(conv.cfg.Omega < 8.2e-10);
  CHECK(conv.lambda_ratio > 7.7e9);
  CHECK(conv.lambda_ratio < 7.9e9);
  CHECK(conv.lambda_ratio ==
        doctest::Approx(2.0 * M_PI / conv.cfg.Omega).epsilon(1e-12));

  // negative charge: a physical B_z > 0 lands on a normalizable Hz < 0
  CHECK(conv.cfg.Hz < 0.0);
  CHECK(conv.cfg.H > 0.0);
  CHECK(derived_params(conv.cfg).E0 == doctest::Approx(0.28).epsilon(0.05));

  CHECK_THROWS_AS(si_to_normalized({1.0, 0.0, 0.0}), Error);
}

TEST_CASE("calibration is deterministic with the resolved conventions") {
  const Calibration& c1 = default_calibration();
  const Calibration& c2 = default_calibration();
  CHECK(&c1 == &c2);
  CHECK(c1.rep == Representation::DiracPauli);
  CHECK(c1.d2_convention == D2Convention::Direct);
  CHECK(c1.normalization_factor == 2);
  CHECK(c1.plus_branch_sign == -1);
  CHECK(c1.minus_branch_sign == +1);
  CHECK(c1.winner_margin >= 1e4);

  CHECK(to_string(Branch::PlusSingular) == std::string("plus_singular"));
  CHECK(to_string(D2Convention::Direct) == std::string("direct"));
  CHECK(to_string(D2Convention::OmegaScaled) == std::string("omega_scaled"));
}
