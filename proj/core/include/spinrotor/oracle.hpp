#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "spinrotor/clifford.hpp"
#include "spinrotor/dirac_wave.hpp"
#include "spinrotor/rotating_frame.hpp"

namespace spinrotor::oracle {

struct ResidualReport {
  double max_residual = 0.0;           // relative residual at the finest step
  double extrapolated_residual = 0.0;  // Richardson-extrapolated across steps
  double convergence_order = 0.0;      // measured between the two finest steps
  double fd_step = 0.0;                // coarsest step of the refinement ladder
  std::string grid_spec;
  std::string convention_used;
  bool inconclusive = false;           // refinement not monotone (roundoff)
};

using SpinorField =
    std::function<ComplexVector4(double x, double y, double z, double t)>;

struct SamplePoint {
  double x = 0.0, y = 0.0, z = 0.0, t = 0.0;
};

// Deterministic samples inside the Gaussian core of width 1/sqrt(d).
std::vector<SamplePoint> core_sample_points(double d, int n,
                                            unsigned long long seed);

// Finite-difference residual of the full wave equation
//   {-i d_t - i alpha . grad - alpha . A + beta} Psi = 0
// with the rotating-wave potential of `cfg`, checked independently of any
// closed-form solution machinery. Three step levels eta, eta/2, eta/4.
ResidualReport dirac_residual(const SpinorField& psi, const WaveConfig& cfg,
                              const std::vector<SamplePoint>& points,
                              double fd_step, Representation rep);

ResidualReport dirac_residual(const ModeSolution& mode, const WaveConfig& cfg,
                              const std::vector<SamplePoint>& points,
                              double fd_step,
                              const Calibration& calib = default_calibration());

struct PlaneWaveSpinor {
  double k_phi = 0.0;
  double k_z = 0.0;
  double omega = 0.0;
  ComplexVector4 u = ComplexVector4::Ones();
};

// Invariance of the reduced cylindrical operator (no radial derivative)
//   -i {d_t + alpha1/(2r) + (alpha2/r) d_phi + alpha3 d_z} + beta
// under the frame map: the transformed-frame residual of the transported
// field must equal the mapped lab residual, with the lab-to-rotating spinor
// map as transport and its beta conjugate on the residual side. The rotation
// exponent sign that realizes the invariance is resolved here and recorded
// in convention_used. use_wrong_operator swaps the boost direction in the
// transport (residual-side operator in place of the spinor-side one) and
// must fail by orders of magnitude.
ResidualReport rotating_frame_invariance_residual(const FrameParams& params,
                                                  const PlaneWaveSpinor& mode,
                                                  double fd_step,
                                                  bool use_wrong_operator = false);

// integral of f(x~, y~) over the plane by Gauss-Hermite adapted to the
// envelope weight exp(-d x~^2 - d (y~ - d2/d)^2); `converged` is a ratio
// test against a higher order.
double integrate_plane(const std::function<double(double, double)>& f, double d,
                       double d2, int order);
std::pair<double, bool> integrate_plane_checked(
    const std::function<double(double, double)>& f, double d, double d2,
    int order);

struct QuadratureReport {
  double weight_integral = 0.0;     // quadrature of exp(-d r^2 + 2 d2 y~)
  double weight_closed_form = 0.0;  // (pi/d) exp(d2^2/d)
  double psi_norm_integral = 0.0;   // quadrature of Psi^dag Psi (should be 1)
  std::array<double, 3> spin_integrals{};   // (1/2) int Psi^dag Sigma_k Psi / int Psi^dag Psi
  std::array<double, 3> spin_pointwise{};   // separable bilinear at the same (t,z)
  int order = 0;
  bool converged = true;
};

QuadratureReport quadrature_check(const ModeSolution& mode, const WaveConfig& cfg,
                                  int order, double t, double z,
                                  const Calibration& calib = default_calibration());

struct CubicRootsBrute {
  std::array<std::complex<double>, 3> roots;
  int n_real = 0;
};

// Sign-change scan plus bisection for one well-conditioned real root, then
// deflation to a quadratic. Independent of the companion-matrix path.
CubicRootsBrute brute_force_roots(const std::array<double, 4>& coeffs);

struct CalibrationOutcome {
  Calibration winner;
  double winner_score = 0.0;
  double runner_up_score = 0.0;
  std::vector<std::pair<std::string, double>> scores;  // tag -> referee score
};

// Exhaustive search over representation x d2 convention x normalization
// factor x branch-sign pairing (16 combinations), refereed by the Dirac
// residual, the normalization quadrature, and the spin bilinears. Throws if
// the winner does not beat the runner-up by at least four orders of magnitude.
CalibrationOutcome calibrate_conventions();

}  // namespace spinrotor::oracle
