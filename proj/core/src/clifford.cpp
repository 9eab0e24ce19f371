#include "spinrotor/clifford.hpp"

#include <cmath>

#include "spinrotor/errors.hpp"

namespace spinrotor {

namespace {

using Mat2 = Eigen::Matrix2cd;
using cd = std::complex<double>;

Mat2 pauli(int k) {
  Mat2 m;
  switch (k) {
    case 1: m << cd(0), cd(1), cd(1), cd(0); break;
    case 2: m << cd(0), cd(0, -1), cd(0, 1), cd(0); break;
    default: m << cd(1), cd(0), cd(0), cd(-1); break;
  }
  return m;
}

ComplexMatrix4 off_diag(const Mat2& a, const Mat2& b) {
  ComplexMatrix4 m = ComplexMatrix4::Zero();
  m.block<2, 2>(0, 2) = a;
  m.block<2, 2>(2, 0) = b;
  return m;
}

ComplexMatrix4 block_diag(const Mat2& a, const Mat2& b) {
  ComplexMatrix4 m = ComplexMatrix4::Zero();
  m.block<2, 2>(0, 0) = a;
  m.block<2, 2>(2, 2) = b;
  return m;
}

DiracSet make_set(Representation rep) {
  DiracSet s;
  s.rep = rep;
  const Mat2 id = Mat2::Identity();
  if (rep == Representation::DiracPauli) {
    s.alpha1 = off_diag(pauli(1), pauli(1));
    s.alpha2 = off_diag(pauli(2), pauli(2));
    s.alpha3 = off_diag(pauli(3), pauli(3));
    s.beta = block_diag(id, -id);
  } else {
    s.alpha1 = block_diag(-pauli(1), pauli(1));
    s.alpha2 = block_diag(-pauli(2), pauli(2));
    s.alpha3 = block_diag(-pauli(3), pauli(3));
    s.beta = off_diag(id, id);
  }
  const cd mi(0, -1);
  s.sigma1 = mi * s.alpha2 * s.alpha3;
  s.sigma2 = mi * s.alpha3 * s.alpha1;
  s.sigma3 = mi * s.alpha1 * s.alpha2;
  return s;
}

}  // namespace

Representation representation_from_string(std::string_view s) {
  if (s == "dirac_pauli" || s == "dirac-pauli") return Representation::DiracPauli;
  if (s == "weyl") return Representation::Weyl;
  throw Error(ErrorCode::ConfigError,
              "unknown representation tag '" + std::string(s) +
                  "' (expected dirac_pauli or weyl)");
}

const char* to_string(Representation r) {
  return r == Representation::DiracPauli ? "dirac_pauli" : "weyl";
}

const DiracSet& dirac_matrices(Representation rep) {
  static const DiracSet dp = make_set(Representation::DiracPauli);
  static const DiracSet wy = make_set(Representation::Weyl);
  return rep == Representation::DiracPauli ? dp : wy;
}

ComplexMatrix4 mat_exp_scaling_squaring(const ComplexMatrix4& X) {
  if (!X.allFinite())
    throw Error(ErrorCode::DomainError, "mat_exp: non-finite input");
  const double norm = X.cwiseAbs().maxCoeff();
  int squarings = 0;
  if (norm > 0.25) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  }
  const ComplexMatrix4 A = X / std::pow(2.0, squarings);
  ComplexMatrix4 sum = ComplexMatrix4::Identity();
  ComplexMatrix4 term = ComplexMatrix4::Identity();
  for (int k = 1; k <= 40; ++k) {
    term = (term * A) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

ComplexMatrix4 mat_exp(const ComplexMatrix4& X) {
  if (!X.allFinite())
    throw Error(ErrorCode::DomainError, "mat_exp: non-finite input");
  const ComplexMatrix4 X2 = X * X;
  const cd c = X2.trace() / 4.0;
  const double dev = (X2 - c * ComplexMatrix4::Identity()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, X2.cwiseAbs().maxCoeff());
  if (dev <= 1e-12 * scale) {
    // X^2 = c, so exp(X) = cosh(sqrt(c)) + sinh(sqrt(c))/sqrt(c) * X.
    // For c < 0 this is the cos/sin form; both fall out of the complex sqrt.
    const cd k = std::sqrt(c);
    if (std::abs(k) < 1e-8) {
      // sinh(k)/k -> 1 + k^2/6, keeps full precision through the limit
      return ComplexMatrix4::Identity() + (1.0 + c / 6.0) * X;
    }
    return std::cosh(k) * ComplexMatrix4::Identity() + (std::sinh(k) / k) * X;
  }
  return mat_exp_scaling_squaring(X);
}

}  // namespace spinrotor
