#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string_view>

namespace spinrotor {

using ComplexMatrix4 = Eigen::Matrix4cd;
using ComplexVector4 = Eigen::Vector4cd;

enum class Representation { DiracPauli, Weyl };

Representation representation_from_string(std::string_view s);
const char* to_string(Representation r);

// One complete set of Dirac matrices: alpha_k and beta obeying
// {alpha_i, alpha_j} = 2 delta_ij, {alpha_i, beta} = 0, beta^2 = 1,
// plus the spin matrices sigma_k = -i alpha_i alpha_j (i,j,k cyclic).
struct DiracSet {
  Representation rep;
  ComplexMatrix4 alpha1, alpha2, alpha3;
  ComplexMatrix4 beta;
  ComplexMatrix4 sigma1, sigma2, sigma3;
};

const DiracSet& dirac_matrices(Representation rep);

// exp(X) for a 4x4 complex matrix. Uses the closed two-term form whenever
// X^2 is a scalar multiple of the identity (the generators used here all
// satisfy this), otherwise falls back to scaling and squaring.
ComplexMatrix4 mat_exp(const ComplexMatrix4& X);

// Scaling-and-squaring reference implementation, exposed for cross-checks.
ComplexMatrix4 mat_exp_scaling_squaring(const ComplexMatrix4& X);

inline ComplexMatrix4 anticommutator(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  return a * b + b * a;
}

inline ComplexMatrix4 commutator(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  return a * b - b * a;
}

}  // namespace spinrotor
