#pragma once

namespace spinrotor::constants {

// CODATA 2018 exact / recommended values, SI.
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double c = 2.99792458e8;              // m / s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double electron_mass = 9.1093837015e-31;     // kg

// Reduced Compton wavelength hbar / (m c).
inline constexpr double electron_compton = hbar / (electron_mass * c);  // m

}  // namespace spinrotor::constants
