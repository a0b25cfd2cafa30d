#pragma once

#include <cmath>
#include <complex>

// Unit conventions used throughout the library:
//   - scalar frequencies (Rabi, detuning, blockade) are stored as 2pi x MHz,
//     matching the way they are usually quoted for Rydberg experiments;
//   - time is stored in ns;
//   - operator matrix elements are in angular units of rad/ns, so that the
//     accumulated phase of exp(-i H t) is dimensionless;
//   - decoherence rates are stored in plain kHz (no 2pi) and converted to 1/ns.
// Conversions happen only at the boundaries defined here.

namespace rydsim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// 1 unit of "2pi x MHz" equals 2pi * 1e-3 rad/ns.
inline constexpr double kRadPerNsPer2PiMhz = kTwoPi * 1e-3;

// 1 kHz = 1e-6 / ns.
inline constexpr double kPerNsPerKhz = 1e-6;

inline double rad_per_ns(double f_2pi_mhz) { return f_2pi_mhz * kRadPerNsPer2PiMhz; }
inline double to_2pi_mhz(double omega_rad_per_ns) { return omega_rad_per_ns / kRadPerNsPer2PiMhz; }
inline double khz_to_per_ns(double rate_khz) { return rate_khz * kPerNsPerKhz; }

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};

// Wraps an angle into (-pi, pi].
inline double principal_angle(double phi) {
  double x = std::remainder(phi, kTwoPi);
  if (x <= -kPi) x += kTwoPi;
  return x;
}

}  // namespace rydsim
