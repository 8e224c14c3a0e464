#pragma once

#include <cmath>
#include <numbers>

namespace vibwit::units {

// Energies are wavenumbers (cm^-1), times are femtoseconds, hbar = 1.
inline constexpr double kSpeedOfLight = 2.99792458e-5;  // cm / fs
inline constexpr double kRadPerFsPerWavenumber = 2.0 * std::numbers::pi * kSpeedOfLight;
inline constexpr double kBoltzmann = 0.6950348;  // cm^-1 / K

/// Angular frequency in rad/fs for a wavenumber in cm^-1.
inline constexpr double to_rad_per_fs(double wavenumber) {
  return wavenumber * kRadPerFsPerWavenumber;
}

inline constexpr double to_wavenumber(double rad_per_fs) {
  return rad_per_fs / kRadPerFsPerWavenumber;
}

inline double fwhm_to_sigma(double fwhm) {
  return fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
}

inline double sigma_to_fwhm(double sigma) {
  return sigma * 2.0 * std::sqrt(2.0 * std::numbers::ln2);
}

}  // namespace vibwit::units
