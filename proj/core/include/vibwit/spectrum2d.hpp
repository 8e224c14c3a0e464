#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "vibwit/ensemble.hpp"
#include "vibwit/vibronic.hpp"

namespace vibwit {

/// Rephasing spectrum at one waiting time. Rows of `values` follow
/// `omega_tau`, columns follow `omega_t` (both cm^-1 relative to the carrier,
/// ascending).
struct Spectrum2D {
  double waiting_time = 0.0;  // fs
  std::vector<double> tau;    // fs
  std::vector<double> t;      // fs
  std::vector<double> omega_tau;
  std::vector<double> omega_t;
  Eigen::MatrixXcd time_domain;  // S(tau, T, t) including the dephasing envelope
  Eigen::MatrixXcd values;       // transformed spectrum
  std::map<std::string, std::string> metadata;

  /// (1/(2 pi)^2) sum over the full frequency grid of S~ d omega_tau d omega_t.
  std::complex<double> zero_frequency_integral() const;
};

/// Impulsive-limit rephasing response from the SE, GSB and ESA pathways,
/// multiplied by exp(-G^2 (tau^2 + t^2) / 2) with G the dephasing rate
/// (cm^-1), then transformed as S~ = sum dtau dt exp(-i w_tau tau) exp(i w_t t) S.
/// The tau and t grids must be uniform and start at zero. Isotropic settings
/// average over the six icosahedral lab directions, which is exact for the
/// fourth-rank dipole products. One spectrum is returned per waiting time.
std::vector<Spectrum2D> rephasing_2des(const VibronicSystem& sys, const std::vector<double>& waiting_times,
                                       const std::vector<double>& tau, const std::vector<double>& t,
                                       double dephasing, const PolarizationSetting& polarization);

}  // namespace vibwit
