#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

#include "vibwit/config.hpp"

namespace vibwit {

using Vec3 = Eigen::Vector3d;

/// V(x, y) = E + sum_k omega_k^2 (x_k - D_k)^2 / 2 in scaled coordinates, with
/// D_k = d_k / sqrt(omega_g,k) and d_k dimensionless.
struct HarmonicSurface {
  double energy_offset = 0.0;               // cm^-1, relative to the carrier
  std::array<double, 2> omega{100.0, 100.0};  // cm^-1, modes x and y
  std::array<double, 2> displacement{0.0, 0.0};

  bool operator==(const HarmonicSurface&) const = default;
};

struct PulseSpec {
  double strength = 1.0;
  double carrier = 0.0;  // cm^-1, relative to the model carrier
  double center = 0.0;   // fs
  double sigma = 0.0;    // fs; zero is the exact broadband limit
  Vec3 polarization = Vec3::UnitZ();

  /// lambda * exp(-(omega - carrier)^2 sigma^2 / 2), omega in cm^-1 relative
  /// to the model carrier.
  double spectral_amplitude(double omega) const;

  static PulseSpec from_fwhm(double fwhm, const Vec3& polarization = Vec3::UnitZ());
  void validate() const;
};

struct DimerModel {
  std::string name = "custom";
  int site_count = 2;
  HarmonicSurface ground;
  std::array<HarmonicSurface, 2> sites;  // |10>, |01>
  HarmonicSurface doubly;                // |f>
  double coupling = 0.0;                 // J, cm^-1
  std::array<Vec3, 2> dipoles{Vec3::UnitX(), Vec3::UnitY()};
  bool f_dipole_rule = true;
  bool f_surface_rule = true;
  double carrier = 12500.0;  // omega_L, cm^-1 (absolute; the stored energies are relative to it)
  double pulse_fwhm = 0.0;   // preset pulse width, fs

  bool has_doubly() const { return site_count == 2; }

  /// Transition dipole between |f> and the single-excitation site state s.
  Vec3 doubly_dipole(int site) const;

  /// Rebuilds the f surface from the site surfaces when f_surface_rule is set.
  void apply_surface_rule();

  /// Throws ConfigError on any invariant violation.
  void validate() const;
};

struct ExcitonBasis {
  Eigen::Matrix2d transform;  // columns are the exciton states in the site basis
  Eigen::Vector2d energies;   // ascending
  double gap() const { return energies(1) - energies(0); }
};

/// Eigenbasis of [[e10, J], [J, e01]] with ascending energies; each column has
/// its largest component positive.
ExcitonBasis diagonalize_pair(double e10, double e01, double coupling);

ExcitonBasis exciton_transform(const DimerModel& model);

/// Exciton gap sqrt((E10 - E01)^2 + 4 J^2).
double exciton_gap(double e10, double e01, double coupling);

/// Dimensionless displacement reproducing a reorganization energy lambda on a
/// mode of excited frequency omega_e, in units of the ground length.
double displacement_from_reorganization(double reorganization, double omega_g, double omega_e);

std::vector<std::string> preset_names();
DimerModel make_preset(const std::string& name);

/// Builds a model from the [model] section (either "preset" or explicit keys).
DimerModel build_model(const Config& config);

}  // namespace vibwit
