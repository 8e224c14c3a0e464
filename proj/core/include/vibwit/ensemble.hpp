#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vibwit/model.hpp"
#include "vibwit/trace.hpp"

namespace vibwit {

struct DisorderSpec {
  int samples = 1;
  double std_dev = 0.0;      // cm^-1
  double correlation = 0.0;  // between the two site energies
  std::uint64_t seed = 0;

  void validate() const;
};

inline constexpr const char* kRngName = "mt19937_64 + boost::random::normal_distribution (ziggurat)";

/// Site-energy shifts (dE10, dE01) per sample. Both coordinates of a sample
/// are drawn from one sequential stream: z1, z2, then the next sample.
std::vector<std::array<double, 2>> sample_site_shifts(const DisorderSpec& spec, int site_count);

/// Copies of `base` with correlated Gaussian shifts on E10 and E01.
std::vector<DimerModel> sample_disorder(const DisorderSpec& spec, const DimerModel& base);

/// Isotropic average of (a.z)(b.z)(c.z)(d.z) over molecular orientations.
double zzzz_average(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);
/// Same identity for complex dipoles; the products are bilinear (no conjugation).
std::complex<double> zzzz_average(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b, const Eigen::Vector3cd& c,
                                  const Eigen::Vector3cd& d);

/// The six axes through opposite vertices of a regular icosahedron. Averaging a
/// polynomial of degree at most 5 over them equals the sphere average.
const std::array<Vec3, 6>& icosahedral_directions();

/// How the four field-dipole projections are weighted. Order of arguments is
/// (probe, pump, pump, probe).
struct PolarizationSetting {
  bool isotropic = true;
  Vec3 pump = Vec3::UnitZ();
  Vec3 probe = Vec3::UnitZ();

  double weight(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) const;
  std::complex<double> weight(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b, const Eigen::Vector3cd& c,
                              const Eigen::Vector3cd& d) const;
  std::string describe() const;
};

/// Weighted mean of traces on a common axis with compensated summation.
SignalTrace ensemble_average(const std::vector<SignalTrace>& traces,
                             const std::optional<std::vector<double>>& weights = std::nullopt);

}  // namespace vibwit
