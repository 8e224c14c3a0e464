#pragma once

#include <vector>

#include "vibwit/config.hpp"
#include "vibwit/model.hpp"

namespace vibwit {

/// Linear exciton-phonon couplings of a dimer for the full-polaron
/// transformation. Mode n has frequency omegas[n] and dimensionless couplings
/// g10[n], g01[n] to the two sites.
struct PolaronSpec {
  std::vector<double> omegas;  // cm^-1
  std::vector<double> g10;
  std::vector<double> g01;
  double temperature = 273.0;  // K; zero means the ground state
  double coupling = 0.0;       // bare J, cm^-1

  void validate() const;
};

struct RenormalizedCoupling {
  double dressing = 1.0;  // <w>
  double coupling = 0.0;  // J <w>
};

/// <w> = exp(-1/2 sum_n (g10 - g01)^2 coth(omega_n / 2 kT)).
RenormalizedCoupling renormalized_coupling(const PolaronSpec& spec);

/// J sqrt(1 - <w>^2); small values mean the zeroth-order polaron picture holds.
double perturbation_magnitude(const PolaronSpec& spec);

struct PolaronBasis {
  ExcitonBasis basis;      // columns are the polaron states in the site basis
  double shifted_e10 = 0.0;  // E10 - sum_n omega_n g10^2
  double shifted_e01 = 0.0;
  RenormalizedCoupling renormalized;
};

/// Diagonalizes [[E10 - sum w g10^2, J<w>], [J<w>, E01 - sum w g01^2]].
PolaronBasis polaron_basis(const PolaronSpec& spec, double e10, double e01);
/// Same, with the site energies taken from a dimer model; throws for a monomer.
PolaronBasis polaron_basis(const PolaronSpec& spec, const DimerModel& model);

/// Reads polaron.omegas, polaron.g10, polaron.g01 (comma lists),
/// polaron.temperature and polaron.J (defaults to the model coupling).
PolaronSpec build_polaron_spec(const Config& config, const DimerModel& model);

}  // namespace vibwit
