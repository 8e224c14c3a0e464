#include "vibwit/polaron.hpp"

#include <cmath>

#include "vibwit/errors.hpp"
#include "vibwit/units.hpp"

namespace vibwit {

void PolaronSpec::validate() const {
  if (omegas.empty()) throw ConfigError("polaron spec has no modes");
  if (g10.size() != omegas.size() || g01.size() != omegas.size()) {
    throw ConfigError("polaron couplings must have one entry per mode");
  }
  for (double w : omegas) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("non-positive frequency");
  }
  for (std::size_t n = 0; n < omegas.size(); ++n) {
    if (!std::isfinite(g10[n]) || !std::isfinite(g01[n])) throw ConfigError("non-finite polaron coupling");
  }
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw ConfigError("temperature must be non-negative");
  if (!std::isfinite(coupling)) throw ConfigError("non-finite coupling");
}

RenormalizedCoupling renormalized_coupling(const PolaronSpec& spec) {
  spec.validate();
  double exponent = 0.0;
  for (std::size_t n = 0; n < spec.omegas.size(); ++n) {
    const double dg = spec.g10[n] - spec.g01[n];
    if (dg == 0.0) continue;
    double coth = 1.0;
    if (spec.temperature > 0.0) {
      const double x = spec.omegas[n] / (2.0 * units::kBoltzmann * spec.temperature);
      coth = 1.0 / std::tanh(x);
    }
    exponent += 0.5 * dg * dg * coth;
  }
  RenormalizedCoupling out;
  out.dressing = std::exp(-exponent);
  out.coupling = spec.coupling * out.dressing;
  return out;
}

double perturbation_magnitude(const PolaronSpec& spec) {
  const double w = renormalized_coupling(spec).dressing;
  return std::abs(spec.coupling) * std::sqrt(std::max(0.0, 1.0 - w * w));
}

PolaronBasis polaron_basis(const PolaronSpec& spec, double e10, double e01) {
  PolaronBasis out;
  out.renormalized = renormalized_coupling(spec);
  out.shifted_e10 = e10;
  out.shifted_e01 = e01;
  for (std::size_t n = 0; n < spec.omegas.size(); ++n) {
    out.shifted_e10 -= spec.omegas[n] * spec.g10[n] * spec.g10[n];
    out.shifted_e01 -= spec.omegas[n] * spec.g01[n] * spec.g01[n];
  }
  out.basis = diagonalize_pair(out.shifted_e10, out.shifted_e01, out.renormalized.coupling);
  return out;
}

PolaronBasis polaron_basis(const PolaronSpec& spec, const DimerModel& model) {
  if (model.site_count != 2) throw ConfigError("no polaron basis for monomer");
  return polaron_basis(spec, model.sites[0].energy_offset, model.sites[1].energy_offset);
}

PolaronSpec build_polaron_spec(const Config& config, const DimerModel& model) {
  if (!config.has("polaron.omegas")) {
    throw ConfigError("no polaron modes; set polaron.omegas, polaron.g10 and polaron.g01");
  }
  PolaronSpec spec;
  spec.omegas = config.get_doubles("polaron.omegas");
  spec.g10 = config.get_doubles("polaron.g10");
  spec.g01 = config.get_doubles("polaron.g01");
  spec.temperature = config.get_double("polaron.temperature", 273.0);
  spec.coupling = config.get_double("polaron.J", model.coupling);
  spec.validate();
  return spec;
}

}  // namespace vibwit
