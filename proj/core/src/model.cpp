#include "vibwit/model.hpp"

#include <boost/algorithm/string.hpp>

#include <cmath>

#include "vibwit/defaults.hpp"
#include "vibwit/errors.hpp"
#include "vibwit/units.hpp"

namespace vibwit {

double PulseSpec::spectral_amplitude(double omega) const {
  if (sigma == 0.0) return strength;
  double x = units::to_rad_per_fs(omega - carrier) * sigma;
  return strength * std::exp(-0.5 * x * x);
}

PulseSpec PulseSpec::from_fwhm(double fwhm, const Vec3& polarization) {
  PulseSpec pulse;
  pulse.sigma = units::fwhm_to_sigma(fwhm);
  pulse.polarization = polarization;
  pulse.validate();
  return pulse;
}

void PulseSpec::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("pulse width must be non-negative");
  if (std::abs(polarization.norm() - 1.0) > 1e-12) throw ConfigError("pulse polarization must be a unit vector");
}

Vec3 DimerModel::doubly_dipole(int site) const {
  if (!has_doubly()) throw ConfigError("monomer has no doubly excited state");
  return f_dipole_rule ? dipoles[1 - site] : dipoles[site];
}

void DimerModel::apply_surface_rule() {
  if (!f_surface_rule || site_count != 2) return;
  doubly.energy_offset = sites[0].energy_offset + sites[1].energy_offset;
  doubly.omega = {sites[0].omega[0], sites[1].omega[1]};
  doubly.displacement = {sites[0].displacement[0], sites[1].displacement[1]};
}

namespace {

void check_surface(const HarmonicSurface& s, const std::string& label) {
  for (int k = 0; k < 2; ++k) {
    if (!(s.omega[k] > 0.0) || !std::isfinite(s.omega[k])) {
      throw ConfigError("non-positive frequency on surface " + label);
    }
    if (!std::isfinite(s.displacement[k])) throw ConfigError("non-finite displacement on surface " + label);
  }
  if (!std::isfinite(s.energy_offset)) throw ConfigError("non-finite energy on surface " + label);
}

}  // namespace

void DimerModel::validate() const {
  if (site_count != 1 && site_count != 2) throw ConfigError("site_count must be 1 or 2");
  check_surface(ground, "g");
  check_surface(sites[0], "10");
  if (site_count == 1) {
    if (coupling != 0.0) throw ConfigError("site_count=1 with J != 0");
  } else {
    check_surface(sites[1], "01");
    check_surface(doubly, "f");
    if (f_surface_rule) {
      DimerModel expected = *this;
      expected.apply_surface_rule();
      if (!(expected.doubly == doubly)) throw ConfigError("f surface does not follow V_f = V_10 + V_01");
    }
  }
  if (!std::isfinite(coupling)) throw ConfigError("non-finite coupling");
  if (!(carrier > 0.0)) throw ConfigError("non-positive frequency: carrier");
  if (!(pulse_fwhm >= 0.0)) throw ConfigError("pulse FWHM must be non-negative");
  for (int s = 0; s < site_count; ++s) {
    if (!dipoles[s].allFinite()) throw ConfigError("non-finite transition dipole");
  }
}

double exciton_gap(double e10, double e01, double coupling) {
  return std::hypot(e10 - e01, 2.0 * coupling);
}

ExcitonBasis diagonalize_pair(double e10, double e01, double coupling) {
  ExcitonBasis basis;
  if (coupling == 0.0) {
    basis.transform.setIdentity();
    basis.energies << e10, e01;
    if (e10 > e01) {
      basis.transform << 0.0, 1.0, 1.0, 0.0;
      basis.energies << e01, e10;
    }
    return basis;
  }
  Eigen::Matrix2d h;
  h << e10, coupling, coupling, e01;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(h);
  basis.energies = solver.eigenvalues();
  basis.transform = solver.eigenvectors();
  for (int c = 0; c < 2; ++c) {
    Eigen::Index row = 0;
    basis.transform.col(c).cwiseAbs().maxCoeff(&row);
    if (basis.transform(row, c) < 0.0) basis.transform.col(c) *= -1.0;
  }
  return basis;
}

ExcitonBasis exciton_transform(const DimerModel& model) {
  if (model.site_count != 2) throw ConfigError("no exciton basis for monomer");
  return diagonalize_pair(model.sites[0].energy_offset, model.sites[1].energy_offset, model.coupling);
}

double displacement_from_reorganization(double reorganization, double omega_g, double omega_e) {
  if (!(omega_g > 0.0) || !(omega_e > 0.0)) throw ConfigError("non-positive frequency");
  if (reorganization < 0.0) throw ConfigError("reorganization energy must be non-negative");
  return std::sqrt(2.0 * omega_g * reorganization) / omega_e;
}

std::vector<std::string> preset_names() { return {"monomer", "coherent-dimer", "incoherent-dimer"}; }

DimerModel make_preset(const std::string& name) {
  // Displacements are the tabulated values divided by 100, which puts the
  // reorganization energies on the scale of the mode frequencies.
  DimerModel m;
  m.name = name;
  m.carrier = defaults::kCarrier;
  m.ground = {0.0, {100.0, 100.0}, {0.0, 0.0}};
  if (name == "monomer") {
    m.site_count = 1;
    m.sites[0] = {-125.0, {200.0, 150.0}, {1.0, 0.0}};
    m.sites[1] = m.ground;
    m.doubly = m.ground;
    m.coupling = 0.0;
    m.dipoles = {Vec3(1.0, 0.0, 0.0), Vec3::Zero()};
    m.pulse_fwhm = 10.0;
    m.f_surface_rule = false;
  } else if (name == "coherent-dimer") {
    m.sites[0] = {-300.0, {200.0, 150.0}, {0.5, 0.0}};
    m.sites[1] = {-200.0, {200.0, 150.0}, {0.0, 0.5}};
    m.coupling = 100.0;
    m.pulse_fwhm = 18.7;
  } else if (name == "incoherent-dimer") {
    m.sites[0] = {-200.0, {200.0, 150.0}, {1.0, 0.0}};
    m.sites[1] = {-200.0, {200.0, 150.0}, {0.0, 1.0}};
    m.coupling = 10.0;
    m.pulse_fwhm = 12.5;
  } else {
    throw ConfigError("unknown preset: " + name);
  }
  if (m.site_count == 2) {
    // Orthogonal dipoles with norm ratio 1:3; the 01 site carries the larger one.
    m.dipoles = {Vec3(1.0, 0.0, 0.0), Vec3(0.0, 3.0, 0.0)};
    m.apply_surface_rule();
  }
  m.validate();
  return m;
}

namespace {

Vec3 parse_vector(const Config& c, const std::string& key, const Vec3& fallback) {
  if (!c.has(key)) return fallback;
  auto v = c.get_doubles(key);
  if (v.size() != 3) throw ConfigError("key '" + key + "': expected three components");
  return Vec3(v[0], v[1], v[2]);
}

double displacement_key(const Config& c, const std::string& suffix, double omega_g, double omega_e) {
  const std::string d_key = "model.d_" + suffix;
  const std::string l_key = "model.lambda_" + suffix;
  if (c.has(d_key) && c.has(l_key)) throw ConfigError("give either " + d_key + " or " + l_key + ", not both");
  if (c.has(l_key)) return displacement_from_reorganization(c.require_double(l_key), omega_g, omega_e);
  return c.get_double(d_key, 0.0);
}

HarmonicSurface site_surface(const Config& c, const std::string& label, const HarmonicSurface& ground) {
  HarmonicSurface s;
  s.energy_offset = c.require_double("model.E" + label);
  s.omega = {c.require_double("model.omega_" + label + "_x"), c.require_double("model.omega_" + label + "_y")};
  for (int k = 0; k < 2; ++k) {
    if (!(s.omega[k] > 0.0)) throw ConfigError("non-positive frequency: omega_" + label);
  }
  s.displacement = {displacement_key(c, label + "_x", ground.omega[0], s.omega[0]),
                    displacement_key(c, label + "_y", ground.omega[1], s.omega[1])};
  return s;
}

}  // namespace

DimerModel build_model(const Config& config) {
  if (config.has("model.preset")) {
    for (const auto& [key, value] : config.entries()) {
      if (boost::algorithm::starts_with(key, "model.") && key != "model.preset") {
        throw ConfigError("give either model.preset or an inline model, not both (found " + key + ")");
      }
    }
    return make_preset(config.require_string("model.preset"));
  }
  DimerModel m;
  m.name = config.get_string("model.name", "custom");
  m.site_count = config.get_int("model.sites", 2);
  if (m.site_count != 1 && m.site_count != 2) throw ConfigError("model.sites must be 1 or 2");
  m.carrier = config.get_double("model.carrier", defaults::kCarrier);
  m.pulse_fwhm = config.get_double("model.fwhm", 0.0);
  m.ground.omega = {config.require_double("model.omega_g_x"), config.require_double("model.omega_g_y")};
  if (!(m.ground.omega[0] > 0.0) || !(m.ground.omega[1] > 0.0)) throw ConfigError("non-positive frequency: omega_g");
  m.sites[0] = site_surface(config, "10", m.ground);
  m.dipoles[0] = parse_vector(config, "model.mu_10", Vec3::UnitX());
  if (m.site_count == 1) {
    if (config.has("model.J") && config.require_double("model.J") != 0.0) {
      throw ConfigError("site_count=1 with J != 0");
    }
    m.coupling = 0.0;
    m.sites[1] = m.ground;
    m.doubly = m.ground;
    m.dipoles[1] = Vec3::Zero();
    m.f_surface_rule = false;
  } else {
    m.sites[1] = site_surface(config, "01", m.ground);
    m.coupling = config.require_double("model.J");
    m.dipoles[1] = parse_vector(config, "model.mu_01", Vec3(0.0, 3.0, 0.0));
    m.f_dipole_rule = config.get_bool("model.f_dipole_rule", true);
    m.f_surface_rule = config.get_bool("model.f_surface_rule", true);
    if (m.f_surface_rule) {
      m.apply_surface_rule();
    } else {
      m.doubly = site_surface(config, "f", m.ground);
    }
  }
  m.validate();
  return m;
}

}  // namespace vibwit
