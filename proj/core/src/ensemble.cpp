#include "vibwit/ensemble.hpp"

#include <cmath>
#include <random>

#include <boost/random/normal_distribution.hpp>

#include "vibwit/errors.hpp"
#include "vibwit/log.hpp"

namespace vibwit {

void DisorderSpec::validate() const {
  if (samples < 1) throw ConfigError("disorder sample count must be at least 1");
  if (!(std_dev >= 0.0)) throw ConfigError("disorder standard deviation must be non-negative");
  if (!(std::abs(correlation) <= 1.0)) throw ConfigError("|correlation| > 1");
}

std::vector<std::array<double, 2>> sample_site_shifts(const DisorderSpec& spec, int site_count) {
  spec.validate();
  if (site_count == 1 && spec.correlation != 0.0) {
    warn("site-energy correlation ignored for a single-site model");
  }
  std::vector<std::array<double, 2>> out(static_cast<std::size_t>(spec.samples), {0.0, 0.0});
  if (spec.std_dev == 0.0) return out;
  std::mt19937_64 rng(spec.seed);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  const double rho = spec.correlation;
  const double rest = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  for (auto& shift : out) {
    const double z1 = normal(rng);
    if (site_count == 1) {
      shift = {spec.std_dev * z1, 0.0};
      continue;
    }
    const double z2 = normal(rng);
    shift = {spec.std_dev * z1, spec.std_dev * (rho * z1 + rest * z2)};
  }
  return out;
}

std::vector<DimerModel> sample_disorder(const DisorderSpec& spec, const DimerModel& base) {
  const auto shifts = sample_site_shifts(spec, base.site_count);
  std::vector<DimerModel> out;
  out.reserve(shifts.size());
  for (const auto& s : shifts) {
    DimerModel m = base;
    m.sites[0].energy_offset += s[0];
    if (m.site_count == 2) {
      m.sites[1].energy_offset += s[1];
      if (m.f_surface_rule) {
        m.apply_surface_rule();
      } else {
        m.doubly.energy_offset += s[0] + s[1];
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

double zzzz_average(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return (a.dot(b) * c.dot(d) + a.dot(c) * b.dot(d) + a.dot(d) * b.dot(c)) / 15.0;
}

namespace {

std::complex<double> bilinear(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
  return a.cwiseProduct(b).sum();
}

}  // namespace

std::complex<double> zzzz_average(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b, const Eigen::Vector3cd& c,
                                  const Eigen::Vector3cd& d) {
  return (bilinear(a, b) * bilinear(c, d) + bilinear(a, c) * bilinear(b, d) + bilinear(a, d) * bilinear(b, c)) / 15.0;
}

const std::array<Vec3, 6>& icosahedral_directions() {
  static const std::array<Vec3, 6> axes = [] {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    std::array<Vec3, 6> v{Vec3(0.0, 1.0, phi), Vec3(0.0, 1.0, -phi), Vec3(1.0, phi, 0.0),
                          Vec3(1.0, -phi, 0.0), Vec3(phi, 0.0, 1.0), Vec3(-phi, 0.0, 1.0)};
    for (auto& x : v) x.normalize();
    return v;
  }();
  return axes;
}

double PolarizationSetting::weight(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) const {
  if (isotropic) return zzzz_average(a, b, c, d);
  return a.dot(probe) * b.dot(pump) * c.dot(pump) * d.dot(probe);
}

std::complex<double> PolarizationSetting::weight(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b,
                                                 const Eigen::Vector3cd& c, const Eigen::Vector3cd& d) const {
  if (isotropic) return zzzz_average(a, b, c, d);
  const Eigen::Vector3cd e_probe = probe.cast<std::complex<double>>();
  const Eigen::Vector3cd e_pump = pump.cast<std::complex<double>>();
  return bilinear(a, e_probe) * bilinear(b, e_pump) * bilinear(c, e_pump) * bilinear(d, e_probe);
}

std::string PolarizationSetting::describe() const {
  if (isotropic) return "zzzz-isotropic";
  auto fmt = [](const Vec3& v) {
    return format_double(v.x()) + " " + format_double(v.y()) + " " + format_double(v.z());
  };
  return "fixed pump=(" + fmt(pump) + ") probe=(" + fmt(probe) + ")";
}

namespace {

// Neumaier compensated accumulator.
struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

SignalTrace ensemble_average(const std::vector<SignalTrace>& traces, const std::optional<std::vector<double>>& weights) {
  if (traces.empty()) throw ConfigError("ensemble average of zero traces");
  if (weights && weights->size() != traces.size()) throw ConfigError("weight count does not match trace count");
  const SignalTrace& first = traces.front();
  const bool complex = first.is_complex();
  for (const auto& t : traces) {
    t.validate();
    if (t.axis != first.axis) throw ConfigError("axis mismatch in ensemble average");
    if (t.is_complex() != complex) throw ConfigError("mixed real and complex traces in ensemble average");
  }
  Accumulator total_weight;
  for (std::size_t k = 0; k < traces.size(); ++k) total_weight.add(weights ? (*weights)[k] : 1.0);
  const double norm = total_weight.value();
  if (norm == 0.0) throw ConfigError("ensemble weights sum to zero");

  SignalTrace out = first;
  const std::size_t n = first.size();
  for (std::size_t i = 0; i < n; ++i) {
    Accumulator re, im;
    for (std::size_t k = 0; k < traces.size(); ++k) {
      const double w = weights ? (*weights)[k] : 1.0;
      re.add(w * traces[k].real[i]);
      if (complex) im.add(w * traces[k].imag[i]);
    }
    out.real[i] = re.value() / norm;
    if (complex) out.imag[i] = im.value() / norm;
  }
  out.metadata["ensemble_samples"] = std::to_string(traces.size());
  return out;
}

}  // namespace vibwit
