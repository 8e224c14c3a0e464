#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include <vibwit/errors.hpp>
#include <vibwit/signals.hpp>
#include <vibwit/spectrum2d.hpp>

using namespace vibwit;

namespace {

PulseSpec impulsive() {
  PulseSpec p;
  p.sigma = 0.0;
  p.carrier = 0.0;
  return p;
}

}  // namespace

TEST(Spectrum2D, ZeroFrequencyIntegralIsPumpProbe) {
  const std::vector<double> waits{100.0, 200.0, 300.0};
  const auto grid = linspace(0.0, 4.0 * 127, 128);
  for (const auto& name : preset_names()) {
    const VibronicSystem sys = build_vibronic_system(make_preset(name), 4, 273.0);
    const auto spectra = rephasing_2des(sys, waits, grid, grid, 30.0, PolarizationSetting{});
    const PumpProbeSignal pp = finite_pulse_pp(sys, impulsive(), impulsive(), waits, PolarizationSetting{});
    ASSERT_EQ(spectra.size(), waits.size());
    for (std::size_t k = 0; k < waits.size(); ++k) {
      const auto integral = spectra[k].zero_frequency_integral();
      EXPECT_NEAR(integral.real(), pp.total.real[k], 1e-10 * std::abs(pp.total.real[k])) << name << " " << waits[k];
      EXPECT_NEAR(integral.imag(), 0.0, 1e-10 * std::abs(pp.total.real[k]));
      EXPECT_DOUBLE_EQ(spectra[k].waiting_time, waits[k]);
    }
  }
}

TEST(Spectrum2D, AxesAreAscendingAndShaped) {
  const VibronicSystem sys = build_vibronic_system(make_preset("coherent-dimer"), 3, 273.0);
  const auto grid = linspace(0.0, 4.0 * 63, 64);
  const auto s = rephasing_2des(sys, {0.0}, grid, grid, 40.0, PolarizationSetting{}).front();
  EXPECT_EQ(s.values.rows(), static_cast<Eigen::Index>(s.omega_tau.size()));
  EXPECT_EQ(s.values.cols(), static_cast<Eigen::Index>(s.omega_t.size()));
  EXPECT_TRUE(std::is_sorted(s.omega_tau.begin(), s.omega_tau.end()));
  EXPECT_TRUE(std::is_sorted(s.omega_t.begin(), s.omega_t.end()));
}

TEST(Spectrum2D, IcosahedralDirectionsReproduceIsotropicAverage) {
  const Vec3 a(1.0, 0.2, -0.3), b(0.0, 3.0, 0.5), c(-0.4, 1.0, 2.0), d(0.7, -0.1, 0.9);
  double sum = 0.0;
  for (const auto& z : icosahedral_directions()) sum += a.dot(z) * b.dot(z) * c.dot(z) * d.dot(z);
  EXPECT_NEAR(sum / 6.0, zzzz_average(a, b, c, d), 1e-15);
}

TEST(Spectrum2D, RejectsBadGrids) {
  const VibronicSystem sys = build_vibronic_system(make_preset("monomer"), 3, 273.0);
  const auto grid = linspace(0.0, 4.0 * 63, 64);
  EXPECT_THROW(rephasing_2des(sys, {0.0}, grid, grid, 0.0, PolarizationSetting{}), ConfigError);
  EXPECT_THROW(rephasing_2des(sys, {0.0}, linspace(1.0, 64.0, 64), grid, 30.0, PolarizationSetting{}), ConfigError);
  EXPECT_THROW(rephasing_2des(sys, {0.0}, linspace(0.0, 2520.0, 64), grid, 30.0, PolarizationSetting{}), ConfigError);
}
