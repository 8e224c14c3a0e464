#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include <vibwit/ensemble.hpp>
#include <vibwit/errors.hpp>
#include <vibwit/log.hpp>

#include "oracles.hpp"

using namespace vibwit;

TEST(Disorder, SampleStatisticsMatchSpec) {
  DisorderSpec spec{20000, 40.0, 0.8, 7};
  const auto shifts = sample_site_shifts(spec, 2);
  ASSERT_EQ(shifts.size(), 20000u);
  double m0 = 0, m1 = 0, s00 = 0, s11 = 0, s01 = 0;
  for (const auto& s : shifts) {
    m0 += s[0];
    m1 += s[1];
  }
  m0 /= shifts.size();
  m1 /= shifts.size();
  for (const auto& s : shifts) {
    s00 += (s[0] - m0) * (s[0] - m0);
    s11 += (s[1] - m1) * (s[1] - m1);
    s01 += (s[0] - m0) * (s[1] - m1);
  }
  const double n = static_cast<double>(shifts.size());
  EXPECT_NEAR(m0, 0.0, 4.0 * 40.0 / std::sqrt(n));
  EXPECT_NEAR(std::sqrt(s00 / n), 40.0, 1.0);
  EXPECT_NEAR(std::sqrt(s11 / n), 40.0, 1.0);
  EXPECT_NEAR(s01 / std::sqrt(s00 * s11), 0.8, 0.01);
}

TEST(Disorder, FixedSeedIsReproducible) {
  DisorderSpec spec{50, 40.0, 0.8, 123};
  EXPECT_EQ(sample_site_shifts(spec, 2), sample_site_shifts(spec, 2));
  spec.seed = 124;
  DisorderSpec other{50, 40.0, 0.8, 123};
  EXPECT_NE(sample_site_shifts(spec, 2), sample_site_shifts(other, 2));
}

TEST(Disorder, ZeroWidthGivesUnshiftedCopies) {
  DisorderSpec spec{5, 0.0, 0.0, 1};
  const auto models = sample_disorder(spec, make_preset("coherent-dimer"));
  ASSERT_EQ(models.size(), 5u);
  for (const auto& m : models) EXPECT_DOUBLE_EQ(m.sites[0].energy_offset, -300.0);
}

TEST(Disorder, PerfectCorrelationShiftsSitesTogether) {
  DisorderSpec spec{20, 40.0, 1.0, 9};
  const auto models = sample_disorder(spec, make_preset("coherent-dimer"));
  for (const auto& m : models) {
    EXPECT_NEAR(m.sites[0].energy_offset - m.sites[1].energy_offset, -100.0, 1e-9);
    EXPECT_NEAR(m.doubly.energy_offset, m.sites[0].energy_offset + m.sites[1].energy_offset, 1e-9);
    EXPECT_NO_THROW(m.validate());
  }
}

TEST(Disorder, MonomerIgnoresCorrelationWithWarning) {
  std::string seen;
  auto old = set_warning_handler([&](const std::string& m) { seen = m; });
  DisorderSpec spec{10, 40.0, 0.8, 3};
  const auto shifts = sample_site_shifts(spec, 1);
  set_warning_handler(old);
  EXPECT_FALSE(seen.empty());
  for (const auto& s : shifts) EXPECT_EQ(s[1], 0.0);
}

TEST(Disorder, InvalidSpecsRejected) {
  EXPECT_THROW((DisorderSpec{10, 40.0, 1.5, 0}.validate()), ConfigError);
  EXPECT_THROW((DisorderSpec{0, 40.0, 0.0, 0}.validate()), ConfigError);
  EXPECT_THROW((DisorderSpec{10, -1.0, 0.0, 0}.validate()), ConfigError);
}

TEST(Orientation, ParallelDipolesGiveOneFifth) {
  const Vec3 x = Vec3::UnitX();
  EXPECT_DOUBLE_EQ(zzzz_average(x, x, x, x), 0.2);
  const Vec3 y = Vec3::UnitY();
  EXPECT_NEAR(zzzz_average(x, x, y, y), 1.0 / 15.0, 1e-16);
  EXPECT_NEAR(zzzz_average(x, y, x, y), 1.0 / 15.0, 1e-16);
}

TEST(Orientation, ClosedFormMatchesMonteCarlo) {
  const Vec3 a(1.0, 0.0, 0.0), b(0.0, 3.0, 0.0), c(0.6, 0.8, 0.0), d(0.3, -0.2, 0.9);
  const double exact = zzzz_average(a, c, c, a);
  const double mc = oracle::zzzz_monte_carlo(a, c, c, a, 400000, 11);
  EXPECT_NEAR(mc, exact, 0.01 * std::abs(exact));
  EXPECT_NEAR(oracle::zzzz_monte_carlo(a, b, d, c, 400000, 12), zzzz_average(a, b, d, c), 2e-3);
}

TEST(Orientation, IcosahedralAxesAverageExactly) {
  const Vec3 a(1.0, 0.2, -0.3), b(0.0, 3.0, 0.5), c(0.6, 0.8, 0.1), d(0.3, -0.2, 0.9);
  double sum = 0.0;
  for (const auto& z : icosahedral_directions()) sum += a.dot(z) * b.dot(z) * c.dot(z) * d.dot(z);
  EXPECT_NEAR(sum / 6.0, zzzz_average(a, b, c, d), 1e-15);
  for (const auto& z : icosahedral_directions()) EXPECT_NEAR(z.norm(), 1.0, 1e-15);
}

TEST(Orientation, ComplexOverloadIsBilinear) {
  const Eigen::Vector3cd a(std::complex<double>(1, 1), 0, 0);
  const Eigen::Vector3cd x(1, 0, 0);
  // (1+i)^2 / 5 without conjugation
  EXPECT_NEAR(std::abs(zzzz_average(a, a, x, x) - std::complex<double>(0, 2) / 5.0), 0.0, 1e-15);
}

TEST(Polarization, FixedPolarizationProjects) {
  PolarizationSetting p;
  p.isotropic = false;
  p.pump = Vec3::UnitX();
  p.probe = Vec3::UnitY();
  EXPECT_DOUBLE_EQ(p.weight(Vec3(0, 2, 0), Vec3(3, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)), 6.0);
  const Vec3 x = Vec3::UnitX();
  EXPECT_DOUBLE_EQ(p.weight(x, x, x, x), 0.0);
  EXPECT_EQ(PolarizationSetting{}.describe(), "zzzz-isotropic");
}

TEST(EnsembleAverage, UniformAndWeightedMeans) {
  SignalTrace a, b;
  a.axis = b.axis = {0.0, 1.0};
  a.real = {1.0, 2.0};
  b.real = {3.0, 6.0};
  const auto m = ensemble_average({a, b});
  EXPECT_DOUBLE_EQ(m.real[0], 2.0);
  EXPECT_DOUBLE_EQ(m.real[1], 4.0);
  EXPECT_EQ(m.metadata.at("ensemble_samples"), "2");
  const auto w = ensemble_average({a, b}, std::vector<double>{3.0, 1.0});
  EXPECT_DOUBLE_EQ(w.real[0], 1.5);
}

TEST(EnsembleAverage, CompensatedSummationKeepsSmallTerms) {
  std::vector<SignalTrace> traces(1001);
  for (std::size_t k = 0; k < traces.size(); ++k) {
    traces[k].axis = {0.0};
    traces[k].real = {k == 0 ? 1e16 : 1.0};
  }
  const auto m = ensemble_average(traces);
  EXPECT_DOUBLE_EQ(m.real[0], (1e16 + 1000.0) / 1001.0);
}

TEST(EnsembleAverage, RejectsMismatchedAxes) {
  SignalTrace a, b;
  a.axis = {0.0, 1.0};
  b.axis = {0.0, 2.0};
  a.real = b.real = {1.0, 1.0};
  EXPECT_THROW(ensemble_average({a, b}), ConfigError);
  EXPECT_THROW(ensemble_average({}), ConfigError);
}
