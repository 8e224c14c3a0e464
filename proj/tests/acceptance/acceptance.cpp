#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <vibwit/defaults.hpp>
#include <vibwit/pipeline.hpp>
#include <vibwit/polaron.hpp>
#include <vibwit/processmatrix.hpp>
#include <vibwit/signals.hpp>
#include <vibwit/spectrum2d.hpp>
#include <vibwit/units.hpp>
#include <vibwit/witness.hpp>

#include "oracles.hpp"

using namespace vibwit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

PulseSpec impulsive() {
  PulseSpec p;
  p.sigma = 0.0;
  p.carrier = 0.0;
  return p;
}

PulseSpec gaussian(double sigma) {
  PulseSpec p = impulsive();
  p.sigma = sigma;
  return p;
}

std::vector<double> default_times() {
  return linspace(0.0, defaults::kWaitingTimeMax, defaults::kWaitingTimePoints);
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double chi_deviation(const ProcessMatrix& a, const ProcessMatrix& b) {
  double worst = 0.0;
  const int d = a.dim();
  for (std::size_t t = 0; t < a.times().size(); ++t)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int q = 0; q < d; ++q)
          for (int p = 0; p < d; ++p) worst = std::max(worst, std::abs(a.at(t, i, j, q, p) - b.at(t, i, j, q, p)));
  return worst;
}

DimerModel same_shape_dimer() {
  DimerModel m = make_preset("coherent-dimer");
  m.name = "same-shape-dimer";
  m.sites[0] = {-300.0, {200.0, 150.0}, {0.5, 0.3}};
  m.sites[1] = {-200.0, {200.0, 150.0}, {0.5, 0.3}};
  m.apply_surface_rule();
  m.validate();
  return m;
}

ScanSettings pipeline_settings(const DimerModel& model) {
  ScanSettings s;
  s.sigmas.assign(defaults::kSigmaScan.begin(), defaults::kSigmaScan.end());
  s.times = default_times();
  s.temperature = defaults::kTemperature;
  s.levels = defaults::kLevelsPerMode;
  s.disorder.samples = defaults::kDisorderSamples;
  s.disorder.std_dev = defaults::kDisorderStd;
  s.disorder.correlation = model.site_count == 2 ? defaults::kDisorderCorrelation : 0.0;
  s.disorder.seed = defaults::kSeed;
  return s;
}

Eigen::MatrixXcd random_unitary(int d, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = {n(rng), n(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
}

Outcome monomer_flatness() {
  const auto start = std::chrono::steady_clock::now();
  const DimerModel m = make_preset("monomer");
  const VibronicSystem sys = build_vibronic_system(m, defaults::kLevelsPerMode, defaults::kTemperature);
  const PumpProbeSignal s = finite_pulse_pp(sys, impulsive(), impulsive(), default_times(), PolarizationSetting{});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double variation = s.total.relative_variation();
  return {variation < 1e-8 && seconds < 10.0,
          fmt("max|S-mean|/|mean| = %.2e (limit 1e-8), runtime %.2f s (limit 10 s)", variation, seconds)};
}

Outcome same_shape_exactness() {
  const DimerModel m = same_shape_dimer();
  const VibronicSystem sys = build_vibronic_system(m, defaults::kLevelsPerMode, defaults::kTemperature);
  const auto times = default_times();
  const Eigen::MatrixXcd u = frame_transform(m, ElectronicFrame::Exciton);
  const ProcessMatrix chi = compute_chi(sys, times, ElectronicFrame::Exciton, u);
  const ExcitonBasis ex = exciton_transform(m);
  ProcessMatrix expected(times, 2, ElectronicFrame::Exciton, u);
  for (std::size_t t = 0; t < times.size(); ++t)
    for (int q = 0; q < 2; ++q)
      for (int p = 0; p < 2; ++p) {
        expected.at(t, q, p, q, p) = std::polar(1.0, -units::to_rad_per_fs(ex.energies(q) - ex.energies(p)) * times[t]);
      }
  const double deviation = chi_deviation(chi, expected);

  const PumpProbeSignal bb = broadband_signal(m, chi, PolarizationSetting{});
  const SignalTrace spectrum = transform_trace(bb.total);
  PeakOptions opt;
  opt.dc = std::abs(bb.total.mean());
  const double bin = spectrum.axis[1] - spectrum.axis[0];
  double nearest = 0.0;
  for (const auto& p : locate_peaks(spectrum, opt).peaks) {
    if (std::abs(p.frequency - ex.gap()) < std::abs(nearest - ex.gap())) nearest = p.frequency;
  }
  const bool peak_ok = std::abs(nearest - ex.gap()) <= bin;
  return {deviation < 1e-8 && peak_ok,
          fmt("max chi deviation %.2e (limit 1e-8); ", deviation) +
              fmt("nearest peak %.2f cm^-1 vs gap %.2f cm^-1", nearest, ex.gap()) + fmt(", bin %.2f cm^-1", bin)};
}

Outcome coherent_positive() {
  const auto start = std::chrono::steady_clock::now();
  const DimerModel m = make_preset("coherent-dimer");
  const WitnessRun run = run_witness(m, pipeline_settings(m));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double gap = exciton_transform(m).gap();
  const double dominant = run.report.dominant_frequency();
  const double rel = std::abs(dominant - gap) / gap;
  std::string detail = std::string("verdict ") + (run.report.positive ? "positive" : "negative") +
                       fmt(", dominant %.1f cm^-1 vs gap %.1f cm^-1", dominant, gap) +
                       fmt(" (off by %.1f%%, limit 15%%), runtime %.0f s (limit 600 s); significant:", 100.0 * rel, seconds);
  for (const auto& f : run.report.fits) {
    if (f.significant) detail += fmt(" %.1f(a=%.3g)", f.frequency, f.fit.intercept);
  }
  return {run.report.positive && rel < 0.15 && seconds < 600.0, detail};
}

Outcome negative_witness() {
  bool pass = true;
  std::string detail;
  for (const std::string name : {"monomer", "incoherent-dimer"}) {
    const DimerModel m = make_preset(name);
    const WitnessRun run = run_witness(m, pipeline_settings(m));
    double worst = 0.0;
    double worst_freq = 0.0;
    for (const auto& f : run.report.fits) {
      const double z = f.fit.intercept_se > 0.0 ? std::abs(f.fit.intercept) / f.fit.intercept_se
                                                : (f.fit.intercept == 0.0 ? 0.0 : INFINITY);
      if (z > worst) {
        worst = z;
        worst_freq = f.frequency;
      }
    }
    const bool ok = !run.report.positive && worst <= 2.0;
    pass = pass && ok;
    detail += name + ": verdict " + (run.report.positive ? "positive" : "negative") +
              fmt(", %.0f peaks", static_cast<double>(run.report.fits.size())) +
              fmt(", worst |a|/SE %.2f at %.1f cm^-1 (limit 2); ", worst, worst_freq);
  }
  return {pass, detail};
}

Outcome chi_invariants() {
  double worst = 0.0;
  std::string detail;
  for (const auto& name : preset_names()) {
    const VibronicSystem sys = build_vibronic_system(make_preset(name), defaults::kLevelsPerMode, defaults::kTemperature);
    const ChiInvariants inv = check_chi_invariants(compute_chi(sys, default_times()));
    worst = std::max(worst, inv.worst());
    detail += name + fmt(" %.1e; ", inv.worst());
  }
  return {worst < 1e-8, detail + fmt("worst %.2e (limit 1e-8)", worst)};
}

Outcome oracle_equivalence() {
  const auto times = linspace(0.0, defaults::kWaitingTimeMax, 31);
  double worst = 0.0;
  for (const auto& name : preset_names()) {
    const DimerModel m = make_preset(name);
    const ProcessMatrix fast = compute_chi(build_vibronic_system(m, 4, defaults::kTemperature), times);
    const ProcessMatrix slow = oracle::brute_force_chi(m, 4, defaults::kTemperature, times);
    worst = std::max(worst, chi_deviation(fast, slow));
  }
  return {worst < 1e-8, fmt("max |chi - chi_bruteforce| = %.2e at N = 4 (limit 1e-8)", worst)};
}

Outcome basis_invariance() {
  double worst = 0.0;
  for (const std::string name : {"coherent-dimer", "incoherent-dimer"}) {
    const DimerModel m = make_preset(name);
    const VibronicSystem sys = build_vibronic_system(m, defaults::kLevelsPerMode, defaults::kTemperature);
    const auto times = default_times();
    const PumpProbeSignal site = broadband_signal(m, compute_chi(sys, times), PolarizationSetting{});
    const double scale = max_abs(site.total.real);
    for (const auto& u : {frame_transform(m, ElectronicFrame::Exciton), random_unitary(2, 17)}) {
      const PumpProbeSignal other =
          broadband_signal(m, compute_chi(sys, times, ElectronicFrame::Custom, u), PolarizationSetting{});
      worst = std::max(worst, max_diff(other.total.real, site.total.real) / scale);
    }
  }
  return {worst < 1e-10, fmt("max relative difference across site/exciton/random frames %.2e (limit 1e-10)", worst)};
}

Outcome sigma_structure() {
  const DimerModel m = make_preset("coherent-dimer");
  const VibronicSystem sys = build_vibronic_system(m, defaults::kLevelsPerMode, defaults::kTemperature);
  const auto times = linspace(0.0, defaults::kWaitingTimeMax, 128);
  const PolarizationSetting iso;
  const PumpProbeSignal bb = finite_pulse_pp(sys, impulsive(), impulsive(), times, iso);
  const std::vector<double> sigmas{0.5, 1.0, 2.0, 4.0};
  std::vector<double> ls, lg, le;
  std::vector<double> gsb_half;
  for (double s : sigmas) {
    const PumpProbeSignal f = finite_pulse_pp(sys, gaussian(s), gaussian(s), times, iso);
    ls.push_back(std::log(s));
    lg.push_back(std::log(max_diff(f.gsb.real, bb.gsb.real)));
    le.push_back(std::log(max_diff(f.se.real, bb.se.real)));
    if (s == 0.5) {
      gsb_half.resize(times.size());
      for (std::size_t k = 0; k < times.size(); ++k) gsb_half[k] = (f.gsb.real[k] - bb.gsb.real[k]) / s;
    }
  }
  const double slope_gsb = sigma_extrapolate(ls, lg).slope;
  const double slope_se = sigma_extrapolate(ls, le).slope;
  const SignalTrace first = gsb_first_order(sys, impulsive(), impulsive(), times, iso);
  const double ratio = max_abs(gsb_half) / max_abs(first.real);
  const bool pass = std::abs(slope_gsb - 1.0) <= 0.1 && std::abs(slope_se - 2.0) <= 0.1 && std::abs(ratio - 1.0) <= 0.05;
  return {pass, fmt("log-log slope GSB %.3f (target 1 +- 0.1), SE %.3f (target 2 +- 0.1); ", slope_gsb, slope_se) +
                    fmt("max|dGSB/sigma| at 0.5 fs %.3e, max|gsb_first_order| %.3e", max_abs(gsb_half),
                        max_abs(first.real)) +
                    fmt(", ratio %.3g (target 1 +- 0.05)", ratio)};
}

Outcome twodes_identity() {
  const std::vector<double> waits{100.0, 200.0, 300.0};
  // N = 6 keeps every weighted transition below the 4 fs Nyquist limit (4170 cm^-1).
  const auto grid = linspace(0.0, 4.0 * 127, 128);
  double worst = 0.0;
  for (const auto& name : preset_names()) {
    const VibronicSystem sys = build_vibronic_system(make_preset(name), 6, defaults::kTemperature);
    const auto spectra = rephasing_2des(sys, waits, grid, grid, defaults::kDephasing, PolarizationSetting{});
    const PumpProbeSignal pp = finite_pulse_pp(sys, impulsive(), impulsive(), waits, PolarizationSetting{});
    for (std::size_t k = 0; k < waits.size(); ++k) {
      const auto integral = spectra[k].zero_frequency_integral();
      worst = std::max(worst, std::abs(integral - pp.total.real[k]) / std::abs(pp.total.real[k]));
    }
  }
  return {worst < 0.01, fmt("max relative mismatch %.2e over presets and T = 100, 200, 300 fs (limit 1e-2)", worst)};
}

Outcome fc_oracle() {
  double worst = 0.0;
  for (double ratio : {0.5, 0.8, 1.0, 1.25, 2.0})
    for (double d : {-2.0, -1.0, -0.3, 0.0, 0.7, 2.0}) {
      const Eigen::MatrixXd fc = fc_matrix_1d(100.0, 100.0 * ratio, d, 11, 11);
      for (int m = 0; m <= 10; ++m)
        for (int n = 0; n <= 10; ++n) {
          worst = std::max(worst, std::abs(fc(m, n) - oracle::fc_quadrature(100.0, 100.0 * ratio, d, m, n)));
        }
    }
  return {worst < 1e-8, fmt("max |recursion - quadrature| = %.2e for n, m <= 10 (limit 1e-8)", worst)};
}

Outcome zzzz() {
  const Vec3 x = Vec3::UnitX(), y = Vec3::UnitY();
  const Vec3 a(0.3, -0.8, 0.5), b(1.0, 0.4, -0.2), c(0.0, 3.0, 0.0);
  const std::vector<std::array<Vec3, 4>> cases{{x, x, x, x}, {x, x, y, y}, {c, x, x, c}, {a, b, b, a}, {a, a, c, c}};
  double worst = 0.0;
  std::uint64_t seed = 1;
  for (const auto& v : cases) {
    const double closed = zzzz_average(v[0], v[1], v[2], v[3]);
    const double mc = oracle::zzzz_monte_carlo(v[0], v[1], v[2], v[3], 1000000, seed++);
    worst = std::max(worst, std::abs(mc - closed) / std::abs(closed));
  }
  const double parallel = zzzz_average(a, a, a, a) / std::pow(a.squaredNorm(), 2);
  const bool exact = std::abs(parallel - 0.2) <= 1e-16 && zzzz_average(x, x, x, x) == 0.2;
  return {worst < 0.005 && exact,
          fmt("max Monte-Carlo relative deviation %.2e (limit 5e-3); parallel case %.17g", worst, parallel)};
}

Outcome polaron() {
  const double kt = units::kBoltzmann * defaults::kTemperature;
  double worst = 0.0;
  for (double beta_omega : {0.2, 0.5, 1.0, 2.0, 5.0})
    for (double dg : {0.25, 0.5, 1.0, 1.5}) {
      PolaronSpec s;
      s.omegas = {beta_omega * kt};
      s.g10 = {dg};
      s.g01 = {0.0};
      s.temperature = defaults::kTemperature;
      s.coupling = 100.0;
      const double closed = renormalized_coupling(s).dressing;
      const double trace = oracle::displacement_thermal_trace(s.omegas[0], dg, s.temperature, 240);
      worst = std::max(worst, std::abs(closed - trace));
    }
  PolaronSpec equal;
  equal.omegas = {100.0, 250.0};
  equal.g10 = {0.8, 1.3};
  equal.g01 = {0.8, 1.3};
  equal.coupling = 100.0;
  const double j = renormalized_coupling(equal).coupling;
  return {worst < 1e-6 && j == 100.0,
          fmt("max |<w> - thermal trace| = %.2e for beta omega >= 0.2 (limit 1e-6); equal-g J~ = %.17g", worst, j)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 monomer broadband flatness", monomer_flatness},
      {"2 same-shape dimer exactness", same_shape_exactness},
      {"3 coherent-dimer positive witness", coherent_positive},
      {"4 monomer/incoherent-dimer negative witness", negative_witness},
      {"5 chi invariant suite", chi_invariants},
      {"6 oracle equivalence", oracle_equivalence},
      {"7 basis invariance", basis_invariance},
      {"8 O(sigma) structure", sigma_structure},
      {"9 2DES-PP identity", twodes_identity},
      {"10 FC oracle", fc_oracle},
      {"11 zzzz average", zzzz},
      {"12 polaron closed form", polaron},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
