#include "vibwit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vibwit/errors.hpp"
#include "vibwit/signals.hpp"
#include "vibwit/units.hpp"

namespace vibwit {

namespace {

struct Prepared {
  std::vector<double> times;
  std::vector<double> weighted;  // w_k (S_k - mean)
  double weight_sum = 0.0;
  double step = 0.0;
};

Prepared prepare(const SignalTrace& trace, const TransformOptions& options) {
  trace.validate();
  if (trace.is_complex()) throw ConfigError("transform expects a real trace");
  Prepared p;
  p.step = uniform_step(trace.axis);
  const std::size_t n = trace.size();
  std::vector<double> window(n, 1.0);
  if (options.hann_window && n > 1) {
    for (std::size_t k = 0; k < n; ++k) {
      window[k] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1)));
    }
  }
  for (double w : window) p.weight_sum += w;
  double mean = 0.0;
  if (options.subtract_mean) {
    for (std::size_t k = 0; k < n; ++k) mean += window[k] * trace.real[k];
    mean /= p.weight_sum;
  }
  p.times = trace.axis;
  p.weighted.resize(n);
  for (std::size_t k = 0; k < n; ++k) p.weighted[k] = window[k] * (trace.real[k] - mean);
  return p;
}

std::complex<double> evaluate(const Prepared& p, double omega_rad) {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = 0; k < p.times.size(); ++k) acc += p.weighted[k] * std::polar(1.0, omega_rad * p.times[k]);
  return acc / p.weight_sum;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  return m;
}

}  // namespace

SignalTrace transform_trace(const SignalTrace& trace, const TransformOptions& options) {
  if (options.zero_padding < 1) throw ConfigError("zero padding factor must be at least 1");
  const Prepared p = prepare(trace, options);
  const std::size_t padded = trace.size() * static_cast<std::size_t>(options.zero_padding);
  SignalTrace out;
  out.axis_label = "omega_cm-1";
  out.value_label = "spectrum";
  out.metadata = trace.metadata;
  out.metadata["transform"] = std::string(options.hann_window ? "hann" : "rectangular") + ", padding " +
                              std::to_string(options.zero_padding) + ", amplitude-normalized";
  const double d_omega = 2.0 * std::numbers::pi / (static_cast<double>(padded) * p.step);
  for (std::size_t j = 0; j <= padded / 2; ++j) {
    const double w = d_omega * static_cast<double>(j);
    const auto value = evaluate(p, w);
    out.axis.push_back(units::to_wavenumber(w));
    out.real.push_back(value.real());
    out.imag.push_back(value.imag());
  }
  return out;
}

std::complex<double> transform_at(const SignalTrace& trace, double omega, const TransformOptions& options) {
  return evaluate(prepare(trace, options), units::to_rad_per_fs(omega));
}

PeakList locate_peaks(const SignalTrace& spectrum, const PeakOptions& options) {
  if (spectrum.size() < 3) throw ConfigError("empty spectrum");
  const std::size_t n = spectrum.size();
  std::vector<double> mag(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double im = spectrum.is_complex() ? spectrum.imag[j] : 0.0;
    mag[j] = std::hypot(spectrum.real[j], im);
  }
  const std::vector<double> body(mag.begin() + 1, mag.end());
  const double med = median(body);
  std::vector<double> dev(body.size());
  for (std::size_t j = 0; j < body.size(); ++j) dev[j] = std::abs(body[j] - med);
  const double mad = median(dev);

  PeakList out;
  out.noise_floor = std::max(med + options.mad_multiple * mad, options.relative_floor * std::abs(options.dc));
  const double step = spectrum.axis[1] - spectrum.axis[0];
  for (std::size_t j = 1; j + 1 < n; ++j) {
    if (spectrum.axis[j] < options.min_frequency) continue;
    if (!(mag[j] > mag[j - 1] && mag[j] >= mag[j + 1] && mag[j] > out.noise_floor)) continue;
    double shift = 0.0;
    double amplitude = mag[j];
    if (mag[j - 1] > 0.0 && mag[j + 1] > 0.0) {
      const double a = std::log(mag[j - 1]);
      const double b = std::log(mag[j]);
      const double c = std::log(mag[j + 1]);
      const double denom = a - 2.0 * b + c;
      if (denom < 0.0) {
        shift = 0.5 * (a - c) / denom;
        amplitude = std::exp(b - 0.25 * (a - c) * shift);
      }
    }
    out.peaks.push_back({spectrum.axis[j] + shift * step, amplitude, j});
  }
  return out;
}

LinearFit sigma_extrapolate(const std::vector<double>& sigmas, const std::vector<double>& amplitudes) {
  if (sigmas.size() != amplitudes.size()) throw ConfigError("sigma and amplitude counts differ");
  std::vector<double> distinct = sigmas;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) throw ConfigError("fewer than 3 sigma points");
  const double n = static_cast<double>(sigmas.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    mx += sigmas[k];
    my += amplitudes[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0, sum_x2 = 0.0;
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    const double dx = sigmas[k] - mx;
    const double dy = amplitudes[k] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
    sum_x2 += sigmas[k] * sigmas[k];
  }
  if (!(sxx > 0.0)) throw ConfigError("collinear degenerate input");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    const double r = amplitudes[k] - fit.intercept - fit.slope * sigmas[k];
    rss += r * r;
  }
  const double s2 = rss / (n - 2.0);
  fit.slope_se = std::sqrt(s2 / sxx);
  fit.intercept_se = std::sqrt(s2 * sum_x2 / (n * sxx));
  fit.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  return fit;
}

double WitnessReport::dominant_frequency() const {
  double best = -1.0;
  double freq = 0.0;
  for (const auto& f : fits) {
    if (f.significant && std::abs(f.fit.intercept) > best) {
      best = std::abs(f.fit.intercept);
      freq = f.frequency;
    }
  }
  return freq;
}

WitnessReport decide(const std::vector<double>& sigmas, const std::vector<SignalTrace>& traces,
                     const WitnessOptions& options) {
  if (sigmas.size() != traces.size()) throw ConfigError("one trace per pulse width is required");
  if (traces.empty()) throw ConfigError("no traces");
  WitnessReport report;
  report.se_multiple = options.se_multiple;
  report.relative_threshold = options.relative_threshold;

  const std::size_t reference = static_cast<std::size_t>(
      std::min_element(sigmas.begin(), sigmas.end()) - sigmas.begin());
  report.dc = std::abs(traces[reference].mean());
  const double record = traces[reference].axis.back() - traces[reference].axis.front();
  if (!(record > 0.0)) throw ConfigError("trace record has zero length");
  const double min_frequency = options.min_cycles / (units::kSpeedOfLight * record);

  struct Found {
    double frequency;
    double amplitude;
    std::size_t trace;
  };
  std::vector<Found> found;
  double padded_bin = 0.0;
  for (std::size_t k = 0; k < traces.size(); ++k) {
    if (traces[k].axis != traces[reference].axis) throw ConfigError("traces must share a waiting-time grid");
    const SignalTrace spectrum = transform_trace(traces[k], options.transform);
    padded_bin = spectrum.axis[1] - spectrum.axis[0];
    PeakOptions po;
    po.mad_multiple = options.mad_multiple;
    po.relative_floor = options.relative_floor;
    po.dc = report.dc;
    po.min_frequency = min_frequency;
    const PeakList peaks = locate_peaks(spectrum, po);
    report.noise_floor = std::max(report.noise_floor, peaks.noise_floor);
    for (const auto& p : peaks.peaks) found.push_back({p.frequency, p.amplitude, k});
  }
  if (found.empty()) report.notes.push_back("no oscillation above the noise floor at any pulse width");

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.frequency < b.frequency; });
  std::vector<std::vector<Found>> clusters;
  for (const auto& f : found) {
    if (clusters.empty() || f.frequency - clusters.back().back().frequency > options.merge_bins * padded_bin) {
      clusters.push_back({});
    }
    clusters.back().push_back(f);
  }

  for (const auto& cluster : clusters) {
    FrequencyFit ff;
    double sum = 0.0;
    for (const auto& f : cluster) sum += f.frequency;
    ff.frequency = sum / static_cast<double>(cluster.size());
    for (std::size_t k = 0; k < traces.size(); ++k) {
      double amplitude = -1.0;
      for (const auto& f : cluster) {
        if (f.trace == k) amplitude = std::max(amplitude, f.amplitude);
      }
      if (amplitude < 0.0) amplitude = std::abs(transform_at(traces[k], ff.frequency, options.transform));
      ff.sigmas.push_back(sigmas[k]);
      ff.amplitudes.push_back(amplitude);
    }
    ff.fit = sigma_extrapolate(ff.sigmas, ff.amplitudes);
    const double a = std::abs(ff.fit.intercept);
    ff.significant = a > options.se_multiple * ff.fit.intercept_se && a > options.relative_threshold * report.dc;
    report.positive = report.positive || ff.significant;
    report.fits.push_back(std::move(ff));
  }
  return report;
}

double band_flatness(const VibronicSystem& sys, double sigma, double fraction, double carrier) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("band fraction must lie in (0, 1]");
  auto sticks = absorption_sticks(sys);
  if (sticks.empty()) return 1.0;
  std::sort(sticks.begin(), sticks.end(),
            [](const AbsorptionStick& a, const AbsorptionStick& b) { return a.omega < b.omega; });
  double total = 0.0;
  for (const auto& s : sticks) total += s.intensity;
  const double tail = 0.5 * (1.0 - fraction) * total;
  double acc = 0.0;
  double lo = sticks.front().omega, hi = sticks.back().omega;
  for (const auto& s : sticks) {
    acc += s.intensity;
    if (acc > tail) {
      lo = s.omega;
      break;
    }
  }
  acc = 0.0;
  for (auto it = sticks.rbegin(); it != sticks.rend(); ++it) {
    acc += it->intensity;
    if (acc > tail) {
      hi = it->omega;
      break;
    }
  }
  PulseSpec pulse;
  pulse.sigma = sigma;
  pulse.carrier = carrier;
  return std::min(pulse.spectral_amplitude(lo), pulse.spectral_amplitude(hi)) / pulse.strength;
}

}  // namespace vibwit
