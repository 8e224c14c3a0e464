#include "vibwit/pipeline.hpp"

#include <algorithm>

#include "vibwit/defaults.hpp"
#include "vibwit/errors.hpp"
#include "vibwit/parallel.hpp"
#include "vibwit/signals.hpp"

namespace vibwit {

std::vector<PumpProbeSignal> ensemble_pump_probe(const DimerModel& model, const ScanSettings& settings) {
  if (settings.sigmas.empty()) throw ConfigError("no pulse widths to scan");
  settings.disorder.validate();
  const VibronicSystem base = build_vibronic_system(model, settings.levels, settings.temperature);
  const auto shifts = sample_site_shifts(settings.disorder, model.site_count);
  const std::size_t ns = settings.sigmas.size();

  // per_sample[s][k]: sample s, sigma k
  std::vector<std::vector<PumpProbeSignal>> per_sample(shifts.size());
  parallel_for(
      shifts.size(),
      [&](std::size_t s) {
        const double e10 = model.sites[0].energy_offset + shifts[s][0];
        const double e01 = model.site_count == 2 ? model.sites[1].energy_offset + shifts[s][1] : 0.0;
        const VibronicSystem sys =
            (shifts[s][0] == 0.0 && shifts[s][1] == 0.0) ? base : shift_site_energies(base, e10, e01);
        per_sample[s].reserve(ns);
        for (double sigma : settings.sigmas) {
          PulseSpec pulse;
          pulse.sigma = sigma;
          pulse.carrier = settings.carrier;
          per_sample[s].push_back(finite_pulse_pp(sys, pulse, pulse, settings.times, settings.polarization));
        }
      },
      settings.threads);

  const auto average = [&](std::size_t k, SignalTrace PumpProbeSignal::*member) {
    std::vector<SignalTrace> column;
    column.reserve(shifts.size());
    for (auto& sample : per_sample) column.push_back(std::move(sample[k].*member));
    SignalTrace avg = ensemble_average(column);
    avg.metadata["disorder_std_cm-1"] = format_double(settings.disorder.std_dev);
    avg.metadata["disorder_correlation"] = format_double(settings.disorder.correlation);
    avg.metadata["seed"] = std::to_string(settings.disorder.seed);
    avg.metadata["rng"] = kRngName;
    return avg;
  };
  std::vector<PumpProbeSignal> out(ns);
  for (std::size_t k = 0; k < ns; ++k) {
    for (const auto& sample : per_sample) out[k].max_imag = std::max(out[k].max_imag, sample[k].max_imag);
    out[k].total = average(k, &PumpProbeSignal::total);
    out[k].se = average(k, &PumpProbeSignal::se);
    out[k].esa = average(k, &PumpProbeSignal::esa);
    out[k].gsb = average(k, &PumpProbeSignal::gsb);
  }
  return out;
}

std::vector<SignalTrace> sigma_scan(const DimerModel& model, const ScanSettings& settings) {
  std::vector<SignalTrace> out;
  for (auto& signal : ensemble_pump_probe(model, settings)) out.push_back(std::move(signal.total));
  return out;
}

WitnessRun run_witness(const DimerModel& model, const ScanSettings& settings, const WitnessOptions& options) {
  WitnessRun run;
  run.traces = sigma_scan(model, settings);
  run.report = decide(settings.sigmas, run.traces, options);
  const VibronicSystem base = build_vibronic_system(model, settings.levels, settings.temperature);
  const double widest = *std::max_element(settings.sigmas.begin(), settings.sigmas.end());
  const double flatness = band_flatness(base, widest, defaults::kBandIntensityFraction, settings.carrier);
  run.report.broadband_regime = flatness >= defaults::kBroadbandFlatness;
  if (!run.report.broadband_regime) {
    run.report.notes.push_back("pulse spectrum at sigma = " + format_double(widest) +
                               " fs drops to " + format_double(flatness) +
                               " of its peak inside the absorption band; not in the broadband regime");
  }
  return run;
}

}  // namespace vibwit
