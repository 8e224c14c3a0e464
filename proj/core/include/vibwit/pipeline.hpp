#pragma once

#include <vector>

#include "vibwit/ensemble.hpp"
#include "vibwit/model.hpp"
#include "vibwit/processmatrix.hpp"
#include "vibwit/vibronic.hpp"
#include "vibwit/witness.hpp"

namespace vibwit {

struct ScanSettings {
  std::vector<double> sigmas;  // fs, one pump-probe run per entry (same width on both pulses)
  std::vector<double> times;   // waiting times, fs
  double carrier = 0.0;        // cm^-1 relative to the model carrier, both pulses
  DisorderSpec disorder;
  double temperature = 273.0;
  int levels = 10;
  PolarizationSetting polarization;
  unsigned threads = 0;  // 0 uses every hardware thread
};

/// Disorder-averaged pump-probe signals (every component), one per sigma.
/// Every sample reuses one vibronic system with the site energies shifted.
std::vector<PumpProbeSignal> ensemble_pump_probe(const DimerModel& model, const ScanSettings& settings);

/// Total traces of ensemble_pump_probe.
std::vector<SignalTrace> sigma_scan(const DimerModel& model, const ScanSettings& settings);

struct WitnessRun {
  std::vector<SignalTrace> traces;
  WitnessReport report;
};

/// sigma_scan followed by decide; the broadband-regime flag is checked on the
/// disorder-free system at the largest sigma.
WitnessRun run_witness(const DimerModel& model, const ScanSettings& settings, const WitnessOptions& options = {});

}  // namespace vibwit
