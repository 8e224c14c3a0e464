#pragma once

#include <complex>
#include <string>
#include <vector>

#include "vibwit/ensemble.hpp"
#include "vibwit/trace.hpp"
#include "vibwit/vibronic.hpp"

namespace vibwit {

struct TransformOptions {
  bool subtract_mean = true;
  bool hann_window = true;
  int zero_padding = 4;
};

/// One-sided spectrum S~(w) = sum_k w_k (S_k - mean) e^{i w T_k} / sum_k w_k
/// on the zero-padded grid w_j = 2 pi j / (P N dT), j = 0..P N / 2. The
/// normalization by the window sum makes a cosine of amplitude A appear with
/// magnitude A / 2. The output axis is in cm^-1; real/imag hold S~.
SignalTrace transform_trace(const SignalTrace& trace, const TransformOptions& options = {});

/// Same transform evaluated at a single frequency (cm^-1).
std::complex<double> transform_at(const SignalTrace& trace, double omega, const TransformOptions& options = {});

struct Peak {
  double frequency = 0.0;  // cm^-1, interpolated
  double amplitude = 0.0;  // |S~| at the interpolated frequency
  std::size_t bin = 0;
};

struct PeakOptions {
  double mad_multiple = 5.0;
  double relative_floor = 1e-3;   // of |dc|
  double dc = 0.0;                // dc magnitude of the source trace
  double min_frequency = 0.0;     // cm^-1; bins below are ignored
};

struct PeakList {
  std::vector<Peak> peaks;
  double noise_floor = 0.0;
};

/// Local maxima of |S~| above max(median + k MAD, relative_floor |dc|), with
/// the dc bin excluded and 3-point quadratic interpolation on log |S~|.
PeakList locate_peaks(const SignalTrace& spectrum, const PeakOptions& options = {});

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double intercept_se = 0.0;
  double slope_se = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares amplitude(sigma) = a + b sigma.
LinearFit sigma_extrapolate(const std::vector<double>& sigmas, const std::vector<double>& amplitudes);

struct FrequencyFit {
  double frequency = 0.0;  // cm^-1
  std::vector<double> sigmas;
  std::vector<double> amplitudes;
  LinearFit fit;
  bool significant = false;
};

struct WitnessReport {
  std::vector<FrequencyFit> fits;
  double noise_floor = 0.0;  // largest floor over the sigma scan
  double dc = 0.0;
  double se_multiple = 3.0;
  double relative_threshold = 0.01;
  bool positive = false;
  bool broadband_regime = true;
  std::vector<std::string> notes;

  /// Frequency of the fit with the largest significant intercept (or 0).
  double dominant_frequency() const;
};

struct WitnessOptions {
  TransformOptions transform;
  double mad_multiple = 5.0;
  double relative_floor = 1e-3;
  double min_cycles = 2.0;
  double se_multiple = 3.0;
  double relative_threshold = 0.01;
  double merge_bins = 2.0;
};

/// Runs steps (transform, peaks, extrapolation, verdict) on traces S(T) taken
/// at the given pulse widths (fs).
WitnessReport decide(const std::vector<double>& sigmas, const std::vector<SignalTrace>& traces,
                     const WitnessOptions& options = {});

/// Lowest spectral amplitude ratio eps(w)/lambda across the band that holds
/// `fraction` of the absorption intensity. Values close to 1 mean broadband.
double band_flatness(const VibronicSystem& sys, double sigma, double fraction, double carrier = 0.0);

}  // namespace vibwit
