#pragma once

#include <array>

// Every physical default used by the library and the CLI lives here so that
// runs are reproducible from (config, seed, version) alone.
namespace vibwit::defaults {

inline constexpr int kLevelsPerMode = 10;
inline constexpr double kTemperature = 273.0;  // K

inline constexpr double kWaitingTimeMax = 900.0;  // fs
inline constexpr int kWaitingTimePoints = 512;

inline constexpr double kCarrier = 12500.0;  // cm^-1, nominal omega_L

// Convergence gate: lowest eigenvalues must move less than this on N -> N+2.
inline constexpr double kConvergenceTolerance = 0.1;  // cm^-1
inline constexpr int kConvergenceEigenvalues = 10;

// Thermal states with weight below this (relative to the largest) are skipped
// in pathway sums.
inline constexpr double kThermalCutoff = 1e-14;

// Ensemble protocol.
inline constexpr int kDisorderSamples = 500;
inline constexpr double kDisorderStd = 40.0;  // cm^-1
inline constexpr double kDisorderCorrelation = 0.8;
inline constexpr unsigned long long kSeed = 20120618ULL;

// Witness protocol.
inline constexpr std::array<double, 4> kSigmaScan = {1.0, 2.0, 3.0, 4.0};  // fs
inline constexpr int kZeroPadding = 4;
inline constexpr double kPeakMadMultiple = 5.0;
inline constexpr double kPeakRelativeFloor = 1e-3;  // of |dc|
inline constexpr double kMinimumCycles = 2.0;  // oscillation periods inside the record
inline constexpr double kInterceptStdErrors = 3.0;
inline constexpr double kInterceptRelative = 0.01;  // of |dc|
inline constexpr double kBroadbandFlatness = 0.5;  // minimum |eps(omega)|/lambda across band
inline constexpr double kBandIntensityFraction = 0.99;

// 2D spectra.
inline constexpr double kDephasing = 30.0;  // cm^-1
inline constexpr int kCoherencePoints = 192;
inline constexpr double kCoherenceStep = 3.0;  // fs, Nyquist ~5560 cm^-1 covers N = 10 truncation edges

// Absorption.
inline constexpr double kAbsorptionWidth = 40.0;  // cm^-1, Gaussian std

}  // namespace vibwit::defaults
