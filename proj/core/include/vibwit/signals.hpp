#pragma once

#include <vector>

#include "vibwit/ensemble.hpp"
#include "vibwit/model.hpp"
#include "vibwit/processmatrix.hpp"
#include "vibwit/trace.hpp"
#include "vibwit/vibronic.hpp"

namespace vibwit {

/// Pump-probe signal for Gaussian pulses of finite width, summed over states
/// in the vibronic eigenbasis. The waiting time T is the delay between the
/// pump and probe centers; pulse center fields are not used. SE and ESA carry
/// the spectral amplitudes at each transition; GSB additionally carries the
/// time-ordering factor (1 - erf(i sigma (d1 + d2) / 2)) / 2 of each pulse.
/// With sigma = 0 on both pulses this reduces to the broadband contraction.
PumpProbeSignal finite_pulse_pp(const VibronicSystem& sys, const PulseSpec& pump, const PulseSpec& probe,
                                const std::vector<double>& times, const PolarizationSetting& polarization);

/// Coefficient of sigma in the expansion of the GSB signal about sigma = 0,
/// for a common width on both pulses (carriers and strengths are taken from
/// the given pulses; their widths are ignored). Units: signal per fs.
SignalTrace gsb_first_order(const VibronicSystem& sys, const PulseSpec& pump, const PulseSpec& probe,
                            const std::vector<double>& times, const PolarizationSetting& polarization);

/// Isotropically averaged stick spectrum (1/3) sum p_n |<zeta|mu|g,n>|^2 at
/// omega_zeta - omega_gn (relative to the carrier), convolved with a unit-area
/// Gaussian of standard deviation line_width.
SignalTrace absorption_spectrum(const VibronicSystem& sys, const std::vector<double>& omega_grid, double line_width);

struct AbsorptionStick {
  double omega;
  double intensity;
};

std::vector<AbsorptionStick> absorption_sticks(const VibronicSystem& sys, double relative_cutoff = 1e-14);

/// True if both site surfaces have identical frequencies and displacements.
bool is_same_shape(const DimerModel& model);

/// SE signal of a same-shape dimer built directly from products of exciton
/// amplitudes and one-dimensional Franck-Condon overlaps, with analytic
/// vibronic energies. `levels` bounds the vibrational quanta per mode that
/// enter the sums.
SignalTrace narrowband_se_check(const DimerModel& model, const PulseSpec& pump, const PulseSpec& probe,
                                const std::vector<double>& times, const PolarizationSetting& polarization,
                                double temperature, int levels);

}  // namespace vibwit
