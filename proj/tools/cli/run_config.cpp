#include "run_config.hpp"

#include <algorithm>
#include <sstream>

#include <vibwit/defaults.hpp>
#include <vibwit/errors.hpp>
#include <vibwit/units.hpp>

namespace vibwit::cli {

namespace {

std::string join(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ',';
    out += format_double(v);
  }
  return out;
}

}  // namespace

Vec3 parse_vector(const std::string& text) {
  Config c;
  c.set("v", text);
  const auto values = c.get_doubles("v");
  if (values.size() != 3) throw ConfigError("expected three components in '" + text + "'");
  return Vec3(values[0], values[1], values[2]);
}

Config merge(const Overrides& o) {
  Config config = o.config_path.empty() ? Config() : Config::from_file(o.config_path);
  if (!o.preset.empty()) {
    for (const auto& [key, value] : config.entries()) {
      if (key.rfind("model.", 0) == 0 && key != "model.preset") {
        throw ConfigError("--preset conflicts with inline model key '" + key + "'");
      }
    }
    config.set("model.preset", o.preset);
  }
  if (!o.sigmas.empty() && !o.fwhms.empty()) throw ConfigError("give pulse widths as --sigma or --fwhm, not both");
  if (!o.sigmas.empty()) config.set("pulse.sigmas", join(o.sigmas));
  if (!o.fwhms.empty()) config.set("pulse.fwhms", join(o.fwhms));
  if (o.samples >= 0) config.set("disorder.samples", std::to_string(o.samples));
  if (o.seed >= 0) config.set("disorder.seed", std::to_string(o.seed));
  if (!o.basis.empty()) config.set("chi.basis", o.basis);
  if (!o.out.empty()) config.set("output.dir", o.out);
  if (!o.format.empty()) config.set("output.format", o.format);
  if (o.levels >= 0) config.set("numerics.levels", std::to_string(o.levels));
  if (o.temperature >= 0.0) config.set("numerics.temperature", format_double(o.temperature));
  return config;
}

std::vector<double> waiting_grid(const Config& config) {
  const double t_max = config.get_double("grid.t_max", defaults::kWaitingTimeMax);
  const int points = config.get_int("grid.t_points", defaults::kWaitingTimePoints);
  if (points < 2 || !(t_max > 0.0)) throw ConfigError("waiting-time grid needs t_max > 0 and at least 2 points");
  return linspace(0.0, t_max, points);
}

RunConfig resolve(const Config& config, bool witness_defaults) {
  RunConfig run;
  run.config = config;
  if (!config.has("model.preset") && !config.has("model.sites")) {
    throw ConfigError("no model given; use --preset or a [model] section");
  }
  run.model = build_model(config);
  run.levels = config.get_int("numerics.levels", defaults::kLevelsPerMode);
  run.temperature = config.get_double("numerics.temperature", defaults::kTemperature);
  run.check_convergence = config.get_bool("numerics.check_convergence", true);

  if (config.has("pulse.sigmas") && config.has("pulse.fwhms")) {
    throw ConfigError("pulse.sigmas and pulse.fwhms are mutually exclusive");
  }
  if (config.has("pulse.sigmas")) {
    run.sigmas = config.get_doubles("pulse.sigmas");
  } else if (config.has("pulse.fwhms")) {
    for (double f : config.get_doubles("pulse.fwhms")) run.sigmas.push_back(units::fwhm_to_sigma(f));
  } else if (witness_defaults) {
    run.sigmas.assign(defaults::kSigmaScan.begin(), defaults::kSigmaScan.end());
  } else {
    run.sigmas = {run.model.pulse_fwhm > 0.0 ? units::fwhm_to_sigma(run.model.pulse_fwhm) : 0.0};
  }
  if (run.sigmas.empty()) throw ConfigError("empty pulse width list");
  for (double s : run.sigmas) {
    if (!(s >= 0.0)) throw ConfigError("pulse widths must be non-negative");
  }
  run.carrier = config.get_double("pulse.carrier", 0.0);
  run.polarization.isotropic = config.get_bool("pulse.isotropic", true);
  if (config.has("pulse.pump_polarization")) run.polarization.pump = parse_vector(*config.get("pulse.pump_polarization"));
  if (config.has("pulse.probe_polarization")) {
    run.polarization.probe = parse_vector(*config.get("pulse.probe_polarization"));
  }
  run.times = waiting_grid(config);

  const bool dimer = run.model.site_count == 2;
  run.disorder.samples = config.get_int("disorder.samples", witness_defaults ? defaults::kDisorderSamples : 1);
  run.disorder.std_dev = config.get_double("disorder.std", witness_defaults ? defaults::kDisorderStd : 0.0);
  run.disorder.correlation =
      config.get_double("disorder.correlation", witness_defaults && dimer ? defaults::kDisorderCorrelation : 0.0);
  const auto seed = config.get("disorder.seed");
  if (seed) {
    try {
      std::size_t used = 0;
      run.disorder.seed = std::stoull(*seed, &used);
      if (used != seed->size()) throw ConfigError("bad seed");
    } catch (const std::exception&) {
      throw ConfigError("disorder.seed must be a non-negative integer");
    }
  } else {
    run.disorder.seed = defaults::kSeed;
  }
  run.disorder.validate();

  run.output_dir = config.get_string("output.dir", ".");
  run.format = parse_format(config.get_string("output.format", "csv"));
  return run;
}

WitnessOptions witness_options(const Config& config) {
  WitnessOptions o;
  o.transform.zero_padding = config.get_int("witness.zero_padding", defaults::kZeroPadding);
  o.transform.hann_window = config.get_bool("witness.hann_window", true);
  o.mad_multiple = config.get_double("witness.mad_multiple", defaults::kPeakMadMultiple);
  o.relative_floor = config.get_double("witness.relative_floor", defaults::kPeakRelativeFloor);
  o.min_cycles = config.get_double("witness.min_cycles", defaults::kMinimumCycles);
  o.se_multiple = config.get_double("witness.se_multiple", defaults::kInterceptStdErrors);
  o.relative_threshold = config.get_double("witness.relative_threshold", defaults::kInterceptRelative);
  o.merge_bins = config.get_double("witness.merge_bins", 2.0);
  return o;
}

ScanSettings scan_settings(const RunConfig& run) {
  ScanSettings s;
  s.sigmas = run.sigmas;
  s.times = run.times;
  s.carrier = run.carrier;
  s.disorder = run.disorder;
  s.temperature = run.temperature;
  s.levels = run.levels;
  s.polarization = run.polarization;
  s.threads = static_cast<unsigned>(std::max(0, run.config.get_int("numerics.threads", 0)));
  return s;
}

}  // namespace vibwit::cli
