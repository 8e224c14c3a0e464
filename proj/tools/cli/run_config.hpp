#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <vibwit/config.hpp>
#include <vibwit/ensemble.hpp>
#include <vibwit/io.hpp>
#include <vibwit/model.hpp>
#include <vibwit/pipeline.hpp>
#include <vibwit/witness.hpp>

namespace vibwit::cli {

/// Values given on the command line; each one overrides the matching config key.
struct Overrides {
  std::string config_path;
  std::string preset;
  std::vector<double> sigmas;
  std::vector<double> fwhms;
  int samples = -1;
  long long seed = -1;
  std::string basis;
  std::string out;
  std::string format;
  int levels = -1;
  double temperature = -1.0;
};

/// Fully resolved run settings. Everything a subcommand reads comes from here.
struct RunConfig {
  Config config;  // merged config file plus overrides; hashed into the manifest
  DimerModel model;
  int levels = 10;
  double temperature = 273.0;
  std::vector<double> sigmas;  // fs
  double carrier = 0.0;
  PolarizationSetting polarization;
  std::vector<double> times;
  DisorderSpec disorder;
  std::string output_dir = ".";
  OutputFormat format = OutputFormat::Csv;
  bool check_convergence = true;
};

Config merge(const Overrides& overrides);

/// `witness_defaults` selects the sigma scan and disorder defaults of the
/// witness protocol; other subcommands default to the preset pulse and no
/// disorder.
RunConfig resolve(const Config& config, bool witness_defaults);

WitnessOptions witness_options(const Config& config);
ScanSettings scan_settings(const RunConfig& run);

std::vector<double> waiting_grid(const Config& config);
Vec3 parse_vector(const std::string& text);

}  // namespace vibwit::cli
