#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <vibwit/errors.hpp>
#include <vibwit/model.hpp>

#include "commands.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

void add_common(CLI::App* sub, vibwit::cli::Overrides& o, bool pulses) {
  sub->add_option("--config", o.config_path, "INI configuration file");
  sub->add_option("--preset", o.preset, "Model preset")
      ->check(CLI::IsMember(vibwit::preset_names()));
  if (pulses) {
    sub->add_option("--sigma", o.sigmas, "Pulse standard deviation in fs (repeatable)")->take_all();
    sub->add_option("--fwhm", o.fwhms, "Pulse FWHM in fs (repeatable)")->take_all();
    sub->add_option("--samples", o.samples, "Disorder samples")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Disorder RNG seed")->check(CLI::NonNegativeNumber);
  }
  sub->add_option("--levels", o.levels, "Vibrational levels per mode")->check(CLI::Range(2, 64));
  sub->add_option("--temperature", o.temperature, "Temperature in K")->check(CLI::NonNegativeNumber);
  sub->add_option("--out", o.out, "Output directory");
  sub->add_option("--format", o.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace vibwit::cli;
  CLI::App app{"Vibronic dimer simulator and electronic-coherence witness"};
  app.set_version_flag("--version", std::string(VIBWIT_VERSION));
  app.require_subcommand(1);

  Overrides o;
  std::string from_file;
  std::vector<std::string> from_csv;

  auto* absorption = app.add_subcommand("absorption", "Linear absorption spectrum");
  add_common(absorption, o, false);
  auto* pump_probe = app.add_subcommand("pump-probe", "Pump-probe traces, finite or broadband (--sigma 0)");
  add_common(pump_probe, o, true);
  auto* chi = app.add_subcommand("chi", "Process matrix with invariant checks");
  add_common(chi, o, false);
  chi->add_option("--basis", o.basis, "Electronic frame")->check(CLI::IsMember({"site", "exciton", "polaron"}));
  chi->add_option("--from-file", from_file, "Recompute invariants of a previously written chi table");
  auto* twodes = app.add_subcommand("2des", "Rephasing two-dimensional spectra");
  add_common(twodes, o, false);
  auto* witness = app.add_subcommand("witness", "Sigma scan and coherence witness verdict");
  add_common(witness, o, true);
  witness->add_option("--from-csv", from_csv, "Analyse previously written traces instead of simulating")
      ->take_all();
  auto* polaron = app.add_subcommand("polaron", "Polaron dressing diagnostics");
  add_common(polaron, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  Context ctx;
  try {
    const vibwit::Config config = merge(o);
    ctx.subcommand = app.get_subcommands().front()->get_name();
    int status = 0;
    if (ctx.subcommand == "witness" && !from_csv.empty()) {
      ctx.run.config = config;
      ctx.run.output_dir = config.get_string("output.dir", ".");
      ctx.run.format = vibwit::parse_format(config.get_string("output.format", "csv"));
      status = cmd_witness_from_files(config, from_csv, ctx);
    } else if (ctx.subcommand == "chi" && !from_file.empty()) {
      ctx.run.config = config;
      ctx.run.output_dir = config.get_string("output.dir", ".");
      status = cmd_chi(ctx, from_file);
    } else {
      ctx.run = resolve(config, ctx.subcommand == "witness");
      if (ctx.subcommand == "absorption") status = cmd_absorption(ctx);
      if (ctx.subcommand == "pump-probe") status = cmd_pump_probe(ctx);
      if (ctx.subcommand == "chi") status = cmd_chi(ctx, "");
      if (ctx.subcommand == "2des") status = cmd_2des(ctx);
      if (ctx.subcommand == "witness") status = cmd_witness(ctx);
      if (ctx.subcommand == "polaron") status = cmd_polaron(ctx);
    }
    write_manifest(ctx);
    return status;
  } catch (const vibwit::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const vibwit::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const vibwit::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}
