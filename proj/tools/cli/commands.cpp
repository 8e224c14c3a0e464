#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include <vibwit/defaults.hpp>
#include <vibwit/errors.hpp>
#include <vibwit/log.hpp>
#include <vibwit/polaron.hpp>
#include <vibwit/processmatrix.hpp>
#include <vibwit/signals.hpp>
#include <vibwit/spectrum2d.hpp>
#include <vibwit/units.hpp>
#include <vibwit/vibronic.hpp>

namespace vibwit::cli {

namespace fs = std::filesystem;

namespace {

std::string brief(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string output_path(Context& ctx, const std::string& stem, const std::string& ext) {
  std::error_code ec;
  fs::create_directories(ctx.run.output_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + ctx.run.output_dir + "': " + ec.message());
  const std::string name = stem + ext;
  ctx.written.push_back(name);
  return (fs::path(ctx.run.output_dir) / name).string();
}

void emit_table(Context& ctx, const std::string& stem, const Table& table) {
  write_table(output_path(ctx, stem, extension(ctx.run.format)), table, ctx.run.format);
}

void emit_json(Context& ctx, const std::string& stem, const nlohmann::json& json) {
  write_json(output_path(ctx, stem, ".json"), json);
}

void gate_convergence(const RunConfig& run) {
  if (!run.check_convergence) return;
  const auto report = check_convergence(run.model, run.levels, defaults::kConvergenceTolerance,
                                        defaults::kConvergenceEigenvalues);
  if (!report.converged) {
    warn("truncation N = " + std::to_string(run.levels) + " per mode is not converged: the lowest " +
         std::to_string(defaults::kConvergenceEigenvalues) + " eigenvalues move by " +
         brief(report.max_shift) + " cm^-1 on N -> N+2 (tolerance " +
         brief(defaults::kConvergenceTolerance) + "); raise --levels to tighten");
  }
}

std::string sigma_stem(const std::string& prefix, std::size_t index, std::size_t count) {
  return count == 1 ? prefix : prefix + "_" + std::to_string(index);
}

void tag(Table& table, const RunConfig& run) {
  table.metadata["model"] = run.model.name;
  table.metadata["levels"] = std::to_string(run.levels);
  table.metadata["temperature_K"] = format_double(run.temperature);
}

}  // namespace

int cmd_absorption(Context& ctx) {
  const auto& run = ctx.run;
  gate_convergence(run);
  const auto sys = build_vibronic_system(run.model, run.levels, run.temperature);
  const double lo = run.config.get_double("absorption.omega_min", -2000.0);
  const double hi = run.config.get_double("absorption.omega_max", 3000.0);
  const int n = run.config.get_int("absorption.points", 1001);
  if (!(hi > lo) || n < 2) throw ConfigError("absorption grid needs omega_max > omega_min and 2+ points");
  const double width = run.config.get_double("absorption.line_width", defaults::kAbsorptionWidth);
  Table table = trace_table(absorption_spectrum(sys, linspace(lo, hi, n), width));
  tag(table, run);
  emit_table(ctx, "absorption", table);
  std::printf("absorption: %d points written\n", n);
  return 0;
}

int cmd_pump_probe(Context& ctx) {
  const auto& run = ctx.run;
  gate_convergence(run);
  const auto signals = ensemble_pump_probe(run.model, scan_settings(run));
  for (std::size_t k = 0; k < signals.size(); ++k) {
    Table table = pump_probe_table(signals[k]);
    tag(table, run);
    table.metadata["ensemble_samples"] = std::to_string(run.disorder.samples);
    emit_table(ctx, sigma_stem("pump_probe", k, signals.size()), table);
    const auto& total = signals[k].total;
    std::printf("pump-probe sigma = %s fs: mean %s, relative variation %s\n", brief(run.sigmas[k]).c_str(),
                brief(total.mean()).c_str(), brief(total.relative_variation()).c_str());
  }
  return 0;
}

namespace {

Eigen::MatrixXcd basis_transform(const RunConfig& run, ElectronicFrame frame) {
  if (frame == ElectronicFrame::Custom) throw ConfigError("the custom frame is only available through the library");
  if (frame == ElectronicFrame::Polaron) {
    const auto spec = build_polaron_spec(run.config, run.model);
    return polaron_basis(spec, run.model).basis.transform.cast<cd>();
  }
  return frame_transform(run.model, frame);
}

nlohmann::json invariants_json(const ChiInvariants& inv) {
  return {{"identity", inv.identity},
          {"hermiticity", inv.hermiticity},
          {"trace", inv.trace},
          {"worst", inv.worst()},
          {"tolerance", 1e-8},
          {"pass", inv.worst() < 1e-8}};
}

}  // namespace

int cmd_chi(Context& ctx, const std::string& from_file) {
  if (!from_file.empty()) {
    const ProcessMatrix chi = chi_from_table(read_table(from_file));
    const auto inv = check_chi_invariants(chi);
    auto j = invariants_json(inv);
    j["source"] = from_file;
    j["frame"] = to_string(chi.frame());
    j["times"] = chi.times().size();
    emit_json(ctx, "chi_invariants", j);
    std::printf("chi invariants (recomputed from %s): worst %s -> %s\n", from_file.c_str(),
                brief(inv.worst()).c_str(), inv.worst() < 1e-8 ? "pass" : "FAIL");
    return inv.worst() < 1e-8 ? 0 : 3;
  }
  const auto& run = ctx.run;
  if (run.model.site_count != 2 && run.config.get_string("chi.basis", "site") != "site") {
    throw ConfigError("a monomer has only the site frame");
  }
  gate_convergence(run);
  const ElectronicFrame frame = parse_frame(run.config.get_string("chi.basis", "site"));
  const auto sys = build_vibronic_system(run.model, run.levels, run.temperature);
  const Eigen::MatrixXcd u = run.model.site_count == 2 ? basis_transform(run, frame)
                                                       : Eigen::MatrixXcd::Identity(1, 1);
  const ProcessMatrix chi = compute_chi(sys, run.times, frame, u);
  Table table = chi_table(chi);
  tag(table, run);
  emit_table(ctx, "chi", table);
  const auto inv = check_chi_invariants(chi);
  emit_json(ctx, "chi_invariants", invariants_json(inv));
  std::printf("chi (%s frame, %zu times): invariants worst %s -> %s\n", to_string(frame).c_str(), run.times.size(),
              brief(inv.worst()).c_str(), inv.worst() < 1e-8 ? "pass" : "FAIL");
  if (inv.worst() >= 1e-8) {
    throw NumericalError("chi invariants violated (worst " + brief(inv.worst()) + ")");
  }
  return 0;
}

int cmd_2des(Context& ctx) {
  const auto& run = ctx.run;
  gate_convergence(run);
  const auto& cfg = run.config;
  std::vector<double> waits = cfg.has("2des.waiting_times") ? cfg.get_doubles("2des.waiting_times")
                                                            : std::vector<double>{100.0, 200.0, 300.0};
  const int points = cfg.get_int("2des.points", defaults::kCoherencePoints);
  const double step = cfg.get_double("2des.step", defaults::kCoherenceStep);
  if (points < 2 || !(step > 0.0)) throw ConfigError("2des grid needs 2+ points and a positive step");
  const auto grid = linspace(0.0, step * (points - 1), points);
  const double dephasing = cfg.get_double("2des.dephasing", defaults::kDephasing);
  const auto sys = build_vibronic_system(run.model, run.levels, run.temperature);
  const auto spectra = rephasing_2des(sys, waits, grid, grid, dephasing, run.polarization);
  for (std::size_t k = 0; k < spectra.size(); ++k) {
    Table table = spectrum2d_table(spectra[k]);
    tag(table, run);
    emit_table(ctx, "spectrum2d_T" + format_double(spectra[k].waiting_time), table);
    std::printf("2des T = %s fs: zero-frequency integral %s\n", brief(spectra[k].waiting_time).c_str(),
                brief(spectra[k].zero_frequency_integral().real()).c_str());
  }
  return 0;
}

namespace {

int report_witness(Context& ctx, const WitnessReport& report, const std::vector<SignalTrace>& traces) {
  for (std::size_t k = 0; k < traces.size(); ++k) {
    Table table = trace_table(traces[k]);
    emit_table(ctx, sigma_stem("witness_trace", k, traces.size()), table);
  }
  auto j = report_to_json(report);
  j["model"] = ctx.run.model.name;
  emit_json(ctx, "witness_report", j);
  std::printf("witness: %s", report.positive ? "positive" : "negative");
  if (report.positive) std::printf(" (dominant %s cm^-1)", brief(report.dominant_frequency()).c_str());
  std::printf(", %zu peak(s) fitted%s\n", report.fits.size(),
              report.broadband_regime ? "" : ", outside the broadband regime");
  for (const auto& note : report.notes) std::printf("note: %s\n", note.c_str());
  return 0;
}

}  // namespace

int cmd_witness(Context& ctx) {
  const auto& run = ctx.run;
  if (run.sigmas.size() < 3) throw ConfigError("the witness needs at least 3 pulse widths");
  gate_convergence(run);
  const auto result = run_witness(run.model, scan_settings(run), witness_options(run.config));
  return report_witness(ctx, result.report, result.traces);
}

int cmd_witness_from_files(const Config& config, const std::vector<std::string>& files, Context& ctx) {
  std::vector<SignalTrace> traces;
  std::vector<double> sigmas;
  for (const auto& f : files) {
    const Table table = read_table(f);
    const std::string value = std::find(table.names.begin(), table.names.end(), "total") != table.names.end()
                                  ? "total" : "";
    SignalTrace trace = trace_from_table(table, value);
    const auto it = trace.metadata.find("sigma_pump_fs");
    if (it == trace.metadata.end()) throw IoError("'" + f + "' lacks the sigma_pump_fs metadata line");
    try {
      sigmas.push_back(std::stod(it->second));
    } catch (const std::exception&) {
      throw IoError("'" + f + "' has a malformed sigma_pump_fs value");
    }
    traces.push_back(std::move(trace));
  }
  const auto report = decide(sigmas, traces, witness_options(config));
  auto j = report_to_json(report);
  j["sources"] = files;
  emit_json(ctx, "witness_report", j);
  std::printf("witness: %s", report.positive ? "positive" : "negative");
  if (report.positive) std::printf(" (dominant %s cm^-1)", brief(report.dominant_frequency()).c_str());
  std::printf(", %zu peak(s) fitted\n", report.fits.size());
  return 0;
}

int cmd_polaron(Context& ctx) {
  const auto& run = ctx.run;
  const auto spec = build_polaron_spec(run.config, run.model);
  const auto w = renormalized_coupling(spec);
  const double fom = perturbation_magnitude(spec);
  const auto basis = polaron_basis(spec, run.model);
  const double gap = basis.basis.gap();
  const bool reliable = fom <= 0.2 * gap;
  nlohmann::json j;
  j["dressing"] = w.dressing;
  j["renormalized_coupling_cm-1"] = w.coupling;
  j["bare_coupling_cm-1"] = spec.coupling;
  j["figure_of_merit_cm-1"] = fom;
  j["shifted_energies_cm-1"] = {basis.shifted_e10, basis.shifted_e01};
  j["polaron_gap_cm-1"] = gap;
  j["transform"] = {{basis.basis.transform(0, 0), basis.basis.transform(0, 1)},
                    {basis.basis.transform(1, 0), basis.basis.transform(1, 1)}};
  j["zeroth_order_reliable"] = reliable;
  j["recommended_basis"] = reliable ? "polaron" : "exciton";
  emit_json(ctx, "polaron", j);
  std::printf("<w> = %s\nJ~ = %s cm^-1\nJ sqrt(1 - <w>^2) = %s cm^-1 (polaron gap %s cm^-1)\nrecommended basis: %s\n",
              brief(w.dressing).c_str(), brief(w.coupling).c_str(), brief(fom).c_str(),
              brief(gap).c_str(), reliable ? "polaron" : "exciton");
  return 0;
}

void write_manifest(const Context& ctx) {
  Manifest m;
  m.subcommand = ctx.subcommand;
  m.config_hash = fnv1a_hex(ctx.run.config.canonical());
  m.seed = ctx.run.disorder.seed;
  m.version = VIBWIT_VERSION;
  m.rng = kRngName;
  m.files = ctx.written;
  auto j = manifest_to_json(m);
  j["config"] = ctx.run.config.entries();
  std::error_code ec;
  fs::create_directories(ctx.run.output_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + ctx.run.output_dir + "': " + ec.message());
  write_json((fs::path(ctx.run.output_dir) / "manifest.json").string(), j);
}

}  // namespace vibwit::cli
