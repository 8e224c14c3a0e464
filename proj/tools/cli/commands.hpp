#pragma once

#include <string>
#include <vector>

#include "run_config.hpp"

namespace vibwit::cli {

struct Context {
  RunConfig run;
  std::string subcommand;
  std::vector<std::string> written;  // file names relative to the output directory
};

int cmd_absorption(Context& ctx);
int cmd_pump_probe(Context& ctx);
int cmd_chi(Context& ctx, const std::string& from_file);
int cmd_2des(Context& ctx);
int cmd_witness(Context& ctx);
/// Re-runs the witness analysis on traces written by earlier runs.
int cmd_witness_from_files(const Config& config, const std::vector<std::string>& files, Context& ctx);
int cmd_polaron(Context& ctx);

/// Writes manifest.json into the output directory.
void write_manifest(const Context& ctx);

}  // namespace vibwit::cli
