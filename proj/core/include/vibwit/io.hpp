#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vibwit/processmatrix.hpp"
#include "vibwit/spectrum2d.hpp"
#include "vibwit/trace.hpp"
#include "vibwit/witness.hpp"

namespace vibwit {

enum class OutputFormat { Csv, Json };
OutputFormat parse_format(const std::string& text);
std::string extension(OutputFormat format);

/// Named numeric columns of equal length with string metadata. CSV files carry
/// the metadata as "# key = value" lines ahead of the header row; JSON files
/// hold the same content as {"metadata", "columns": [{"name", "values"}]}.
struct Table {
  std::map<std::string, std::string> metadata;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  const std::vector<double>& column(const std::string& name) const;
  void add(const std::string& name, std::vector<double> values);
  void validate() const;
};

void write_table(const std::string& path, const Table& table, OutputFormat format);
/// Format is chosen from the extension (.json or anything else for CSV).
Table read_table(const std::string& path);

std::string table_to_csv(const Table& table);
Table table_from_csv(const std::string& text);
nlohmann::json table_to_json(const Table& table);
Table table_from_json(const nlohmann::json& json);

/// Axis plus real part (and imaginary part when present).
Table trace_table(const SignalTrace& trace);
/// First column becomes the axis; `value` selects the real column ("" picks
/// the second column). A column named value + "_imag" fills the imaginary part.
SignalTrace trace_from_table(const Table& table, const std::string& value = "");

/// Columns T_fs, total, se, esa, gsb.
Table pump_probe_table(const PumpProbeSignal& signal);

/// Long format: T_fs, i, j, q, p, real, imag. Frame and transform go to metadata.
Table chi_table(const ProcessMatrix& chi);
ProcessMatrix chi_from_table(const Table& table);

/// Long format: omega_tau, omega_t, real, imag.
Table spectrum2d_table(const Spectrum2D& spectrum);

nlohmann::json report_to_json(const WitnessReport& report);

struct Manifest {
  std::string subcommand;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version;
  std::string rng;
  std::vector<std::string> files;
  std::map<std::string, std::string> extra;
};

nlohmann::json manifest_to_json(const Manifest& manifest);
void write_json(const std::string& path, const nlohmann::json& json);
nlohmann::json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace vibwit
