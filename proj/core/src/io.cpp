#include "vibwit/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "vibwit/errors.hpp"

namespace vibwit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw IoError("malformed number '" + text + "'");
  return value;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError("unknown output format '" + text + "'");
}

std::string extension(OutputFormat format) { return format == OutputFormat::Csv ? ".csv" : ".json"; }

const std::vector<double>& Table::column(const std::string& name) const {
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return columns[k];
  }
  throw IoError("missing column '" + name + "'");
}

void Table::add(const std::string& name, std::vector<double> values) {
  if (std::find(names.begin(), names.end(), name) != names.end()) throw ConfigError("duplicate column '" + name + "'");
  if (!columns.empty() && values.size() != rows()) throw ConfigError("column '" + name + "' has the wrong length");
  names.push_back(name);
  columns.push_back(std::move(values));
}

void Table::validate() const {
  if (names.size() != columns.size()) throw IoError("column names and data disagree");
  for (const auto& c : columns) {
    if (c.size() != rows()) throw IoError("columns have different lengths");
  }
}

std::string table_to_csv(const Table& table) {
  table.validate();
  std::string out;
  for (const auto& [key, value] : table.metadata) {
    if (value.find('\n') != std::string::npos) throw IoError("metadata value spans lines: " + key);
    out += "# " + key + " = " + value + "\n";
  }
  for (std::size_t k = 0; k < table.names.size(); ++k) {
    if (k) out += ',';
    out += table.names[k];
  }
  out += '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
      if (k) out += ',';
      out += format_double(table.columns[k][r]);
    }
    out += '\n';
  }
  return out;
}

Table table_from_csv(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (line.front() == '#') {
      const std::string body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      table.metadata[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
      continue;
    }
    const auto fields = split(line, ',');
    if (!header) {
      table.names = fields;
      table.columns.assign(fields.size(), {});
      header = true;
      continue;
    }
    if (fields.size() != table.names.size()) throw IoError("row has " + std::to_string(fields.size()) + " fields");
    for (std::size_t k = 0; k < fields.size(); ++k) table.columns[k].push_back(parse_number(fields[k]));
  }
  if (!header) throw IoError("no header row");
  return table;
}

nlohmann::json table_to_json(const Table& table) {
  table.validate();
  nlohmann::json j;
  j["metadata"] = table.metadata;
  j["columns"] = nlohmann::json::array();
  for (std::size_t k = 0; k < table.names.size(); ++k) {
    j["columns"].push_back({{"name", table.names[k]}, {"values", table.columns[k]}});
  }
  return j;
}

Table table_from_json(const nlohmann::json& json) {
  try {
    Table table;
    if (json.contains("metadata")) table.metadata = json.at("metadata").get<std::map<std::string, std::string>>();
    for (const auto& c : json.at("columns")) {
      table.add(c.at("name").get<std::string>(), c.at("values").get<std::vector<double>>());
    }
    table.validate();
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed table json: ") + e.what());
  } catch (const ConfigError& e) {
    throw IoError(std::string("malformed table json: ") + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const std::string& path, const nlohmann::json& json) { write_text(path, json.dump(2) + "\n"); }

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse '" + path + "': " + e.what());
  }
}

void write_table(const std::string& path, const Table& table, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    write_text(path, table_to_csv(table));
  } else {
    write_json(path, table_to_json(table));
  }
}

Table read_table(const std::string& path) {
  if (ends_with(path, ".json")) return table_from_json(read_json(path));
  return table_from_csv(read_text(path));
}

Table trace_table(const SignalTrace& trace) {
  trace.validate();
  Table t;
  t.metadata = trace.metadata;
  t.add(trace.axis_label, trace.axis);
  t.add(trace.value_label, trace.real);
  if (trace.is_complex()) t.add(trace.value_label + "_imag", trace.imag);
  return t;
}

SignalTrace trace_from_table(const Table& table, const std::string& value) {
  if (table.columns.size() < 2) throw IoError("a trace needs at least two columns");
  SignalTrace trace;
  trace.metadata = table.metadata;
  trace.axis_label = table.names[0];
  trace.axis = table.columns[0];
  trace.value_label = value.empty() ? table.names[1] : value;
  trace.real = table.column(trace.value_label);
  for (std::size_t k = 0; k < table.names.size(); ++k) {
    if (table.names[k] == trace.value_label + "_imag") trace.imag = table.columns[k];
  }
  try {
    trace.validate();
  } catch (const ConfigError& e) {
    throw IoError(std::string("invalid trace: ") + e.what());
  }
  return trace;
}

Table pump_probe_table(const PumpProbeSignal& signal) {
  Table t;
  t.metadata = signal.total.metadata;
  t.metadata["max_imag"] = format_double(signal.max_imag);
  t.add(signal.total.axis_label, signal.total.axis);
  t.add("total", signal.total.real);
  t.add("se", signal.se.real);
  t.add("esa", signal.esa.real);
  t.add("gsb", signal.gsb.real);
  return t;
}

Table chi_table(const ProcessMatrix& chi) {
  Table t;
  const int d = chi.dim();
  t.metadata["frame"] = to_string(chi.frame());
  t.metadata["dim"] = std::to_string(d);
  std::string transform;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      if (!transform.empty()) transform += ' ';
      transform += format_double(chi.transform()(r, c).real()) + ' ' + format_double(chi.transform()(r, c).imag());
    }
  t.metadata["transform"] = transform;
  std::vector<double> cols[7];
  for (std::size_t s = 0; s < chi.times().size(); ++s)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int q = 0; q < d; ++q)
          for (int p = 0; p < d; ++p) {
            const cd v = chi.at(s, i, j, q, p);
            cols[0].push_back(chi.times()[s]);
            cols[1].push_back(i);
            cols[2].push_back(j);
            cols[3].push_back(q);
            cols[4].push_back(p);
            cols[5].push_back(v.real());
            cols[6].push_back(v.imag());
          }
  const char* names[7] = {"T_fs", "i", "j", "q", "p", "real", "imag"};
  for (int k = 0; k < 7; ++k) t.add(names[k], std::move(cols[k]));
  return t;
}

ProcessMatrix chi_from_table(const Table& table) {
  const auto meta = [&](const std::string& key) {
    const auto it = table.metadata.find(key);
    if (it == table.metadata.end()) throw IoError("chi table lacks '" + key + "'");
    return it->second;
  };
  const int d = static_cast<int>(parse_number(meta("dim")));
  if (d < 1 || d > 2) throw IoError("unsupported chi dimension");
  ElectronicFrame frame;
  try {
    frame = parse_frame(meta("frame"));
  } catch (const ConfigError& e) {
    throw IoError(e.what());
  }
  std::vector<double> parts;
  std::istringstream in(meta("transform"));
  std::string token;
  while (in >> token) parts.push_back(parse_number(token));
  if (parts.size() != static_cast<std::size_t>(2 * d * d)) throw IoError("chi transform has the wrong size");
  Eigen::MatrixXcd u(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) u(r, c) = cd(parts[2 * (r * d + c)], parts[2 * (r * d + c) + 1]);

  const auto& times = table.column("T_fs");
  const std::size_t block = static_cast<std::size_t>(d * d * d * d);
  if (times.size() % block != 0) throw IoError("chi table row count is not a multiple of dim^4");
  std::vector<double> grid;
  for (std::size_t r = 0; r < times.size(); r += block) grid.push_back(times[r]);
  ProcessMatrix chi(grid, d, frame, u);
  const auto& ci = table.column("i");
  const auto& cj = table.column("j");
  const auto& cq = table.column("q");
  const auto& cp = table.column("p");
  const auto& re = table.column("real");
  const auto& im = table.column("imag");
  for (std::size_t r = 0; r < times.size(); ++r) {
    const auto idx = [&](double v) {
      const int k = static_cast<int>(v);
      if (k < 0 || k >= d || k != v) throw IoError("chi index out of range");
      return k;
    };
    if (times[r] != grid[r / block]) throw IoError("chi table rows are not grouped by time");
    chi.at(r / block, idx(ci[r]), idx(cj[r]), idx(cq[r]), idx(cp[r])) = cd(re[r], im[r]);
  }
  return chi;
}

Table spectrum2d_table(const Spectrum2D& spectrum) {
  Table t;
  t.metadata = spectrum.metadata;
  t.metadata["waiting_time_fs"] = format_double(spectrum.waiting_time);
  std::vector<double> wt, w, re, im;
  for (std::size_t r = 0; r < spectrum.omega_tau.size(); ++r)
    for (std::size_t c = 0; c < spectrum.omega_t.size(); ++c) {
      const cd v = spectrum.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      wt.push_back(spectrum.omega_tau[r]);
      w.push_back(spectrum.omega_t[c]);
      re.push_back(v.real());
      im.push_back(v.imag());
    }
  t.add("omega_tau_cm-1", std::move(wt));
  t.add("omega_t_cm-1", std::move(w));
  t.add("real", std::move(re));
  t.add("imag", std::move(im));
  return t;
}

nlohmann::json report_to_json(const WitnessReport& report) {
  nlohmann::json j;
  j["verdict"] = report.positive ? "positive" : "negative";
  j["broadband_regime"] = report.broadband_regime;
  j["dc"] = report.dc;
  j["noise_floor"] = report.noise_floor;
  j["se_multiple"] = report.se_multiple;
  j["relative_threshold"] = report.relative_threshold;
  j["dominant_frequency_cm-1"] = report.dominant_frequency();
  j["notes"] = report.notes;
  j["peaks"] = nlohmann::json::array();
  for (const auto& f : report.fits) {
    j["peaks"].push_back({{"frequency_cm-1", f.frequency},
                          {"sigmas_fs", f.sigmas},
                          {"amplitudes", f.amplitudes},
                          {"intercept", f.fit.intercept},
                          {"intercept_se", f.fit.intercept_se},
                          {"slope", f.fit.slope},
                          {"slope_se", f.fit.slope_se},
                          {"r_squared", f.fit.r_squared},
                          {"significant", f.significant}});
  }
  return j;
}

nlohmann::json manifest_to_json(const Manifest& manifest) {
  nlohmann::json j;
  j["subcommand"] = manifest.subcommand;
  j["config_hash"] = manifest.config_hash;
  j["seed"] = manifest.seed;
  j["version"] = manifest.version;
  j["rng"] = manifest.rng;
  j["files"] = manifest.files;
  for (const auto& [k, v] : manifest.extra) j[k] = v;
  return j;
}

}  // namespace vibwit
