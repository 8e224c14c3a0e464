#include "vibwit/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vibwit/errors.hpp"

namespace vibwit {

namespace {

Config from_ptree(const boost::property_tree::ptree& tree) {
  Config config;
  for (const auto& [section, child] : tree) {
    if (child.empty()) {
      config.set(section, child.data());
      continue;
    }
    for (const auto& [name, leaf] : child) {
      if (!leaf.empty()) throw ConfigError("nested configuration sections are not supported: " + section);
      config.set(section + "." + name, leaf.data());
    }
  }
  return config;
}

double parse_double(const std::string& key, const std::string& raw) {
  std::string text = boost::algorithm::trim_copy(raw);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("key '" + key + "': expected a number, got '" + raw + "'");
  }
  return value;
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open configuration file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str());
}

Config Config::from_string(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }
  return from_ptree(tree);
}

void Config::set(const std::string& key, const std::string& value) {
  entries_[key] = boost::algorithm::trim_copy(value);
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double Config::get_double(const std::string& key, double fallback) const {
  auto raw = get(key);
  return raw ? parse_double(key, *raw) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
  auto raw = get(key);
  if (!raw) return fallback;
  double value = parse_double(key, *raw);
  if (value != static_cast<double>(static_cast<int>(value))) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + *raw + "'");
  }
  return static_cast<int>(value);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto raw = get(key);
  if (!raw) return fallback;
  std::string v = boost::algorithm::to_lower_copy(*raw);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + *raw + "'");
}

std::string Config::require_string(const std::string& key) const {
  auto raw = get(key);
  if (!raw) throw ConfigError("missing key: " + key);
  return *raw;
}

double Config::require_double(const std::string& key) const {
  return parse_double(key, require_string(key));
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  std::vector<double> out;
  auto raw = get(key);
  if (!raw) return out;
  std::vector<std::string> parts;
  boost::algorithm::split(parts, *raw, boost::algorithm::is_any_of(", "), boost::algorithm::token_compress_on);
  for (const auto& part : parts) {
    if (!boost::algorithm::trim_copy(part).empty()) out.push_back(parse_double(key, part));
  }
  return out;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [key, value] : entries_) out += key + " = " + value + "\n";
  return out;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace vibwit
