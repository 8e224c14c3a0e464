#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vibwit {

/// Flat key-value configuration. Keys are "section.name"; keys outside any
/// section are stored without a prefix.
class Config {
 public:
  Config() = default;

  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  std::string require_string(const std::string& key) const;
  double require_double(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

  /// Canonical text form (sorted "key = value" lines); used for hashing.
  std::string canonical() const;

 private:
  std::map<std::string, std::string> entries_;
};

/// 64-bit FNV-1a hash, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace vibwit
