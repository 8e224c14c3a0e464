#pragma once

#include <map>
#include <string>
#include <vector>

namespace vibwit {

/// Sampled signal on a strictly increasing axis. `imag` is empty for real data.
struct SignalTrace {
  std::string axis_label = "T_fs";
  std::string value_label = "signal";
  std::vector<double> axis;
  std::vector<double> real;
  std::vector<double> imag;
  std::map<std::string, std::string> metadata;

  std::size_t size() const { return axis.size(); }
  bool is_complex() const { return !imag.empty(); }

  /// Throws ConfigError if sizes disagree or the axis is not strictly increasing.
  void validate() const;

  double mean() const;
  /// max |S - mean| / |mean|
  double relative_variation() const;
  double max_abs_imag() const;
};

/// n points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);

/// Uniform spacing of the axis; throws ConfigError if the grid is not uniform.
double uniform_step(const std::vector<double>& axis, double rel_tol = 1e-9);

std::string format_double(double value);

}  // namespace vibwit
