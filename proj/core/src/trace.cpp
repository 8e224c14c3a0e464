#include "vibwit/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vibwit/errors.hpp"

namespace vibwit {

void SignalTrace::validate() const {
  if (real.size() != axis.size()) throw ConfigError("trace: value count does not match axis");
  if (!imag.empty() && imag.size() != axis.size()) throw ConfigError("trace: imaginary part does not match axis");
  for (std::size_t k = 1; k < axis.size(); ++k) {
    if (!(axis[k] > axis[k - 1])) throw ConfigError("trace: axis must be strictly increasing");
  }
}

double SignalTrace::mean() const {
  if (real.empty()) return 0.0;
  double sum = 0.0;
  for (double v : real) sum += v;
  return sum / static_cast<double>(real.size());
}

double SignalTrace::relative_variation() const {
  const double m = mean();
  double worst = 0.0;
  for (double v : real) worst = std::max(worst, std::abs(v - m));
  return m == 0.0 ? (worst == 0.0 ? 0.0 : INFINITY) : worst / std::abs(m);
}

double SignalTrace::max_abs_imag() const {
  double worst = 0.0;
  for (double v : imag) worst = std::max(worst, std::abs(v));
  return worst;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw ConfigError("grid needs at least one point");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / (n - 1);
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = lo + step * k;
  out.back() = hi;
  return out;
}

double uniform_step(const std::vector<double>& axis, double rel_tol) {
  if (axis.size() < 2) throw ConfigError("grid needs at least two points");
  const double step = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
  if (!(step > 0.0)) throw ConfigError("grid must be increasing");
  for (std::size_t k = 1; k < axis.size(); ++k) {
    if (std::abs(axis[k] - axis[k - 1] - step) > rel_tol * step + 1e-12) {
      throw ConfigError("non-uniform grid");
    }
  }
  return step;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace vibwit
