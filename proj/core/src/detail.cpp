#include "detail.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vibwit/units.hpp"

namespace vibwit::detail {

PhaseTable phase_table(const Eigen::VectorXd& energies, const std::vector<double>& times) {
  const auto nt = static_cast<Eigen::Index>(times.size());
  PhaseTable table{Eigen::MatrixXd(energies.size(), nt), Eigen::MatrixXd(energies.size(), nt)};
  for (Eigen::Index t = 0; t < nt; ++t) {
    for (Eigen::Index k = 0; k < energies.size(); ++k) {
      const double phase = units::to_rad_per_fs(energies(k)) * times[static_cast<std::size_t>(t)];
      table.cos(k, t) = std::cos(phase);
      table.sin(k, t) = std::sin(phase);
    }
  }
  return table;
}

Eigen::VectorXcd evaluate_pairs(const Eigen::MatrixXd& m, const PhaseTable& table) {
  const Eigen::MatrixXd mc = m * table.cos;
  const Eigen::MatrixXd ms = m * table.sin;
  Eigen::VectorXcd out(table.cos.cols());
  for (Eigen::Index t = 0; t < table.cos.cols(); ++t) {
    const double re = table.cos.col(t).dot(mc.col(t)) + table.sin.col(t).dot(ms.col(t));
    const double im = table.cos.col(t).dot(ms.col(t)) - table.sin.col(t).dot(mc.col(t));
    out(t) = {re, im};
  }
  return out;
}

Levels group_levels(const Eigen::VectorXd& energies, double tolerance) {
  const auto n = static_cast<std::size_t>(energies.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return energies(static_cast<Eigen::Index>(a)) < energies(static_cast<Eigen::Index>(b));
  });
  const double scale = std::max(1.0, energies.size() ? energies.cwiseAbs().maxCoeff() : 1.0);
  Levels out;
  out.level_of.assign(n, 0);
  for (std::size_t k : order) {
    const double e = energies(static_cast<Eigen::Index>(k));
    if (out.values.empty() || e - out.values.back() > tolerance * scale) out.values.push_back(e);
    out.level_of[k] = static_cast<int>(out.values.size() - 1);
  }
  return out;
}

}  // namespace vibwit::detail
