#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace vibwit::detail {

struct PhaseTable {
  Eigen::MatrixXd cos;  // (states, times)
  Eigen::MatrixXd sin;
};

/// cos/sin of omega_k T for energies in cm^-1 and times in fs.
PhaseTable phase_table(const Eigen::VectorXd& energies, const std::vector<double>& times);

/// sum_{zz'} M(z,z') exp(-i(w_z - w_z')T) for every T on the table.
Eigen::VectorXcd evaluate_pairs(const Eigen::MatrixXd& m, const PhaseTable& table);

/// Groups nearly equal energies. level_of[n] indexes `values`.
struct Levels {
  std::vector<double> values;
  std::vector<int> level_of;
};

Levels group_levels(const Eigen::VectorXd& energies, double tolerance = 1e-8);

}  // namespace vibwit::detail
