#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <tuple>

#include "vibwit/model.hpp"

namespace vibwit {

enum class Manifold { Ground, Single, Doubly };

std::string to_string(Manifold manifold);

/// Product basis |m, n_x, n_y> of ground-surface oscillator states, truncated
/// at `levels` quanta per mode. Flat index = m * N^2 + n_x * N + n_y.
struct VibronicBasis {
  int levels = 10;
  std::array<double, 2> omega_ref{100.0, 100.0};

  VibronicBasis() = default;
  VibronicBasis(int levels, const std::array<double, 2>& omega_ref);

  int vib_size() const { return levels * levels; }
  int index(int electronic, int nx, int ny) const { return electronic * vib_size() + nx * levels + ny; }
  std::tuple<int, int, int> unpack(int flat) const;
};

/// Electronic state count of a manifold for the given model.
int electronic_states(const DimerModel& model, Manifold manifold);

/// One-mode block omega_g (n + 1/2) + (omega^2 - omega_g^2)/(2 omega_g) q^2
/// - (omega^2 d / omega_g) q + omega^2 d^2 / (2 omega_g) in the ground
/// oscillator basis; q is the dimensionless coordinate.
Eigen::MatrixXd mode_hamiltonian(double omega_ref, double omega, double displacement, int levels);

Eigen::MatrixXd assemble_manifold_hamiltonian(const DimerModel& model, const VibronicBasis& basis, Manifold manifold);

struct ManifoldEigensystem {
  Manifold manifold = Manifold::Ground;
  int electronic = 1;
  Eigen::VectorXd energies;  // ascending, cm^-1
  Eigen::MatrixXd vectors;   // columns are eigenstates in the product basis
};

/// Full symmetric eigendecomposition. The largest-magnitude component of each
/// eigenvector is made positive.
ManifoldEigensystem diagonalize_manifold(const Eigen::MatrixXd& hamiltonian, Manifold manifold = Manifold::Ground,
                                         int electronic = 1);

/// Overlap of the n_a-th state of oscillator (omega_a, origin 0) with the
/// n_b-th state of oscillator (omega_b, origin d / sqrt(omega_a)).
double fc_overlap_1d(double omega_a, double omega_b, double displacement, int n_a, int n_b);

/// All overlaps for n_a < rows, n_b < cols.
Eigen::MatrixXd fc_matrix_1d(double omega_a, double omega_b, double displacement, int rows, int cols);

struct ThermalWeights {
  double temperature = 0.0;
  Eigen::VectorXd p;
  double tail_mass = 0.0;  // Boltzmann mass lost to the truncation
};

ThermalWeights thermal_weights(const ManifoldEigensystem& ground, double temperature,
                               const std::array<double, 2>& ground_omega);

/// Everything the signal code needs, expressed with ground vibrational
/// eigenstates as the reference rows.
struct VibronicSystem {
  DimerModel model;
  VibronicBasis basis;
  ThermalWeights thermal;
  Eigen::VectorXd ground_energies;
  Eigen::VectorXd single_energies;
  Eigen::VectorXd doubly_energies;
  /// site_vectors[s](n, zeta) = <s, nu_n^(g) | zeta>
  std::vector<Eigen::MatrixXd> site_vectors;
  /// doubly_overlap(n, m) = <nu_n^(g) | nu_m^(f)>
  Eigen::MatrixXd doubly_overlap;

  int sites() const { return model.site_count; }
  bool has_doubly() const { return doubly_energies.size() > 0; }

  /// Indices of ground states whose weight exceeds the thermal cutoff.
  std::vector<int> active_ground_states() const;

  /// <f, m | mu . e | zeta> contribution per site: F_s = doubly_overlap^T * site_vectors[s].
  Eigen::MatrixXd doubly_transition(int site) const;
};

VibronicSystem build_vibronic_system(const DimerModel& model, int levels, double temperature);

/// Same model with the single-excitation site energies replaced; the doubly
/// manifold is shifted rigidly, so only the single manifold is re-diagonalized.
VibronicSystem shift_site_energies(const VibronicSystem& base, double e10, double e01);

struct ConvergenceReport {
  int levels = 0;
  double max_shift = 0.0;  // cm^-1, over the compared eigenvalues of the single and doubly manifolds
  bool converged = false;
};

ConvergenceReport check_convergence(const DimerModel& model, int levels, double tolerance, int count);

/// Smallest N in [start, limit] that passes the convergence gate; throws
/// NumericalError if none does.
int converged_levels(const DimerModel& model, int start, int limit, double tolerance, int count);

}  // namespace vibwit
