#include "vibwit/vibronic.hpp"

#include <algorithm>
#include <cmath>

#include "vibwit/defaults.hpp"
#include "vibwit/errors.hpp"
#include "vibwit/units.hpp"

namespace vibwit {

std::string to_string(Manifold manifold) {
  switch (manifold) {
    case Manifold::Ground: return "ground";
    case Manifold::Single: return "single";
    case Manifold::Doubly: return "doubly";
  }
  throw ConfigError("unknown manifold label");
}

VibronicBasis::VibronicBasis(int levels_, const std::array<double, 2>& omega_ref_)
    : levels(levels_), omega_ref(omega_ref_) {
  if (levels < 2) throw ConfigError("levels per mode must be at least 2");
  if (!(omega_ref[0] > 0.0) || !(omega_ref[1] > 0.0)) throw ConfigError("non-positive frequency in basis");
}

std::tuple<int, int, int> VibronicBasis::unpack(int flat) const {
  const int m = flat / vib_size();
  const int rest = flat % vib_size();
  return {m, rest / levels, rest % levels};
}

int electronic_states(const DimerModel& model, Manifold manifold) {
  switch (manifold) {
    case Manifold::Ground: return 1;
    case Manifold::Single: return model.site_count;
    case Manifold::Doubly: return model.has_doubly() ? 1 : 0;
  }
  throw ConfigError("unknown manifold label");
}

Eigen::MatrixXd mode_hamiltonian(double omega_ref, double omega, double displacement, int levels) {
  const int n = levels;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd q2 = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    q2(k, k) = (2.0 * k + 1.0) / 2.0;
    if (k + 1 < n) q(k, k + 1) = q(k + 1, k) = std::sqrt((k + 1) / 2.0);
    if (k + 2 < n) q2(k, k + 2) = q2(k + 2, k) = std::sqrt((k + 1.0) * (k + 2.0)) / 2.0;
  }
  const double w2 = omega * omega;
  Eigen::MatrixXd h = (w2 - omega_ref * omega_ref) / (2.0 * omega_ref) * q2 - (w2 * displacement / omega_ref) * q;
  for (int k = 0; k < n; ++k) h(k, k) += omega_ref * (k + 0.5) + w2 * displacement * displacement / (2.0 * omega_ref);
  return h;
}

namespace {

Eigen::MatrixXd surface_block(const HarmonicSurface& s, const VibronicBasis& basis) {
  const int n = basis.levels;
  const Eigen::MatrixXd hx = mode_hamiltonian(basis.omega_ref[0], s.omega[0], s.displacement[0], n);
  const Eigen::MatrixXd hy = mode_hamiltonian(basis.omega_ref[1], s.omega[1], s.displacement[1], n);
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (hx(a, b) != 0.0) block.block(a * n, b * n, n, n).diagonal().array() += hx(a, b);
    }
    block.block(a * n, a * n, n, n) += hy;
  }
  block.diagonal().array() += s.energy_offset;
  return block;
}

}  // namespace

Eigen::MatrixXd assemble_manifold_hamiltonian(const DimerModel& model, const VibronicBasis& basis, Manifold manifold) {
  const int v = basis.vib_size();
  switch (manifold) {
    case Manifold::Ground: return surface_block(model.ground, basis);
    case Manifold::Doubly:
      if (!model.has_doubly()) throw ConfigError("monomer has no doubly excited manifold");
      return surface_block(model.doubly, basis);
    case Manifold::Single: {
      const int s = model.site_count;
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(s * v, s * v);
      for (int m = 0; m < s; ++m) h.block(m * v, m * v, v, v) = surface_block(model.sites[m], basis);
      if (s == 2) {
        h.block(0, v, v, v).diagonal().setConstant(model.coupling);
        h.block(v, 0, v, v).diagonal().setConstant(model.coupling);
      }
      return h;
    }
  }
  throw ConfigError("unknown manifold label");
}

ManifoldEigensystem diagonalize_manifold(const Eigen::MatrixXd& hamiltonian, Manifold manifold, int electronic) {
  if (hamiltonian.rows() != hamiltonian.cols()) throw ConfigError("Hamiltonian must be square");
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  if ((hamiltonian - hamiltonian.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ConfigError("Hamiltonian is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian);
  if (solver.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  ManifoldEigensystem out;
  out.manifold = manifold;
  out.electronic = electronic;
  out.energies = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    Eigen::Index row = 0;
    out.vectors.col(c).cwiseAbs().maxCoeff(&row);
    if (out.vectors(row, c) < 0.0) out.vectors.col(c) *= -1.0;
  }
  return out;
}

Eigen::MatrixXd fc_matrix_1d(double omega_a, double omega_b, double displacement, int rows, int cols) {
  if (!(omega_a > 0.0) || !(omega_b > 0.0)) throw ConfigError("non-positive frequency in Franck-Condon overlap");
  if (rows < 1 || cols < 1) throw ConfigError("Franck-Condon table needs at least one row and column");
  const double shift = displacement / std::sqrt(omega_a);  // origin of b in scaled coordinates
  const double r = std::sqrt(omega_a / omega_b);
  const double cp = 0.5 * (r + 1.0 / r);
  const double cm = 0.5 * (r - 1.0 / r);
  const double ka = std::sqrt(omega_a / 2.0) * shift;
  const double kb = std::sqrt(omega_b / 2.0) * shift;

  Eigen::MatrixXd I = Eigen::MatrixXd::Zero(rows, cols);
  const double reduced = omega_a * omega_b / (omega_a + omega_b);
  I(0, 0) = std::sqrt(2.0 * std::sqrt(omega_a * omega_b) / (omega_a + omega_b)) * std::exp(-0.5 * reduced * shift * shift);
  for (int n = 0; n + 1 < cols; ++n) {
    const double prev = n > 0 ? I(0, n - 1) : 0.0;
    I(0, n + 1) = -(ka * I(0, n) + cm * std::sqrt(static_cast<double>(n)) * prev) / (cp * std::sqrt(n + 1.0));
  }
  for (int m = 0; m + 1 < rows; ++m) {
    for (int n = 0; n < cols; ++n) {
      double acc = kb * I(m, n);
      if (n > 0) acc += std::sqrt(static_cast<double>(n)) * I(m, n - 1);
      if (m > 0) acc += cm * std::sqrt(static_cast<double>(m)) * I(m - 1, n);
      I(m + 1, n) = acc / (cp * std::sqrt(m + 1.0));
    }
  }
  return I;
}

double fc_overlap_1d(double omega_a, double omega_b, double displacement, int n_a, int n_b) {
  if (n_a < 0 || n_b < 0) throw ConfigError("negative vibrational quantum number");
  return fc_matrix_1d(omega_a, omega_b, displacement, n_a + 1, n_b + 1)(n_a, n_b);
}

ThermalWeights thermal_weights(const ManifoldEigensystem& ground, double temperature,
                               const std::array<double, 2>& ground_omega) {
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw ConfigError("temperature must be non-negative");
  if (temperature == 0.0) {
    ThermalWeights out;
    out.p = Eigen::VectorXd::Zero(ground.energies.size());
    Eigen::Index lowest = 0;
    ground.energies.minCoeff(&lowest);
    out.p(lowest) = 1.0;
    return out;
  }
  const double kt = units::kBoltzmann * temperature;
  const double e0 = ground.energies.minCoeff();
  ThermalWeights out;
  out.temperature = temperature;
  out.p = (-(ground.energies.array() - e0) / kt).exp().matrix();
  const double kept = out.p.sum();
  // The untruncated ground surface is a pair of harmonic oscillators, so the
  // full partition function relative to the zero-point level is analytic.
  double full = 1.0;
  for (double w : ground_omega) full /= -std::expm1(-w / kt);
  out.tail_mass = std::max(0.0, 1.0 - kept / full);
  out.p /= kept;
  return out;
}

std::vector<int> VibronicSystem::active_ground_states() const {
  std::vector<int> out;
  const double pmax = thermal.p.maxCoeff();
  for (Eigen::Index n = 0; n < thermal.p.size(); ++n) {
    if (thermal.p(n) > defaults::kThermalCutoff * pmax) out.push_back(static_cast<int>(n));
  }
  return out;
}

Eigen::MatrixXd VibronicSystem::doubly_transition(int site) const {
  return doubly_overlap.transpose() * site_vectors[static_cast<std::size_t>(site)];
}

namespace {

void fill_single(VibronicSystem& sys, const Eigen::MatrixXd& ground_vectors) {
  const ManifoldEigensystem single = diagonalize_manifold(
      assemble_manifold_hamiltonian(sys.model, sys.basis, Manifold::Single), Manifold::Single, sys.model.site_count);
  const int v = sys.basis.vib_size();
  sys.single_energies = single.energies;
  sys.site_vectors.assign(static_cast<std::size_t>(sys.model.site_count), Eigen::MatrixXd());
  for (int s = 0; s < sys.model.site_count; ++s) {
    sys.site_vectors[static_cast<std::size_t>(s)] = ground_vectors.transpose() * single.vectors.middleRows(s * v, v);
  }
}

}  // namespace

VibronicSystem build_vibronic_system(const DimerModel& model, int levels, double temperature) {
  model.validate();
  VibronicSystem sys;
  sys.model = model;
  sys.basis = VibronicBasis(levels, model.ground.omega);
  const ManifoldEigensystem ground =
      diagonalize_manifold(assemble_manifold_hamiltonian(model, sys.basis, Manifold::Ground), Manifold::Ground, 1);
  sys.ground_energies = ground.energies;
  sys.thermal = thermal_weights(ground, temperature, model.ground.omega);
  fill_single(sys, ground.vectors);
  if (model.has_doubly()) {
    const ManifoldEigensystem doubly =
        diagonalize_manifold(assemble_manifold_hamiltonian(model, sys.basis, Manifold::Doubly), Manifold::Doubly, 1);
    sys.doubly_energies = doubly.energies;
    sys.doubly_overlap = ground.vectors.transpose() * doubly.vectors;
  }
  return sys;
}

VibronicSystem shift_site_energies(const VibronicSystem& base, double e10, double e01) {
  VibronicSystem sys = base;
  const double d10 = e10 - base.model.sites[0].energy_offset;
  const double d01 = base.model.site_count == 2 ? e01 - base.model.sites[1].energy_offset : 0.0;
  sys.model.sites[0].energy_offset = e10;
  if (base.model.site_count == 2) {
    sys.model.sites[1].energy_offset = e01;
    sys.model.doubly.energy_offset += d10 + d01;
    sys.doubly_energies.array() += d10 + d01;
  }
  // Ground eigenvectors are recovered from the ground Hamiltonian, which the
  // shift leaves untouched.
  const ManifoldEigensystem ground = diagonalize_manifold(
      assemble_manifold_hamiltonian(sys.model, sys.basis, Manifold::Ground), Manifold::Ground, 1);
  fill_single(sys, ground.vectors);
  return sys;
}

namespace {

Eigen::VectorXd lowest(const DimerModel& model, int levels, Manifold manifold, int count) {
  VibronicBasis basis(levels, model.ground.omega);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(assemble_manifold_hamiltonian(model, basis, manifold),
                                                        Eigen::EigenvaluesOnly);
  const Eigen::Index k = std::min<Eigen::Index>(count, solver.eigenvalues().size());
  return solver.eigenvalues().head(k);
}

}  // namespace

ConvergenceReport check_convergence(const DimerModel& model, int levels, double tolerance, int count) {
  ConvergenceReport report;
  report.levels = levels;
  std::vector<Manifold> manifolds{Manifold::Single};
  if (model.has_doubly()) manifolds.push_back(Manifold::Doubly);
  for (Manifold m : manifolds) {
    const Eigen::VectorXd a = lowest(model, levels, m, count);
    const Eigen::VectorXd b = lowest(model, levels + 2, m, count);
    const Eigen::Index k = std::min(a.size(), b.size());
    report.max_shift = std::max(report.max_shift, (a.head(k) - b.head(k)).cwiseAbs().maxCoeff());
  }
  report.converged = report.max_shift < tolerance;
  return report;
}

int converged_levels(const DimerModel& model, int start, int limit, double tolerance, int count) {
  for (int n = start; n <= limit; ++n) {
    if (check_convergence(model, n, tolerance, count).converged) return n;
  }
  throw NumericalError("no truncation up to " + std::to_string(limit) + " levels meets the convergence gate");
}

}  // namespace vibwit
