#include <gtest/gtest.h>

#include <cmath>

#include <vibwit/errors.hpp>
#include <vibwit/units.hpp>
#include <vibwit/vibronic.hpp>

#include "oracles.hpp"

using namespace vibwit;

TEST(Basis, IndexRoundTrip) {
  const VibronicBasis b(5, {100.0, 100.0});
  for (int flat = 0; flat < 2 * b.vib_size(); ++flat) {
    const auto [m, nx, ny] = b.unpack(flat);
    EXPECT_EQ(b.index(m, nx, ny), flat);
  }
  EXPECT_EQ(b.index(1, 2, 3), 25 + 13);
  EXPECT_THROW(VibronicBasis(1, {100.0, 100.0}), ConfigError);
}

TEST(FranckCondon, MatchesQuadrature) {
  const double cases[][3] = {{100.0, 100.0, 0.0}, {100.0, 200.0, 1.0}, {100.0, 50.0, -2.0},
                             {150.0, 100.0, 0.7}, {100.0, 150.0, 2.0}, {200.0, 100.0, -1.3}};
  for (const auto& c : cases) {
    const Eigen::MatrixXd fc = fc_matrix_1d(c[0], c[1], c[2], 11, 11);
    for (int m = 0; m <= 10; m += 2)
      for (int n = 0; n <= 10; n += 3) {
        EXPECT_NEAR(fc(m, n), oracle::fc_quadrature(c[0], c[1], c[2], m, n), 1e-10)
            << c[0] << " " << c[1] << " " << c[2] << " " << m << " " << n;
      }
  }
}

TEST(FranckCondon, SingleEntryAgreesWithMatrix) {
  const Eigen::MatrixXd fc = fc_matrix_1d(100.0, 170.0, 0.8, 6, 7);
  EXPECT_DOUBLE_EQ(fc_overlap_1d(100.0, 170.0, 0.8, 4, 5), fc(4, 5));
}

TEST(FranckCondon, UndisplacedEqualFrequencyIsIdentity) {
  EXPECT_TRUE(fc_matrix_1d(120.0, 120.0, 0.0, 8, 8).isIdentity(1e-14));
}

TEST(FranckCondon, PoissonProgressionForPureDisplacement) {
  const double d = 1.2;
  const double s = 0.5 * d * d;
  const Eigen::MatrixXd fc = fc_matrix_1d(100.0, 100.0, d, 1, 12);
  double factorial = 1.0;
  for (int n = 0; n < 12; ++n) {
    if (n > 0) factorial *= n;
    EXPECT_NEAR(fc(0, n) * fc(0, n), std::exp(-s) * std::pow(s, n) / factorial, 1e-14) << n;
  }
}

TEST(FranckCondon, RowsAreNormalizedInTheCompleteLimit) {
  const Eigen::MatrixXd fc = fc_matrix_1d(100.0, 200.0, 1.0, 6, 120);
  for (int m = 0; m < 6; ++m) EXPECT_NEAR(fc.row(m).squaredNorm(), 1.0, 1e-12) << m;
}

TEST(ModeHamiltonian, ReferenceOscillatorIsDiagonal) {
  const Eigen::MatrixXd h = mode_hamiltonian(100.0, 100.0, 0.0, 6);
  Eigen::VectorXd expected(6);
  for (int n = 0; n < 6; ++n) expected(n) = 100.0 * (n + 0.5);
  EXPECT_TRUE(h.isApprox(Eigen::MatrixXd(expected.asDiagonal()), 1e-14));
}

TEST(ModeHamiltonian, DisplacedOscillatorKeepsItsLadder) {
  const Eigen::MatrixXd h = mode_hamiltonian(100.0, 100.0, 1.0, 40);
  EXPECT_TRUE(h.isApprox(h.transpose()));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(es.eigenvalues()(n), 100.0 * (n + 0.5), 1e-9);
}

TEST(ModeHamiltonian, StiffenedOscillatorConverges) {
  const Eigen::MatrixXd h = mode_hamiltonian(100.0, 200.0, 0.0, 60);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(es.eigenvalues()(n), 200.0 * (n + 0.5), 1e-8);
}

TEST(Manifold, MonomerWithoutDisplacementIsOffsetGround) {
  auto m = make_preset("monomer");
  m.sites[0].displacement = {0.0, 0.0};
  m.sites[0].omega = m.ground.omega;
  const VibronicBasis b(4, m.ground.omega);
  const Eigen::MatrixXd h = assemble_manifold_hamiltonian(m, b, Manifold::Single);
  const Eigen::MatrixXd g = assemble_manifold_hamiltonian(m, b, Manifold::Ground);
  EXPECT_TRUE(h.isApprox(g + m.sites[0].energy_offset * Eigen::MatrixXd::Identity(16, 16), 1e-14));
  EXPECT_TRUE(h.isDiagonal());
}

TEST(Manifold, DimerCouplingBlocks) {
  const auto m = make_preset("coherent-dimer");
  const VibronicBasis b(3, m.ground.omega);
  const Eigen::MatrixXd h = assemble_manifold_hamiltonian(m, b, Manifold::Single);
  ASSERT_EQ(h.rows(), 18);
  EXPECT_TRUE(h.isApprox(h.transpose()));
  EXPECT_TRUE(h.block(0, 9, 9, 9).isApprox(100.0 * Eigen::MatrixXd::Identity(9, 9)));
  EXPECT_EQ(electronic_states(m, Manifold::Doubly), 1);
  EXPECT_EQ(electronic_states(make_preset("monomer"), Manifold::Doubly), 0);
}

TEST(Manifold, NonSymmetricHamiltonianRejected) {
  Eigen::MatrixXd h(2, 2);
  h << 1.0, 2.0, 0.0, 1.0;
  EXPECT_THROW(diagonalize_manifold(h), ConfigError);
}

TEST(Manifold, EigenvectorPhaseConvention) {
  const auto m = make_preset("coherent-dimer");
  const VibronicBasis b(4, m.ground.omega);
  const auto es = diagonalize_manifold(assemble_manifold_hamiltonian(m, b, Manifold::Single), Manifold::Single, 2);
  for (Eigen::Index c = 0; c < es.vectors.cols(); ++c) {
    Eigen::Index row = 0;
    es.vectors.col(c).cwiseAbs().maxCoeff(&row);
    EXPECT_GT(es.vectors(row, c), 0.0);
  }
}

TEST(Thermal, BoltzmannRatiosAndNormalization) {
  const auto sys = build_vibronic_system(make_preset("monomer"), 6, 273.0);
  const auto& p = sys.thermal.p;
  EXPECT_NEAR(p.sum(), 1.0, 1e-14);
  const double kt = units::kBoltzmann * 273.0;
  const double ratio = p(1) / p(0);
  EXPECT_NEAR(ratio, std::exp(-(sys.ground_energies(1) - sys.ground_energies(0)) / kt), 1e-13);
  EXPECT_GT(sys.thermal.tail_mass, 0.0);
  const auto bigger = build_vibronic_system(make_preset("monomer"), 10, 273.0);
  EXPECT_LT(bigger.thermal.tail_mass, sys.thermal.tail_mass);
}

TEST(Thermal, ZeroTemperatureSelectsGroundState) {
  const auto sys = build_vibronic_system(make_preset("monomer"), 4, 0.0);
  EXPECT_DOUBLE_EQ(sys.thermal.p(0), 1.0);
  EXPECT_DOUBLE_EQ(sys.thermal.p.sum(), 1.0);
  EXPECT_EQ(sys.active_ground_states().size(), 1u);
  EXPECT_THROW(build_vibronic_system(make_preset("monomer"), 4, -1.0), ConfigError);
}

TEST(System, SiteVectorsAreOrthonormalColumns) {
  const auto sys = build_vibronic_system(make_preset("coherent-dimer"), 4, 273.0);
  const Eigen::MatrixXd stacked = [&] {
    Eigen::MatrixXd s(32, 32);
    s << sys.site_vectors[0], sys.site_vectors[1];
    return s;
  }();
  EXPECT_TRUE((stacked.transpose() * stacked).isIdentity(1e-12));
  EXPECT_EQ(sys.doubly_energies.size(), 16);
  EXPECT_TRUE((sys.doubly_overlap.transpose() * sys.doubly_overlap).isIdentity(1e-12));
}

TEST(System, ShiftedSiteEnergiesMatchRebuild) {
  const auto model = make_preset("coherent-dimer");
  const auto base = build_vibronic_system(model, 5, 273.0);
  const auto shifted = shift_site_energies(base, -260.0, -230.0);
  auto m2 = model;
  m2.sites[0].energy_offset = -260.0;
  m2.sites[1].energy_offset = -230.0;
  m2.apply_surface_rule();
  const auto rebuilt = build_vibronic_system(m2, 5, 273.0);
  EXPECT_TRUE(shifted.single_energies.isApprox(rebuilt.single_energies, 1e-12));
  EXPECT_TRUE(shifted.doubly_energies.isApprox(rebuilt.doubly_energies, 1e-12));
  for (int s = 0; s < 2; ++s) {
    EXPECT_TRUE(shifted.site_vectors[s].cwiseAbs().isApprox(rebuilt.site_vectors[s].cwiseAbs(), 1e-9));
  }
  EXPECT_DOUBLE_EQ(shifted.model.doubly.energy_offset, -490.0);
}

TEST(Convergence, GateDetectsUnderResolvedTruncation) {
  const auto model = make_preset("coherent-dimer");
  EXPECT_FALSE(check_convergence(model, 4, 0.1, 10).converged);
  const int n = converged_levels(model, 8, 18, 0.1, 10);
  EXPECT_GE(n, 10);
  EXPECT_TRUE(check_convergence(model, n, 0.1, 10).converged);
  EXPECT_THROW(converged_levels(model, 3, 4, 1e-9, 10), NumericalError);
}
