#include "vibwit/spectrum2d.hpp"

#include <cmath>
#include <numbers>

#include "vibwit/errors.hpp"
#include "vibwit/trace.hpp"
#include "vibwit/units.hpp"

namespace vibwit {

using cd = std::complex<double>;

std::complex<double> Spectrum2D::zero_frequency_integral() const {
  const double d_tau = 2.0 * std::numbers::pi / (static_cast<double>(tau.size()) * uniform_step(tau));
  const double d_t = 2.0 * std::numbers::pi / (static_cast<double>(t.size()) * uniform_step(t));
  return values.sum() * d_tau * d_t / (4.0 * std::numbers::pi * std::numbers::pi);
}

namespace {

void check_grid(const std::vector<double>& grid, const char* name) {
  if (grid.size() < 2) throw ConfigError(std::string(name) + " grid needs at least two points");
  if (grid.front() != 0.0) throw ConfigError(std::string(name) + " grid must start at zero");
  uniform_step(grid);
}

/// Frequencies (cm^-1, ascending) of the periodic grid conjugate to n samples spaced by step fs.
std::vector<double> conjugate_axis(std::size_t n, double step) {
  std::vector<double> out;
  const long half = static_cast<long>(n / 2);
  for (long k = -half; k < static_cast<long>(n) - half; ++k) {
    out.push_back(units::to_wavenumber(2.0 * std::numbers::pi * static_cast<double>(k) / (static_cast<double>(n) * step)));
  }
  return out;
}


}  // namespace

std::vector<Spectrum2D> rephasing_2des(const VibronicSystem& sys, const std::vector<double>& waiting_times,
                                       const std::vector<double>& tau, const std::vector<double>& t,
                                       double dephasing, const PolarizationSetting& polarization) {
  if (!(dephasing > 0.0)) throw ConfigError("dephasing must be positive");
  check_grid(tau, "tau");
  check_grid(t, "t");
  for (double w : waiting_times) {
    if (!(w >= 0.0)) throw ConfigError("waiting times must be non-negative");
  }
  const int s = sys.sites();
  const auto g_count = sys.ground_energies.size();
  const auto m_count = sys.single_energies.size();
  const auto f_count = sys.has_doubly() ? sys.doubly_energies.size() : Eigen::Index{0};
  const auto n_tau = static_cast<Eigen::Index>(tau.size());
  const auto n_t = static_cast<Eigen::Index>(t.size());
  const double step_tau = uniform_step(tau);
  const double step_t = uniform_step(t);

  const std::vector<int> active = sys.active_ground_states();

  // Nyquist check on every transition a pathway can reach with non-negligible
  // weight: thermal rows for tau, pump-prepared populations for t.
  {
    Eigen::MatrixXd amp2 = Eigen::MatrixXd::Zero(g_count, m_count);
    for (int i = 0; i < s; ++i) amp2 = amp2.cwiseMax(sys.site_vectors[static_cast<std::size_t>(i)].cwiseAbs2());
    Eigen::VectorXd p = Eigen::VectorXd::Zero(g_count);
    for (int n : active) p(n) = sys.thermal.p(n);
    const Eigen::VectorXd excited = amp2.transpose() * p;       // per single state
    const Eigen::VectorXd bleached = amp2 * excited;            // per ground state
    auto widest = [](const Eigen::MatrixXd& intensity, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
      const double cut = 1e-8 * std::max(1e-300, intensity.maxCoeff());
      double worst = 0.0;
      for (Eigen::Index r = 0; r < intensity.rows(); ++r)
        for (Eigen::Index c = 0; c < intensity.cols(); ++c) {
          if (intensity(r, c) > cut) worst = std::max(worst, std::abs(upper(c) - lower(r)));
        }
      return worst;
    };
    const double w_tau = widest(p.asDiagonal() * amp2, sys.ground_energies, sys.single_energies);
    double w_t = std::max(widest(amp2 * excited.asDiagonal(), sys.ground_energies, sys.single_energies),
                          widest(bleached.asDiagonal() * amp2, sys.ground_energies, sys.single_energies));
    if (f_count > 0) {
      Eigen::MatrixXd amp_f = Eigen::MatrixXd::Zero(f_count, m_count);
      for (int i = 0; i < s; ++i) amp_f = amp_f.cwiseMax(sys.doubly_transition(i).cwiseAbs2());
      w_t = std::max(w_t, widest(amp_f * excited.asDiagonal(), sys.doubly_energies, sys.single_energies));
    }
    const double nyq_tau = units::to_wavenumber(std::numbers::pi / step_tau);
    const double nyq_t = units::to_wavenumber(std::numbers::pi / step_t);
    if (w_tau >= nyq_tau || w_t >= nyq_t) {
      throw ConfigError("grid too coarse: transitions up to " + format_double(std::max(w_tau, w_t)) +
                        " cm^-1 exceed the Nyquist limit " + format_double(std::min(nyq_tau, nyq_t)) + " cm^-1");
    }
  }

  auto rad = [](double w) { return units::to_rad_per_fs(w); };
  const double gamma = rad(dephasing);

  std::vector<Spectrum2D> out(waiting_times.size());
  for (std::size_t w = 0; w < waiting_times.size(); ++w) {
    out[w].waiting_time = waiting_times[w];
    out[w].tau = tau;
    out[w].t = t;
    out[w].omega_tau = conjugate_axis(tau.size(), step_tau);
    out[w].omega_t = conjugate_axis(t.size(), step_t);
    out[w].time_domain = Eigen::MatrixXcd::Zero(n_tau, n_t);
  }

  // Lab directions and their weights.
  std::vector<std::pair<Vec3, Vec3>> directions;  // (pump side, probe side)
  if (polarization.isotropic) {
    for (const auto& u : icosahedral_directions()) directions.emplace_back(u, u);
  } else {
    directions.emplace_back(polarization.pump, polarization.probe);
  }
  const double dir_weight = 1.0 / static_cast<double>(directions.size());

  const Eigen::VectorXd& wz = sys.single_energies;
  const Eigen::VectorXd& wg = sys.ground_energies;
  std::vector<Eigen::MatrixXd> f_site;
  for (int i = 0; i < s && f_count > 0; ++i) f_site.push_back(sys.doubly_transition(i));

  for (const auto& [e1, e2] : directions) {
    Eigen::MatrixXd d1 = Eigen::MatrixXd::Zero(g_count, m_count);
    Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(g_count, m_count);
    Eigen::MatrixXd f2 = Eigen::MatrixXd::Zero(f_count, m_count);
    for (int i = 0; i < s; ++i) {
      d1 += sys.model.dipoles[i].dot(e1) * sys.site_vectors[static_cast<std::size_t>(i)];
      d2 += sys.model.dipoles[i].dot(e2) * sys.site_vectors[static_cast<std::size_t>(i)];
      if (f_count > 0) f2 += sys.model.doubly_dipole(i).dot(e2) * f_site[static_cast<std::size_t>(i)];
    }

    // Coherence-time factors of the excited-state pathways:
    // za(k, (z, z')) = A_tau(z', z) with A_tau(z', z) = sum_n p_n d1(n,z') d1(n,z) e^{i(w_z' - w_gn) tau}
    const Eigen::Index pairs = m_count * m_count;
    Eigen::MatrixXcd za(n_tau, pairs);
    for (Eigen::Index k = 0; k < n_tau; ++k) {
      const double tk = tau[static_cast<std::size_t>(k)];
      Eigen::MatrixXcd left = Eigen::MatrixXcd::Zero(g_count, m_count);  // p_n e^{-i w_gn tau} d1(n, z')
      for (int n : active) left.row(n) = sys.thermal.p(n) * std::polar(1.0, -rad(wg(n)) * tk) * d1.row(n).cast<cd>();
      Eigen::MatrixXcd a = left.transpose() * d1.cast<cd>();  // (z', z)
      for (Eigen::Index zp = 0; zp < m_count; ++zp) a.row(zp) *= std::polar(1.0, rad(wz(zp)) * tk);
      // store as (z, z') column-major vector: index z + z' * M
      za.row(k) = Eigen::Map<const Eigen::RowVectorXcd>(Eigen::MatrixXcd(a.transpose()).data(), pairs);
    }
    // Detection-time factors: B_t(z, z') = sum_n' d2(n',z) d2(n',z') e^{-i(w_z - w_gn') t}
    //                                  - sum_m f2(m,z) f2(m,z') e^{-i(w_fm - w_z') t}
    Eigen::MatrixXcd zb(pairs, n_t);
    for (Eigen::Index l = 0; l < n_t; ++l) {
      const double tl = t[static_cast<std::size_t>(l)];
      Eigen::MatrixXcd right = d2.cast<cd>();
      for (Eigen::Index n = 0; n < g_count; ++n) right.row(n) *= std::polar(1.0, rad(wg(n)) * tl);
      Eigen::MatrixXcd b = d2.transpose().cast<cd>() * right;  // (z, z')
      for (Eigen::Index z = 0; z < m_count; ++z) b.row(z) *= std::polar(1.0, -rad(wz(z)) * tl);
      if (f_count > 0) {
        Eigen::MatrixXcd fr = f2.cast<cd>();
        for (Eigen::Index m = 0; m < f_count; ++m) fr.row(m) *= std::polar(1.0, -rad(sys.doubly_energies(m)) * tl);
        Eigen::MatrixXcd esa = f2.transpose().cast<cd>() * fr;  // (z, z') without the w_z' phase
        for (Eigen::Index zp = 0; zp < m_count; ++zp) esa.col(zp) *= std::polar(1.0, rad(wz(zp)) * tl);
        b -= esa;
      }
      zb.col(l) = Eigen::Map<const Eigen::VectorXcd>(b.data(), pairs);
    }

    // GSB: sum_{n n''} p_n e^{-i(w_gn - w_gn'')T} G1_tau(n, n'') G2_t(n, n'')
    // G1_tau(n, n'') = sum_z' d1(n,z') d1(n'',z') e^{i(w_z' - w_gn) tau}
    // G2_t(n, n'')   = sum_z  d2(n,z)  d2(n'',z)  e^{-i(w_z - w_gn'') t}
    const Eigen::Index gpairs = g_count * g_count;
    Eigen::MatrixXcd ga(n_tau, gpairs);
    for (Eigen::Index k = 0; k < n_tau; ++k) {
      const double tk = tau[static_cast<std::size_t>(k)];
      Eigen::MatrixXcd left = d1.cast<cd>();
      for (Eigen::Index z = 0; z < m_count; ++z) left.col(z) *= std::polar(1.0, rad(wz(z)) * tk);
      Eigen::MatrixXcd g1 = left * d1.transpose().cast<cd>();  // (n, n'')
      for (Eigen::Index n = 0; n < g_count; ++n) g1.row(n) *= sys.thermal.p(n) * std::polar(1.0, -rad(wg(n)) * tk);
      ga.row(k) = Eigen::Map<const Eigen::RowVectorXcd>(g1.data(), gpairs);
    }
    Eigen::MatrixXcd gb(gpairs, n_t);
    for (Eigen::Index l = 0; l < n_t; ++l) {
      const double tl = t[static_cast<std::size_t>(l)];
      Eigen::MatrixXcd left = d2.cast<cd>();
      for (Eigen::Index z = 0; z < m_count; ++z) left.col(z) *= std::polar(1.0, -rad(wz(z)) * tl);
      Eigen::MatrixXcd g2 = left * d2.transpose().cast<cd>();  // (n, n'')
      for (Eigen::Index np = 0; np < g_count; ++np) g2.col(np) *= std::polar(1.0, rad(wg(np)) * tl);
      gb.col(l) = Eigen::Map<const Eigen::VectorXcd>(g2.data(), gpairs);
    }

    for (std::size_t w = 0; w < waiting_times.size(); ++w) {
      const double big_t = waiting_times[w];
      // e^{-i(w_z - w_z')T} on the (z, z') pair index z + z' M
      Eigen::VectorXcd phase(pairs);
      for (Eigen::Index zp = 0; zp < m_count; ++zp)
        for (Eigen::Index z = 0; z < m_count; ++z) phase(z + zp * m_count) = std::polar(1.0, -rad(wz(z) - wz(zp)) * big_t);
      Eigen::VectorXcd gphase(gpairs);
      for (Eigen::Index np = 0; np < g_count; ++np)
        for (Eigen::Index n = 0; n < g_count; ++n) gphase(n + np * g_count) = std::polar(1.0, -rad(wg(n) - wg(np)) * big_t);
      out[w].time_domain += dir_weight * ((za * phase.asDiagonal()) * zb + (ga * gphase.asDiagonal()) * gb);
    }
  }

  // Dephasing envelope and transform.
  for (auto& spec : out) {
    for (Eigen::Index k = 0; k < n_tau; ++k)
      for (Eigen::Index l = 0; l < n_t; ++l) {
        const double a = tau[static_cast<std::size_t>(k)];
        const double b = t[static_cast<std::size_t>(l)];
        spec.time_domain(k, l) *= std::exp(-0.5 * gamma * gamma * (a * a + b * b));
      }
    Eigen::MatrixXcd e_tau(n_tau, n_tau), e_t(n_t, n_t);
    for (Eigen::Index a = 0; a < n_tau; ++a)
      for (Eigen::Index k = 0; k < n_tau; ++k) {
        e_tau(a, k) = step_tau * std::polar(1.0, -rad(spec.omega_tau[static_cast<std::size_t>(a)]) * tau[static_cast<std::size_t>(k)]);
      }
    for (Eigen::Index l = 0; l < n_t; ++l)
      for (Eigen::Index b = 0; b < n_t; ++b) {
        e_t(l, b) = step_t * std::polar(1.0, rad(spec.omega_t[static_cast<std::size_t>(b)]) * t[static_cast<std::size_t>(l)]);
      }
    spec.values = e_tau * spec.time_domain * e_t;
    spec.metadata["waiting_time_fs"] = format_double(spec.waiting_time);
    spec.metadata["dephasing_cm-1"] = format_double(dephasing);
    spec.metadata["polarization"] = polarization.describe();
    spec.metadata["model"] = sys.model.name;
    spec.metadata["levels"] = std::to_string(sys.basis.levels);
  }
  return out;
}

}  // namespace vibwit
