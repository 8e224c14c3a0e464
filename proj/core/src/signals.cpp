#include "vibwit/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detail.hpp"
#include "vibwit/errors.hpp"
#include "vibwit/special.hpp"
#include "vibwit/units.hpp"

namespace vibwit {

namespace {

using Kernel = std::vector<Eigen::MatrixXcd>;  // index a * sites + b

std::size_t idx4(int s, int a, int b, int c, int d) { return static_cast<std::size_t>(((a * s + b) * s + c) * s + d); }

void check_times(const std::vector<double>& times) {
  for (double t : times) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("waiting times must be non-negative");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw ConfigError("waiting times must be strictly increasing");
  }
}

std::vector<Vec3> site_dipoles(const DimerModel& model) {
  std::vector<Vec3> mu;
  for (int s = 0; s < model.site_count; ++s) mu.push_back(model.dipoles[s]);
  return mu;
}

std::vector<Vec3> site_doubly_dipoles(const DimerModel& model) {
  std::vector<Vec3> mu;
  if (!model.has_doubly()) return mu;
  for (int s = 0; s < model.site_count; ++s) mu.push_back(model.doubly_dipole(s));
  return mu;
}

/// Ground states grouped by energy, with the member rows of every level.
struct GroundLevels {
  detail::Levels levels;
  std::vector<std::vector<int>> members;
};

GroundLevels ground_levels(const VibronicSystem& sys) {
  GroundLevels g;
  g.levels = detail::group_levels(sys.ground_energies);
  g.members.resize(g.levels.values.size());
  for (std::size_t n = 0; n < g.levels.level_of.size(); ++n) {
    g.members[static_cast<std::size_t>(g.levels.level_of[n])].push_back(static_cast<int>(n));
  }
  return g;
}

/// K[a][b](r, c) = sum_zeta V_a(r, zeta) V_b(c, zeta) h(zeta, level(r), level(c)).
template <class H>
Kernel overlap_kernels(const VibronicSystem& sys, const GroundLevels& g, H&& h) {
  const int s = sys.sites();
  const auto rows = sys.ground_energies.size();
  const auto m = sys.single_energies.size();
  const std::size_t nl = g.levels.values.size();

  std::vector<std::vector<Eigen::MatrixXd>> gathered(static_cast<std::size_t>(s), std::vector<Eigen::MatrixXd>(nl));
  for (int a = 0; a < s; ++a) {
    for (std::size_t l = 0; l < nl; ++l) {
      Eigen::MatrixXd block(static_cast<Eigen::Index>(g.members[l].size()), m);
      for (std::size_t r = 0; r < g.members[l].size(); ++r) {
        block.row(static_cast<Eigen::Index>(r)) = sys.site_vectors[static_cast<std::size_t>(a)].row(g.members[l][r]);
      }
      gathered[static_cast<std::size_t>(a)][l] = std::move(block);
    }
  }

  Kernel k(static_cast<std::size_t>(s * s), Eigen::MatrixXcd::Zero(rows, rows));
  Eigen::VectorXcd hv(m);
  for (std::size_t lr = 0; lr < nl; ++lr) {
    for (std::size_t lc = 0; lc < nl; ++lc) {
      for (Eigen::Index z = 0; z < m; ++z) hv(z) = h(z, static_cast<int>(lr), static_cast<int>(lc));
      for (int a = 0; a < s; ++a) {
        const Eigen::MatrixXcd left = gathered[static_cast<std::size_t>(a)][lr].cast<cd>() * hv.asDiagonal();
        for (int b = 0; b < s; ++b) {
          const Eigen::MatrixXcd block = left * gathered[static_cast<std::size_t>(b)][lc].transpose().cast<cd>();
          auto& target = k[static_cast<std::size_t>(a * s + b)];
          for (std::size_t r = 0; r < g.members[lr].size(); ++r)
            for (std::size_t c = 0; c < g.members[lc].size(); ++c) {
              target(g.members[lr][r], g.members[lc][c]) =
                  block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
      }
    }
  }
  return k;
}

/// Thermal sums of the two GSB pathway families per ground level pair:
///   first(L, L')  = sum p_n w K'^{iq}(n', n) conj(K^{pj}(n, n'))   with phase exp(-i w_nn' T)
///   second(L, L') = sum p_n w K'^{iq}(n', n) K^{pj}(n, n')         with phase exp(+i w_nn' T)
/// where K' belongs to the probe, K to the pump, n lies in level L and n' in L'.
struct GsbSums {
  Eigen::MatrixXcd first;
  Eigen::MatrixXcd second;
};

GsbSums gsb_sums(const VibronicSystem& sys, const GroundLevels& g, const Kernel& probe, const Kernel& pump,
                 const std::vector<double>& w) {
  const int s = sys.sites();
  const std::size_t nl = g.levels.values.size();
  GsbSums out{Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nl), static_cast<Eigen::Index>(nl)),
              Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nl), static_cast<Eigen::Index>(nl))};
  const auto rows = sys.ground_energies.size();
  for (int n : sys.active_ground_states()) {
    const double pn = sys.thermal.p(n);
    const int ln = g.levels.level_of[static_cast<std::size_t>(n)];
    for (Eigen::Index np = 0; np < rows; ++np) {
      cd first(0.0, 0.0), second(0.0, 0.0);
      for (int i = 0; i < s; ++i)
        for (int q = 0; q < s; ++q) {
          const cd kp = probe[static_cast<std::size_t>(i * s + q)](np, n);
          if (kp == cd(0.0, 0.0)) continue;
          for (int p = 0; p < s; ++p)
            for (int j = 0; j < s; ++j) {
              const double weight = w[idx4(s, i, q, p, j)];
              if (weight == 0.0) continue;
              const cd k = pump[static_cast<std::size_t>(p * s + j)](n, np);
              first += weight * kp * std::conj(k);
              second += weight * kp * k;
            }
        }
      const int lnp = g.levels.level_of[static_cast<std::size_t>(np)];
      out.first(ln, lnp) += pn * first;
      out.second(ln, lnp) += pn * second;
    }
  }
  return out;
}

/// 2 Re sum_{LL'} [first e^{-i w T} + second e^{+i w T}], w = E_L - E_L'.
std::vector<double> gsb_trace(const GsbSums& sums, const GroundLevels& g, const std::vector<double>& times) {
  std::vector<double> out(times.size(), 0.0);
  const auto nl = static_cast<Eigen::Index>(g.levels.values.size());
  for (std::size_t t = 0; t < times.size(); ++t) {
    cd acc(0.0, 0.0);
    for (Eigen::Index a = 0; a < nl; ++a)
      for (Eigen::Index b = 0; b < nl; ++b) {
        const double w = units::to_rad_per_fs(g.levels.values[static_cast<std::size_t>(a)] -
                                              g.levels.values[static_cast<std::size_t>(b)]);
        const cd phase = std::polar(1.0, -w * times[t]);
        acc += sums.first(a, b) * phase + sums.second(a, b) * std::conj(phase);
      }
    out[t] = 2.0 * acc.real();
  }
  return out;
}

std::vector<double> gsb_weights(const std::vector<Vec3>& mu, const PolarizationSetting& pol) {
  const int s = static_cast<int>(mu.size());
  std::vector<double> w(static_cast<std::size_t>(s * s * s * s));
  for (int i = 0; i < s; ++i)
    for (int q = 0; q < s; ++q)
      for (int p = 0; p < s; ++p)
        for (int j = 0; j < s; ++j) {
          // probe couples i and q, pump couples p and j
          w[idx4(s, i, q, p, j)] = pol.weight(mu[static_cast<std::size_t>(i)], mu[static_cast<std::size_t>(p)],
                                              mu[static_cast<std::size_t>(j)], mu[static_cast<std::size_t>(q)]);
        }
  return w;
}

double detuning_rad(double transition, const PulseSpec& pulse) {
  return units::to_rad_per_fs(transition - pulse.carrier);
}

SignalTrace blank_trace(const std::vector<double>& times, const std::string& component) {
  SignalTrace t;
  t.axis_label = "T_fs";
  t.value_label = component;
  t.axis = times;
  t.real.assign(times.size(), 0.0);
  t.metadata["component"] = component;
  return t;
}

}  // namespace

PumpProbeSignal finite_pulse_pp(const VibronicSystem& sys, const PulseSpec& pump, const PulseSpec& probe,
                                const std::vector<double>& times, const PolarizationSetting& polarization) {
  pump.validate();
  probe.validate();
  check_times(times);
  if (sys.basis.levels < 2) throw ConfigError("non-positive truncation");
  const int s = sys.sites();
  const auto g_count = sys.ground_energies.size();
  const auto m_count = sys.single_energies.size();
  const std::vector<int> active = sys.active_ground_states();
  const auto mu = site_dipoles(sys.model);
  const auto mu_f = site_doubly_dipoles(sys.model);

  // Probe side, summed over all ground rows n'.
  Eigen::MatrixXd e_probe(g_count, m_count);
  for (Eigen::Index n = 0; n < g_count; ++n)
    for (Eigen::Index z = 0; z < m_count; ++z) {
      e_probe(n, z) = probe.spectral_amplitude(sys.single_energies(z) - sys.ground_energies(n));
    }
  // Pump side, thermally weighted rows n.
  std::vector<Eigen::MatrixXd> x(static_cast<std::size_t>(s));
  for (int q = 0; q < s; ++q) {
    Eigen::MatrixXd xq(static_cast<Eigen::Index>(active.size()), m_count);
    for (std::size_t r = 0; r < active.size(); ++r) {
      const int n = active[r];
      const double w = std::sqrt(sys.thermal.p(n));
      for (Eigen::Index z = 0; z < m_count; ++z) {
        xq(static_cast<Eigen::Index>(r), z) = w * sys.site_vectors[static_cast<std::size_t>(q)](n, z) *
                                              pump.spectral_amplitude(sys.single_energies(z) - sys.ground_energies(n));
      }
    }
    x[static_cast<std::size_t>(q)] = std::move(xq);
  }
  std::vector<Eigen::MatrixXd> b(static_cast<std::size_t>(s * s));
  for (int q = 0; q < s; ++q)
    for (int p = 0; p < s; ++p) b[static_cast<std::size_t>(q * s + p)] = x[q].transpose() * x[p];

  std::vector<Eigen::MatrixXd> y(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) y[static_cast<std::size_t>(i)] = sys.site_vectors[static_cast<std::size_t>(i)].cwiseProduct(e_probe);

  Eigen::MatrixXd c_se = Eigen::MatrixXd::Zero(m_count, m_count);
  Eigen::MatrixXd c_esa = Eigen::MatrixXd::Zero(m_count, m_count);
  std::vector<Eigen::MatrixXd> f;
  if (sys.has_doubly()) {
    const auto f_count = sys.doubly_energies.size();
    Eigen::MatrixXd e_f(f_count, m_count);
    for (Eigen::Index fm = 0; fm < f_count; ++fm)
      for (Eigen::Index z = 0; z < m_count; ++z) {
        e_f(fm, z) = probe.spectral_amplitude(sys.doubly_energies(fm) - sys.single_energies(z));
      }
    for (int i = 0; i < s; ++i) f.push_back(sys.doubly_transition(i).cwiseProduct(e_f));
  }
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      const Eigen::MatrixXd a_se = y[static_cast<std::size_t>(i)].transpose() * y[static_cast<std::size_t>(j)];
      Eigen::MatrixXd a_esa;
      if (!f.empty()) a_esa = f[static_cast<std::size_t>(i)].transpose() * f[static_cast<std::size_t>(j)];
      for (int q = 0; q < s; ++q)
        for (int p = 0; p < s; ++p) {
          const Eigen::MatrixXd& bqp = b[static_cast<std::size_t>(q * s + p)];
          const double w_se = polarization.weight(mu[static_cast<std::size_t>(i)], mu[static_cast<std::size_t>(q)],
                                                  mu[static_cast<std::size_t>(p)], mu[static_cast<std::size_t>(j)]);
          if (w_se != 0.0) c_se += w_se * a_se.cwiseProduct(bqp);
          if (!f.empty()) {
            const double w_esa =
                polarization.weight(mu_f[static_cast<std::size_t>(i)], mu[static_cast<std::size_t>(q)],
                                    mu[static_cast<std::size_t>(p)], mu_f[static_cast<std::size_t>(j)]);
            if (w_esa != 0.0) c_esa -= w_esa * a_esa.cwiseProduct(bqp);
          }
        }
    }

  const detail::PhaseTable table = detail::phase_table(sys.single_energies, times);
  const Eigen::VectorXcd se = detail::evaluate_pairs(c_se, table);
  const Eigen::VectorXcd esa = f.empty() ? Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(times.size()))
                                         : detail::evaluate_pairs(c_esa, table);

  // GSB: time-ordered overlap factors for each pulse, grouped by ground level.
  const GroundLevels g = ground_levels(sys);
  auto h_for = [&](const PulseSpec& pulse) {
    return [&, pulse](Eigen::Index z, int lr, int lc) {
      const double d1 = detuning_rad(sys.single_energies(z) - g.levels.values[static_cast<std::size_t>(lr)], pulse);
      const double d2 = detuning_rad(sys.single_energies(z) - g.levels.values[static_cast<std::size_t>(lc)], pulse);
      return pulse.strength * pulse.strength * special::ordered_overlap(d1, d2, pulse.sigma);
    };
  };
  const Kernel k_probe = overlap_kernels(sys, g, h_for(probe));
  const Kernel k_pump = overlap_kernels(sys, g, h_for(pump));
  const GsbSums sums = gsb_sums(sys, g, k_probe, k_pump, gsb_weights(mu, polarization));
  const std::vector<double> gsb = gsb_trace(sums, g, times);

  PumpProbeSignal out{blank_trace(times, "total"), blank_trace(times, "SE"), blank_trace(times, "ESA"),
                      blank_trace(times, "GSB"), 0.0};
  for (std::size_t t = 0; t < times.size(); ++t) {
    const auto ti = static_cast<Eigen::Index>(t);
    out.se.real[t] = se(ti).real();
    out.esa.real[t] = esa(ti).real();
    out.gsb.real[t] = gsb[t];
    out.total.real[t] = se(ti).real() + esa(ti).real() + gsb[t];
    out.max_imag = std::max({out.max_imag, std::abs(se(ti).imag()), std::abs(esa(ti).imag())});
    if (!std::isfinite(out.total.real[t])) throw NumericalError("non-finite pump-probe signal");
  }
  for (SignalTrace* trace : {&out.total, &out.se, &out.esa, &out.gsb}) {
    trace->metadata["sigma_pump_fs"] = format_double(pump.sigma);
    trace->metadata["sigma_probe_fs"] = format_double(probe.sigma);
    trace->metadata["polarization"] = polarization.describe();
    trace->metadata["model"] = sys.model.name;
    trace->metadata["levels"] = std::to_string(sys.basis.levels);
    trace->metadata["temperature_K"] = format_double(sys.thermal.temperature);
  }
  return out;
}

SignalTrace gsb_first_order(const VibronicSystem& sys, const PulseSpec& pump, const PulseSpec& probe,
                            const std::vector<double>& times, const PolarizationSetting& polarization) {
  check_times(times);
  const GroundLevels g = ground_levels(sys);
  const auto mu = site_dipoles(sys.model);
  const std::vector<double> w = gsb_weights(mu, polarization);
  constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;

  auto h0 = [](const PulseSpec& pulse) {
    return [lam2 = pulse.strength * pulse.strength](Eigen::Index, int, int) { return cd(0.5 * lam2, 0.0); };
  };
  // d h / d sigma at sigma = 0: -(i/2) lambda^2 (d1 + d2) / sqrt(pi)
  auto h1 = [&](const PulseSpec& pulse) {
    return [&, pulse](Eigen::Index z, int lr, int lc) {
      const double d1 = detuning_rad(sys.single_energies(z) - g.levels.values[static_cast<std::size_t>(lr)], pulse);
      const double d2 = detuning_rad(sys.single_energies(z) - g.levels.values[static_cast<std::size_t>(lc)], pulse);
      return cd(0.0, -0.5 * pulse.strength * pulse.strength * (d1 + d2) * inv_sqrt_pi);
    };
  };
  const Kernel probe0 = overlap_kernels(sys, g, h0(probe));
  const Kernel pump0 = overlap_kernels(sys, g, h0(pump));
  const Kernel probe1 = overlap_kernels(sys, g, h1(probe));
  const Kernel pump1 = overlap_kernels(sys, g, h1(pump));
  // Product rule on both pathway families.
  const GsbSums a = gsb_sums(sys, g, probe1, pump0, w);
  const GsbSums b = gsb_sums(sys, g, probe0, pump1, w);
  const GsbSums total{a.first + b.first, a.second + b.second};

  SignalTrace out = blank_trace(times, "GSB_first_order");
  out.real = gsb_trace(total, g, times);
  out.metadata["units"] = "signal per fs of sigma";
  out.metadata["polarization"] = polarization.describe();
  out.metadata["model"] = sys.model.name;
  return out;
}

std::vector<AbsorptionStick> absorption_sticks(const VibronicSystem& sys, double relative_cutoff) {
  const int s = sys.sites();
  const auto m_count = sys.single_energies.size();
  std::vector<AbsorptionStick> sticks;
  double largest = 0.0;
  for (int n : sys.active_ground_states()) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, m_count);
    for (int i = 0; i < s; ++i) d += sys.model.dipoles[i] * sys.site_vectors[static_cast<std::size_t>(i)].row(n);
    const Eigen::VectorXd strength = d.colwise().squaredNorm().transpose();
    for (Eigen::Index z = 0; z < m_count; ++z) {
      const double value = sys.thermal.p(n) * strength(z) / 3.0;
      largest = std::max(largest, value);
      sticks.push_back({sys.single_energies(z) - sys.ground_energies(n), value});
    }
  }
  std::erase_if(sticks, [&](const AbsorptionStick& st) { return st.intensity <= relative_cutoff * largest; });
  return sticks;
}

SignalTrace absorption_spectrum(const VibronicSystem& sys, const std::vector<double>& omega_grid, double line_width) {
  if (!(line_width > 0.0)) throw ConfigError("line width must be positive");
  const auto sticks = absorption_sticks(sys);
  SignalTrace out;
  out.axis_label = "omega_cm-1";
  out.value_label = "absorption";
  out.axis = omega_grid;
  out.real.assign(omega_grid.size(), 0.0);
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * line_width);
  for (std::size_t k = 0; k < omega_grid.size(); ++k) {
    double acc = 0.0;
    for (const auto& st : sticks) {
      const double u = (omega_grid[k] - st.omega) / line_width;
      if (std::abs(u) < 40.0) acc += st.intensity * std::exp(-0.5 * u * u);
    }
    out.real[k] = norm * acc;
  }
  out.metadata["line_width_cm-1"] = format_double(line_width);
  out.metadata["model"] = sys.model.name;
  out.metadata["orientation"] = "isotropic";
  out.validate();
  return out;
}

bool is_same_shape(const DimerModel& model) {
  return model.site_count == 2 && model.sites[0].omega == model.sites[1].omega &&
         model.sites[0].displacement == model.sites[1].displacement;
}

SignalTrace narrowband_se_check(const DimerModel& model, const PulseSpec& pump, const PulseSpec& probe,
                                const std::vector<double>& times, const PolarizationSetting& polarization,
                                double temperature, int levels) {
  if (!is_same_shape(model)) throw ConfigError("model not in the same-shape class");
  if (model.ground.displacement != std::array<double, 2>{0.0, 0.0}) {
    throw ConfigError("model not in the same-shape class: displaced ground surface");
  }
  if (levels < 2) throw ConfigError("levels per mode must be at least 2");
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  check_times(times);

  const ExcitonBasis ex = exciton_transform(model);
  const auto& wg = model.ground.omega;
  const auto& we = model.sites[0].omega;
  const auto& dd = model.sites[0].displacement;
  const int l = levels;
  const int vib = l * l;
  const Eigen::MatrixXd fx = fc_matrix_1d(wg[0], we[0], dd[0], l, l);
  const Eigen::MatrixXd fy = fc_matrix_1d(wg[1], we[1], dd[1], l, l);

  // Product-state overlaps <n | m> and analytic energies.
  Eigen::MatrixXd fc(vib, vib);
  Eigen::VectorXd e_ground(vib), e_vib(vib);
  for (int a = 0; a < l; ++a)
    for (int b = 0; b < l; ++b) {
      e_ground(a * l + b) = model.ground.energy_offset + wg[0] * (a + 0.5) + wg[1] * (b + 0.5);
      e_vib(a * l + b) = we[0] * (a + 0.5) + we[1] * (b + 0.5);
      for (int c = 0; c < l; ++c)
        for (int d = 0; d < l; ++d) fc(a * l + b, c * l + d) = fx(a, c) * fy(b, d);
    }
  const double kt = units::kBoltzmann * temperature;
  Eigen::VectorXd p = (-(e_ground.array() - e_ground.minCoeff()) / kt).exp().matrix();
  p /= p.sum();

  // zeta = (exciton a, vibrational m); omega_zeta = eps_a + e_m
  const int states = 2 * vib;
  Eigen::VectorXd omega(states);
  for (int a = 0; a < 2; ++a)
    for (int m = 0; m < vib; ++m) omega(a * vib + m) = ex.energies(a) + e_vib(m);

  // Electronic factor sum_{ijqp} w U_ia U_qa U_pa' U_ja'.
  Eigen::Matrix2d omega_el = Eigen::Matrix2d::Zero();
  const auto& u = ex.transform;
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int q = 0; q < 2; ++q)
            for (int pp = 0; pp < 2; ++pp) {
              omega_el(a, ap) += polarization.weight(model.dipoles[i], model.dipoles[q], model.dipoles[pp],
                                                     model.dipoles[j]) *
                                 u(i, a) * u(q, a) * u(pp, ap) * u(j, ap);
            }

  // Probe factor P(z, z') = sum_n' eps'(z,n') eps'(z',n') <n'|m><n'|m'>; pump factor likewise with p_n.
  Eigen::MatrixXd probe_amp(vib, states), pump_amp(vib, states);
  for (int n = 0; n < vib; ++n)
    for (int z = 0; z < states; ++z) {
      const int m = z % vib;
      const double transition = omega(z) - e_ground(n);
      probe_amp(n, z) = fc(n, m) * probe.spectral_amplitude(transition);
      pump_amp(n, z) = std::sqrt(p(n)) * fc(n, m) * pump.spectral_amplitude(transition);
    }
  const Eigen::MatrixXd probe_pair = probe_amp.transpose() * probe_amp;
  const Eigen::MatrixXd pump_pair = pump_amp.transpose() * pump_amp;
  Eigen::MatrixXd c(states, states);
  for (int z = 0; z < states; ++z)
    for (int zp = 0; zp < states; ++zp) {
      c(z, zp) = omega_el(z / vib, zp / vib) * probe_pair(z, zp) * pump_pair(z, zp);
    }
  const Eigen::VectorXcd values = detail::evaluate_pairs(c, detail::phase_table(omega, times));

  SignalTrace out = blank_trace(times, "SE");
  for (std::size_t t = 0; t < times.size(); ++t) out.real[t] = values(static_cast<Eigen::Index>(t)).real();
  out.metadata["method"] = "exciton-product";
  out.metadata["model"] = model.name;
  return out;
}

}  // namespace vibwit
