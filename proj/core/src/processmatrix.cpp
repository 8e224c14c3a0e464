#include "vibwit/processmatrix.hpp"

#include "detail.hpp"

#include <algorithm>
#include <cmath>

#include "vibwit/errors.hpp"
#include "vibwit/units.hpp"

namespace vibwit {

std::string to_string(ElectronicFrame frame) {
  switch (frame) {
    case ElectronicFrame::Site: return "site";
    case ElectronicFrame::Exciton: return "exciton";
    case ElectronicFrame::Polaron: return "polaron";
    case ElectronicFrame::Custom: return "custom";
  }
  return "custom";
}

ElectronicFrame parse_frame(const std::string& text) {
  if (text == "site") return ElectronicFrame::Site;
  if (text == "exciton") return ElectronicFrame::Exciton;
  if (text == "polaron") return ElectronicFrame::Polaron;
  if (text == "custom") return ElectronicFrame::Custom;
  throw ConfigError("unknown electronic basis: " + text);
}

Eigen::MatrixXcd frame_transform(const DimerModel& model, ElectronicFrame frame) {
  switch (frame) {
    case ElectronicFrame::Site: return Eigen::MatrixXcd::Identity(model.site_count, model.site_count);
    case ElectronicFrame::Exciton: return exciton_transform(model).transform.cast<cd>();
    case ElectronicFrame::Polaron:
    case ElectronicFrame::Custom: break;
  }
  throw ConfigError("frame '" + to_string(frame) + "' needs an explicit transform");
}

ProcessMatrix::ProcessMatrix(std::vector<double> times, int dim, ElectronicFrame frame, Eigen::MatrixXcd transform)
    : times_(std::move(times)), dim_(dim), frame_(frame), transform_(std::move(transform)) {
  const auto d = static_cast<std::size_t>(dim_);
  data_.assign(times_.size() * d * d * d * d, cd(0.0, 0.0));
}

ProcessMatrix ProcessMatrix::rotated(const Eigen::MatrixXcd& u, ElectronicFrame frame) const {
  if (u.rows() != dim_ || u.cols() != dim_) throw ConfigError("frame transform has the wrong size");
  if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim_, dim_)).cwiseAbs().maxCoeff() > 1e-10) {
    throw ConfigError("frame transform is not unitary");
  }
  // The stored tensor is in the frame transform_; go back to sites, then forward.
  const Eigen::MatrixXcd total = transform_.adjoint() * u;
  ProcessMatrix out(times_, dim_, frame, u);
  const int d = dim_;
  for (std::size_t t = 0; t < times_.size(); ++t) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) {
            cd acc(0.0, 0.0);
            for (int i = 0; i < d; ++i)
              for (int j = 0; j < d; ++j)
                for (int q = 0; q < d; ++q)
                  for (int p = 0; p < d; ++p) {
                    acc += std::conj(total(i, a)) * total(j, b) * total(q, c) * std::conj(total(p, e)) *
                           at(t, i, j, q, p);
                  }
            out.at(t, a, b, c, e) = acc;
          }
  }
  return out;
}

using detail::evaluate_pairs;
using detail::phase_table;
using detail::PhaseTable;

ProcessMatrix compute_chi(const VibronicSystem& sys, const std::vector<double>& times, ElectronicFrame frame,
                          const Eigen::MatrixXcd& transform) {
  for (double t : times) {
    if (!std::isfinite(t)) throw ConfigError("non-finite waiting time");
  }
  const int s = sys.sites();
  if (static_cast<int>(sys.site_vectors.size()) != s) throw ConfigError("mismatched truncations");
  for (const auto& v : sys.site_vectors) {
    if (v.rows() != sys.ground_energies.size() || v.cols() != sys.single_energies.size()) {
      throw ConfigError("mismatched truncations");
    }
  }

  const std::vector<int> active = sys.active_ground_states();
  std::vector<Eigen::MatrixXd> weighted(static_cast<std::size_t>(s));  // sqrt(p_n) V_q(n, :), active rows only
  for (int q = 0; q < s; ++q) {
    Eigen::MatrixXd w(static_cast<Eigen::Index>(active.size()), sys.single_energies.size());
    for (std::size_t r = 0; r < active.size(); ++r) {
      w.row(static_cast<Eigen::Index>(r)) =
          std::sqrt(sys.thermal.p(active[r])) * sys.site_vectors[static_cast<std::size_t>(q)].row(active[r]);
    }
    weighted[static_cast<std::size_t>(q)] = std::move(w);
  }

  const PhaseTable table = phase_table(sys.single_energies, times);
  ProcessMatrix chi(times, s, ElectronicFrame::Site, Eigen::MatrixXcd::Identity(s, s));
  auto key = [s](int i, int j, int q, int p) { return ((i * s + j) * s + q) * s + p; };
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      const Eigen::MatrixXd a = sys.site_vectors[static_cast<std::size_t>(i)].transpose() *
                                sys.site_vectors[static_cast<std::size_t>(j)];
      for (int q = 0; q < s; ++q)
        for (int p = 0; p < s; ++p) {
          // chi_ijqp = conj(chi_jipq): evaluate one member of each pair.
          if (key(j, i, p, q) < key(i, j, q, p)) continue;
          const Eigen::MatrixXd b = weighted[static_cast<std::size_t>(q)].transpose() *
                                    weighted[static_cast<std::size_t>(p)];
          const Eigen::VectorXcd values = evaluate_pairs(a.cwiseProduct(b), table);
          for (std::size_t t = 0; t < times.size(); ++t) {
            chi.at(t, i, j, q, p) = values(static_cast<Eigen::Index>(t));
            chi.at(t, j, i, p, q) = std::conj(values(static_cast<Eigen::Index>(t)));
          }
        }
    }

  if (frame == ElectronicFrame::Site && transform.size() == 0) return chi;
  const Eigen::MatrixXcd u = transform.size() == 0 ? frame_transform(sys.model, frame) : transform;
  return chi.rotated(u, frame);
}

double ChiInvariants::worst() const { return std::max({identity, hermiticity, trace}); }

ChiInvariants check_chi_invariants(const ProcessMatrix& chi) {
  ChiInvariants out;
  const int d = chi.dim();
  for (std::size_t t = 0; t < chi.times().size(); ++t) {
    const bool at_zero = chi.times()[t] == 0.0;
    for (int q = 0; q < d; ++q)
      for (int p = 0; p < d; ++p) {
        cd tr(0.0, 0.0);
        for (int i = 0; i < d; ++i) tr += chi.at(t, i, i, q, p);
        out.trace = std::max(out.trace, std::abs(tr - cd(q == p ? 1.0 : 0.0, 0.0)));
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            const cd v = chi.at(t, i, j, q, p);
            out.hermiticity = std::max(out.hermiticity, std::abs(v - std::conj(chi.at(t, j, i, p, q))));
            if (at_zero) {
              const double ideal = (i == q && j == p) ? 1.0 : 0.0;
              out.identity = std::max(out.identity, std::abs(v - ideal));
            }
          }
      }
  }
  return out;
}

std::vector<Eigen::MatrixXcd> propagate_density(const ProcessMatrix& chi, const Eigen::MatrixXcd& rho0) {
  const int d = chi.dim();
  if (rho0.rows() != d || rho0.cols() != d) throw ConfigError("initial density matrix has the wrong size");
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(chi.times().size());
  for (std::size_t t = 0; t < chi.times().size(); ++t) {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int q = 0; q < d; ++q)
          for (int p = 0; p < d; ++p) rho(i, j) += chi.at(t, i, j, q, p) * rho0(q, p);
    out.push_back(std::move(rho));
  }
  return out;
}

std::vector<Eigen::Vector3cd> frame_dipoles(const DimerModel& model, const Eigen::MatrixXcd& u) {
  const int d = model.site_count;
  std::vector<Eigen::Vector3cd> out(static_cast<std::size_t>(d), Eigen::Vector3cd::Zero());
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(a)] += std::conj(u(i, a)) * model.dipoles[i].cast<cd>();
  return out;
}

std::vector<Eigen::Vector3cd> frame_doubly_dipoles(const DimerModel& model, const Eigen::MatrixXcd& u) {
  const int d = model.site_count;
  std::vector<Eigen::Vector3cd> out(static_cast<std::size_t>(d), Eigen::Vector3cd::Zero());
  if (!model.has_doubly()) return out;
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(a)] += u(i, a) * model.doubly_dipole(i).cast<cd>();
  return out;
}

namespace {

SignalTrace make_trace(const std::vector<double>& times, const std::string& component) {
  SignalTrace t;
  t.axis_label = "T_fs";
  t.value_label = component;
  t.axis = times;
  t.real.assign(times.size(), 0.0);
  t.metadata["component"] = component;
  return t;
}

}  // namespace

PumpProbeSignal broadband_signal(const DimerModel& model, const ProcessMatrix& chi,
                                 const PolarizationSetting& polarization) {
  const int d = chi.dim();
  if (d != model.site_count) throw ConfigError("process matrix does not match the model");
  const auto mu = frame_dipoles(model, chi.transform());           // mu_ag
  const auto mu_f = frame_doubly_dipoles(model, chi.transform());  // mu_fa
  auto conj_vec = [](const Eigen::Vector3cd& v) { return Eigen::Vector3cd(v.conjugate()); };

  const auto& times = chi.times();
  PumpProbeSignal out{make_trace(times, "total"), make_trace(times, "SE"), make_trace(times, "ESA"),
                      make_trace(times, "GSB"), 0.0};

  cd gsb(0.0, 0.0);
  for (int i = 0; i < d; ++i)
    for (int p = 0; p < d; ++p) {
      gsb += polarization.weight(conj_vec(mu[static_cast<std::size_t>(i)]), mu[static_cast<std::size_t>(p)],
                                 conj_vec(mu[static_cast<std::size_t>(p)]), mu[static_cast<std::size_t>(i)]);
    }

  // Weights are time independent; contract them once.
  std::vector<cd> w_se(static_cast<std::size_t>(d * d * d * d)), w_esa(w_se.size());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) {
          const std::size_t k = static_cast<std::size_t>(((i * d + j) * d + q) * d + p);
          const auto& mi = mu[static_cast<std::size_t>(i)];
          const auto& mj = mu[static_cast<std::size_t>(j)];
          const auto& mq = mu[static_cast<std::size_t>(q)];
          const auto& mp = mu[static_cast<std::size_t>(p)];
          w_se[k] = polarization.weight(conj_vec(mi), mq, conj_vec(mp), mj);
          w_esa[k] = -polarization.weight(mu_f[static_cast<std::size_t>(i)], mq, conj_vec(mp),
                                          conj_vec(mu_f[static_cast<std::size_t>(j)]));
        }

  for (std::size_t t = 0; t < times.size(); ++t) {
    cd se(0.0, 0.0), esa(0.0, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int q = 0; q < d; ++q)
          for (int p = 0; p < d; ++p) {
            const std::size_t k = static_cast<std::size_t>(((i * d + j) * d + q) * d + p);
            const cd c = chi.at(t, i, j, q, p);
            se += w_se[k] * c;
            esa += w_esa[k] * c;
          }
    out.se.real[t] = se.real();
    out.esa.real[t] = esa.real();
    out.gsb.real[t] = gsb.real();
    out.total.real[t] = se.real() + esa.real() + gsb.real();
    out.max_imag = std::max({out.max_imag, std::abs(se.imag()), std::abs(esa.imag()), std::abs(gsb.imag())});
  }
  for (SignalTrace* trace : {&out.total, &out.se, &out.esa, &out.gsb}) {
    trace->metadata["sigma_fs"] = "0";
    trace->metadata["frame"] = to_string(chi.frame());
    trace->metadata["polarization"] = polarization.describe();
    trace->metadata["model"] = model.name;
  }
  return out;
}

}  // namespace vibwit
