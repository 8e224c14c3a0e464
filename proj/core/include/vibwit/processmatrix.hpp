#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "vibwit/ensemble.hpp"
#include "vibwit/trace.hpp"
#include "vibwit/vibronic.hpp"

namespace vibwit {

enum class ElectronicFrame { Site, Exciton, Polaron, Custom };

std::string to_string(ElectronicFrame frame);
ElectronicFrame parse_frame(const std::string& text);

/// Columns are the frame states expressed in the site basis.
Eigen::MatrixXcd frame_transform(const DimerModel& model, ElectronicFrame frame);

using cd = std::complex<double>;

/// chi_ijqp(T) over the single-excitation electronic states.
class ProcessMatrix {
 public:
  ProcessMatrix(std::vector<double> times, int dim, ElectronicFrame frame, Eigen::MatrixXcd transform);

  const std::vector<double>& times() const { return times_; }
  int dim() const { return dim_; }
  ElectronicFrame frame() const { return frame_; }
  const Eigen::MatrixXcd& transform() const { return transform_; }

  cd& at(std::size_t t, int i, int j, int q, int p) { return data_[offset(t, i, j, q, p)]; }
  cd at(std::size_t t, int i, int j, int q, int p) const { return data_[offset(t, i, j, q, p)]; }

  /// Same process in another frame; `transform` maps site states to the new
  /// states (columns), as returned by frame_transform.
  ProcessMatrix rotated(const Eigen::MatrixXcd& transform, ElectronicFrame frame) const;

 private:
  std::size_t offset(std::size_t t, int i, int j, int q, int p) const {
    const auto d = static_cast<std::size_t>(dim_);
    return (((t * d + static_cast<std::size_t>(i)) * d + static_cast<std::size_t>(j)) * d +
            static_cast<std::size_t>(q)) * d + static_cast<std::size_t>(p);
  }

  std::vector<double> times_;
  int dim_;
  ElectronicFrame frame_;
  Eigen::MatrixXcd transform_;
  std::vector<cd> data_;
};

/// chi from the vibronic eigenbasis, evaluated on `times` and expressed in
/// the frame given by `transform` (identity for the site frame).
ProcessMatrix compute_chi(const VibronicSystem& sys, const std::vector<double>& times,
                          ElectronicFrame frame = ElectronicFrame::Site,
                          const Eigen::MatrixXcd& transform = Eigen::MatrixXcd());

struct ChiInvariants {
  double identity = 0.0;     // max |chi(0) - delta delta| (0 if T = 0 is not on the grid)
  double hermiticity = 0.0;  // max |chi_ijqp - conj(chi_jipq)|
  double trace = 0.0;        // max |sum_i chi_iiqp - delta_qp|
  double worst() const;
};

ChiInvariants check_chi_invariants(const ProcessMatrix& chi);

/// rho_el(T)_ij = sum_qp chi_ijqp(T) rho_qp(0).
std::vector<Eigen::MatrixXcd> propagate_density(const ProcessMatrix& chi, const Eigen::MatrixXcd& rho0);

/// Ground-to-single dipoles of the frame states, mu_ag = sum_i conj(U_ia) mu_i.
std::vector<Eigen::Vector3cd> frame_dipoles(const DimerModel& model, const Eigen::MatrixXcd& transform);
/// Single-to-doubly dipoles of the frame states, mu_fa = sum_i U_ia mu_fi.
std::vector<Eigen::Vector3cd> frame_doubly_dipoles(const DimerModel& model, const Eigen::MatrixXcd& transform);

struct PumpProbeSignal {
  SignalTrace total;
  SignalTrace se;
  SignalTrace esa;
  SignalTrace gsb;
  double max_imag = 0.0;  // largest imaginary residual of the assembled sums
};

/// Broadband (sigma -> 0) pump-probe signal from chi with unit field strength.
PumpProbeSignal broadband_signal(const DimerModel& model, const ProcessMatrix& chi,
                                 const PolarizationSetting& polarization);

}  // namespace vibwit
