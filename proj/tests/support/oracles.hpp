#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

#include <vibwit/model.hpp>
#include <vibwit/processmatrix.hpp>

// Reference implementations that share no numerical code with the library.
namespace vibwit::oracle {

/// <n_a; omega_a, origin 0 | n_b; omega_b, origin d / sqrt(omega_a)> by
/// adaptive Gauss-Kronrod quadrature of Hermite functions.
double fc_quadrature(double omega_a, double omega_b, double d, int n_a, int n_b);

/// integral dt1 g(t1) e^{-i d1 t1} integral_{t2 < t1} dt2 g(t2) e^{+i d2 t2}
/// for a unit-area Gaussian g of width sigma, by nested quadrature.
std::complex<double> ordered_overlap_quadrature(double d1, double d2, double sigma);

/// chi_ijqp(T) from exp(-iHT) (|q><p| x rho_g) exp(iHT) traced over the
/// vibrations. H is built from position-operator matrices in the ground
/// oscillator basis with `levels` quanta per mode.
ProcessMatrix brute_force_chi(const DimerModel& model, int levels, double temperature,
                              const std::vector<double>& times);

/// Monte-Carlo average of (a.z)(b.z)(c.z)(d.z) over uniformly random z.
double zzzz_monte_carlo(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, int samples,
                        std::uint64_t seed);

/// Tr[rho_thermal exp(dg (b^dag - b))] for one mode in a truncated basis.
double displacement_thermal_trace(double omega, double dg, double temperature, int levels);

}  // namespace vibwit::oracle
