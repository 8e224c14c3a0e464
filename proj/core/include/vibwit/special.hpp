#pragma once

#include <complex>

namespace vibwit::special {

/// Dawson integral D(x) = exp(-x^2) * integral_0^x exp(t^2) dt.
double dawson(double x);

/// Imaginary error function erfi(y) = -i erf(i y). Throws NumericalError on overflow.
double erfi(double y);

/// erf evaluated on the imaginary axis, erf(i y) = i erfi(y).
std::complex<double> erf_imaginary(double y);

/// Time-ordered overlap factor of two interactions with the same Gaussian
/// pulse of width sigma (fs):
///   (1/2) exp(-sigma^2 (d1^2 + d2^2) / 2) (1 - erf(i sigma (d1 + d2) / 2)),
/// with detunings d1, d2 in rad/fs. Evaluated through the Dawson function so it
/// stays finite for any argument.
std::complex<double> ordered_overlap(double d1, double d2, double sigma);

}  // namespace vibwit::special
