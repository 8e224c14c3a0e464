#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <vibwit/errors.hpp>
#include <vibwit/special.hpp>

#include "oracles.hpp"

using namespace vibwit;
using boost::math::quadrature::gauss_kronrod;

namespace {

double dawson_quadrature(double x) {
  auto f = [x](double t) { return std::exp(t * t - x * x); };
  return gauss_kronrod<double, 61>::integrate(f, 0.0, x, 12, 1e-14);
}

}  // namespace

TEST(Dawson, MatchesQuadratureOfDefinition) {
  for (double x : {1e-6, 0.1, 0.5, 0.99, 1.0, 1.01, 1.5, 2.0, 3.0, 5.0, 8.0, 15.0, 25.0}) {
    EXPECT_NEAR(special::dawson(x), dawson_quadrature(x), 2e-14 * std::max(1.0, 1.0 / x)) << x;
  }
}

TEST(Dawson, ReferenceValues) {
  EXPECT_NEAR(special::dawson(1.0), 0.5380795069127684, 1e-15);
  EXPECT_NEAR(special::dawson(0.9241388730), 0.5410442246, 1e-10);
}

TEST(Dawson, OddAndContinuousAcrossBranches) {
  for (double x : {0.3, 1.0, 7.0, 1e4}) EXPECT_DOUBLE_EQ(special::dawson(-x), -special::dawson(x));
  EXPECT_NEAR(special::dawson(1.0 - 1e-12), special::dawson(1.0 + 1e-12), 1e-12);
  EXPECT_NEAR(special::dawson(50.0 * (1 - 1e-13)), special::dawson(50.0 * (1 + 1e-13)), 1e-12 * special::dawson(50.0));
  EXPECT_NEAR(special::dawson(49.999), 0.010002201325324773, 1e-12 * 0.01);
  EXPECT_NEAR(special::dawson(50.001), 0.010001801085085983, 1e-12 * 0.01);
  EXPECT_NEAR(special::dawson(20.0), 0.025031367926403672, 1e-13 * 0.025);
  EXPECT_NEAR(special::dawson(1e6) * 2e6, 1.0, 1e-12);
}

TEST(Erfi, ReferenceValuesAndOverflow) {
  EXPECT_NEAR(special::erfi(1.0), 1.6504257587975428, 1e-14);
  EXPECT_NEAR(special::erfi(0.5), 0.6149520946965110, 1e-15);
  EXPECT_DOUBLE_EQ(special::erfi(-2.0), -special::erfi(2.0));
  EXPECT_THROW(special::erfi(30.0), NumericalError);
  const auto z = special::erf_imaginary(1.0);
  EXPECT_EQ(z.real(), 0.0);
  EXPECT_DOUBLE_EQ(z.imag(), special::erfi(1.0));
}

TEST(OrderedOverlap, BroadbandLimitIsOneHalf) {
  const auto v = special::ordered_overlap(0.3, -0.7, 0.0);
  EXPECT_DOUBLE_EQ(v.real(), 0.5);
  EXPECT_DOUBLE_EQ(v.imag(), 0.0);
}

TEST(OrderedOverlap, MatchesNestedQuadrature) {
  const double cases[][3] = {{0.0, 0.0, 2.0}, {0.05, 0.02, 4.0}, {0.1, -0.03, 3.0},
                             {-0.08, -0.12, 1.5}, {0.3, 0.2, 5.0}, {0.02, 0.5, 2.5}};
  for (const auto& c : cases) {
    const auto exact = special::ordered_overlap(c[0], c[1], c[2]);
    const auto quad = oracle::ordered_overlap_quadrature(c[0], c[1], c[2]);
    EXPECT_NEAR(exact.real(), quad.real(), 1e-10) << c[0] << " " << c[1] << " " << c[2];
    EXPECT_NEAR(exact.imag(), quad.imag(), 1e-10) << c[0] << " " << c[1] << " " << c[2];
  }
}

TEST(OrderedOverlap, ComplementaryOrderingsSumToProductOfSpectra) {
  // ordered(d1, d2) + conj(ordered(d2, d1)) covers both time orderings.
  const double s = 3.0, d1 = 0.11, d2 = -0.04;
  const auto sum = special::ordered_overlap(d1, d2, s) + std::conj(special::ordered_overlap(d2, d1, s));
  EXPECT_NEAR(sum.real(), std::exp(-0.5 * s * s * (d1 * d1 + d2 * d2)), 1e-15);
  EXPECT_NEAR(sum.imag(), 0.0, 1e-15);
}

TEST(OrderedOverlap, FiniteForLargeArguments) {
  const auto v = special::ordered_overlap(40.0, 35.0, 20.0);
  EXPECT_TRUE(std::isfinite(v.real()));
  EXPECT_TRUE(std::isfinite(v.imag()));
  EXPECT_LT(std::abs(v), 1e-3);
}
