#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kerrsol/units.hpp"

using namespace kerrsol;

TEST_CASE("thermal occupation matches direct Bose-factor evaluation") {
  // independent evaluation of 1/(e^x - 1) at 1.5 um, 300 K
  const double omega = 2.0 * std::numbers::pi * 299792458.0 / 1.5e-6;
  const double x = 1.054571817e-34 * omega / (1.380649e-23 * 300.0);
  const double expected = 1.0 / std::expm1(x);
  const double got = thermal_occupation(1.5, 300.0);
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  // about 1.3e-14 for these inputs (not the 1e-16 the default config uses)
  CHECK(got > 1e-14);
  CHECK(got < 1.5e-14);
}

TEST_CASE("thermal occupation limits") {
  // T -> 0 underflows to an exact zero, never NaN
  const double cold = thermal_occupation(1.5, 1e-3);
  CHECK(cold == 0.0);
  CHECK_FALSE(std::isnan(thermal_occupation(0.01, 1.0)));

  // hbar*omega/(k_B T) = ln 2 gives exactly 1
  const double omega = 2.0 * std::numbers::pi * 299792458.0 / 1.5e-6;
  const double t_ln2 = 1.054571817e-34 * omega / (1.380649e-23 * std::numbers::ln2);
  CHECK(thermal_occupation(1.5, t_ln2) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(thermal_occupation(-1.0, 300.0), std::invalid_argument);
  CHECK_THROWS_AS(thermal_occupation(1.5, 0.0), std::invalid_argument);
}

TEST_CASE("kerr coefficient conversion") {
  CHECK(kerr_coefficient(0.0, 2e8, 6e6, 2.25, 8.854e-12) == 0.0);
  const double one = kerr_coefficient(1e-22, 2e8, 6e6, 2.25, 8.854e-12);
  const double two = kerr_coefficient(2e-22, 2e8, 6e6, 2.25, 8.854e-12);
  CHECK(two == doctest::Approx(2.0 * one).epsilon(1e-14));
  CHECK(one > 0.0);
  CHECK_THROWS_AS(kerr_coefficient(1e-22, 2e8, 6e6, 0.0, 8.854e-12),
                  std::invalid_argument);
}
