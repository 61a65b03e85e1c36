#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kerrsol/grid.hpp"

using namespace kerrsol;

TEST_CASE("grid invariants") {
  const GridSpec grid(200, 0.1);
  CHECK(grid.length() == doctest::Approx(20.0));
  // paper grid: bin spacing is 0.1*pi exactly (1 ulp)
  CHECK(grid.bin_spacing() == doctest::Approx(std::numbers::pi / 10.0).epsilon(1e-15));
  CHECK(grid.coordinate(100) == 0.0);
  CHECK(grid.coordinate(0) == doctest::Approx(-10.0));
  CHECK(grid.frequency(100) == 0.0);
  CHECK(grid.frequency(0) == doctest::Approx(-100 * grid.bin_spacing()));

  CHECK_THROWS_AS(GridSpec(7, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(201, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(200, 0.0), std::invalid_argument);
}

TEST_CASE("fft layout round trip") {
  const GridSpec grid(16, 0.5);
  for (int r = 0; r < 16; ++r) CHECK(grid.row_of_fft_index(grid.fft_index_of_row(r)) == r);
  CHECK(grid.fft_index_of_row(8) == 0);  // omega = 0 bin
}

TEST_CASE("window resolution uses the half-open rule") {
  const GridSpec grid(200, 0.1);
  const double d = grid.bin_spacing();

  // narrow mid interval resolves to exactly the central bin
  const SpectralWindow mid(-0.5 * d, 0.5 * d);
  const auto [a, b] = mid.resolve(grid);
  CHECK(a == 100);
  CHECK(b == 101);

  // endpoints exactly on bin frequencies: lo included, hi excluded
  const SpectralWindow on_bins(-d, d);
  const auto [a2, b2] = on_bins.resolve(grid);
  CHECK(a2 == 99);
  CHECK(b2 == 101);

  // symmetric window over bin midpoints resolves symmetrically
  const SpectralWindow sym(-1.5 * d, 1.5 * d);
  const auto [a3, b3] = sym.resolve(grid);
  CHECK(a3 == 99);
  CHECK(b3 == 102);

  CHECK_THROWS_AS(SpectralWindow(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralWindow(0.01 * d, 0.4 * d).resolve(grid), std::invalid_argument);
}
