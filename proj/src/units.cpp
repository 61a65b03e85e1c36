#include "kerrsol/units.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kerrsol {

double thermal_occupation(double wavelength_um, double temperature_K) {
  if (wavelength_um <= 0.0) throw std::invalid_argument("wavelength must be positive");
  if (temperature_K <= 0.0) throw std::invalid_argument("temperature must be positive");

  const double lambda_m = wavelength_um * 1e-6;
  const double omega_c = 2.0 * std::numbers::pi * constants::c_light / lambda_m;
  const double x = constants::hbar * omega_c / (constants::k_boltzmann * temperature_K);

  // 1/(e^x - 1) = 1/expm1(x); expm1 overflows to +inf for large x, and
  // 1/inf is an exact 0 rather than a NaN.
  return 1.0 / std::expm1(x);
}

double kerr_coefficient(double chi3, double v_gr, double k_c, double eps_r,
                        double eps_0) {
  if (eps_r <= 0.0 || eps_0 <= 0.0) throw std::invalid_argument("permittivities must be positive");
  return 3.0 * chi3 * constants::hbar * (v_gr * k_c) * (v_gr * k_c) /
         (4.0 * eps_r * eps_r * eps_0);
}

}  // namespace kerrsol
