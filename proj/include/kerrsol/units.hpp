#ifndef KERRSOL_UNITS_HPP
#define KERRSOL_UNITS_HPP

namespace kerrsol {

// CODATA 2018 values, SI.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J / K
inline constexpr double c_light = 299792458.0;       // m / s
}  // namespace constants

/// Mean reservoir occupation [exp(hbar*omega_c/(k_B T)) - 1]^-1 at the
/// carrier frequency omega_c = 2*pi*c/lambda. Underflows to exact 0 for
/// large exponents instead of producing NaN or Inf.
double thermal_occupation(double wavelength_um, double temperature_K);

/// Kerr constant 3*chi3*hbar*(v_gr*k_c)^2 / (4*eps_r^2*eps0). Utility
/// converter only; the dimensionless dynamics are parametrized by nbar.
double kerr_coefficient(double chi3, double v_gr, double k_c, double eps_r,
                        double eps_0);

}  // namespace kerrsol

#endif
