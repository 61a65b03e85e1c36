#ifndef KERRSOL_CONFIG_HPP
#define KERRSOL_CONFIG_HPP

#include <iosfwd>
#include <string>

#include "kerrsol/grid.hpp"

namespace kerrsol {

enum class Closure { linearized, self_consistent };

const char* to_string(Closure c);
Closure closure_from_string(const std::string& s);

// Dimensionless run parameters. Times are in units of the dispersion time
// t_d, the damping rate enters as gamma*t_d, and nbar sets the photon scale
// (initial pulse photon number 2*nbar).
struct SimulationConfig {
  int n_points = 200;
  double dx = 0.1;
  double nbar = 1e9;
  double gamma_td = 0.0;
  double n_th = 1e-16;
  Closure closure = Closure::self_consistent;
  double dt = 1e-3;
  double t_final = 16.0;
  double snapshot_interval = 0.1;

  GridSpec grid() const { return GridSpec(n_points, dx); }

  /// Nonlinear coupling of the discrete unit-commutator modes (focusing).
  double coupling_g() const { return -1.0 / (nbar * dx); }

  /// Validates the parameters required for time evolution; throws
  /// std::invalid_argument naming the offending key.
  void validate() const;
};

/// Parses a flat key=value file ('#' starts a comment). Unknown or missing
/// keys are reported by name with their line number.
SimulationConfig load_config(const std::string& path);
SimulationConfig parse_config(std::istream& in, const std::string& origin);

/// Canonical key=value rendering (stable key order, used for hashing and
/// manifests).
std::string canonical_config_text(const SimulationConfig& cfg);

/// FNV-1a hash of the canonical text, as fixed-width hex.
std::string config_hash(const SimulationConfig& cfg);

}  // namespace kerrsol

#endif
