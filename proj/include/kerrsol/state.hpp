#ifndef KERRSOL_STATE_HPP
#define KERRSOL_STATE_HPP

#include <Eigen/Dense>
#include <complex>

#include "kerrsol/config.hpp"
#include "kerrsol/grid.hpp"

namespace kerrsol {

// First and second cumulants of the discretized field in the spatial basis.
// The discrete modes b_k = sqrt(A*dx) a(x_k) carry unit commutators, so
//   mean_k   = <b_k>
//   c_norm   = <db_k^+ db_l>   (Hermitian, positive semidefinite)
//   m_anom   = <db_k  db_l>    (symmetric)
// are everything the Gaussian closure keeps. Values are immutable in spirit:
// the integrator produces fresh states, snapshots are deep copies.
struct GaussianFieldState {
  GridSpec grid;
  double time = 0.0;
  Eigen::VectorXcd mean;
  Eigen::MatrixXcd c_norm;
  Eigen::MatrixXcd m_anom;

  GaussianFieldState(const GridSpec& g, double t, Eigen::VectorXcd b,
                     Eigen::MatrixXcd c, Eigen::MatrixXcd m);

  /// Checks Hermiticity of c_norm, symmetry of m_anom and finiteness;
  /// throws std::runtime_error on violation.
  void check_structure(double rel_tol = 1e-12) const;

  /// Smallest eigenvalue of c_norm relative to trace/n (diagnostic).
  double min_cnorm_eigenvalue_rel() const;
};

/// Vacuum fluctuations on top of a zero mean field.
GaussianFieldState make_vacuum(const GridSpec& grid);

/// Displaced thermal state whose mean field is the classical fundamental
/// soliton, beta_k = sqrt(nbar*dx)*sech(xi_k), with c_norm = n_th*I and
/// m_anom = 0. Rejects grids shorter than ten pulse widths.
GaussianFieldState make_fundamental_soliton(const GridSpec& grid,
                                            const SimulationConfig& config);

/// Sum_k (|beta_k|^2 + C_kk); equals the windowed photon number over the
/// full band.
double total_photon_number(const GaussianFieldState& state);

}  // namespace kerrsol

#endif
