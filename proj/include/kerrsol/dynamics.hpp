#ifndef KERRSOL_DYNAMICS_HPP
#define KERRSOL_DYNAMICS_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "kerrsol/config.hpp"
#include "kerrsol/fft.hpp"
#include "kerrsol/state.hpp"

namespace kerrsol {

// Generators of the Bogoliubov drift around the mean field. The dressing
// factors follow Gaussian factorization of the cubic and quartic terms
// (third and fourth cumulants dropped):
//   h_diag_k     = 2 g (|beta_k|^2 + sigma C_kk)
//   delta_diag_k = g (beta_k^2 + sigma M_kk)
// with sigma = 0 for the linearized closure and 1 for the self-consistent
// one. The factors are validated against the truncated-Fock oracle.
struct DriftCoefficients {
  Eigen::MatrixXcd h_linear;    // Hermitian single-particle part (kinetic)
  Eigen::VectorXd h_diag;       // real local Bogoliubov diagonal
  Eigen::VectorXcd delta_diag;  // local anomalous coupling
  double g = 0.0;
  int sigma = 0;
};

struct MomentDerivatives {
  Eigen::VectorXcd mean;
  Eigen::MatrixXcd c_norm;
  Eigen::MatrixXcd m_anom;
};

/// Kinetic generator (-1/2 discrete Laplacian) as a dense Hermitian matrix,
/// i.e. the spatial-basis image of the spectral diagonal omega_q^2/2.
Eigen::MatrixXcd kinetic_generator(const GridSpec& grid);

DriftCoefficients make_drift_coefficients(const GaussianFieldState& state,
                                          const SimulationConfig& config);

/// Full right-hand side of the cumulant evolution equations, with a caller
/// supplied single-particle generator. Signals non-finite input.
MomentDerivatives drift_rhs_general(const Eigen::VectorXcd& mean,
                                    const Eigen::MatrixXcd& c_norm,
                                    const Eigen::MatrixXcd& m_anom,
                                    const Eigen::MatrixXcd& h_linear, double g,
                                    int sigma, double gamma, double n_th);

/// Spec entry point: RHS for a state under the grid dynamics of config.
MomentDerivatives drift_rhs(const GaussianFieldState& state,
                            const SimulationConfig& config);

/// Dense classical RK4 on the moment equations (small systems: oracle
/// comparisons and convergence tests). Advances in place by steps*dt.
void evolve_moments_dense(Eigen::VectorXcd& mean, Eigen::MatrixXcd& c_norm,
                          Eigen::MatrixXcd& m_anom, const Eigen::MatrixXcd& h_linear,
                          double g, int sigma, double gamma, double n_th,
                          double dt, int steps);

using SnapshotCallback = std::function<void(const GaussianFieldState&)>;

// Strang split-step integrator: exact half-step of the kinetic+damping part
// in the frequency basis, classical RK4 full step of the local nonlinear
// part, second exact half-step. C is re-Hermitized and M re-symmetrized
// after every step; drift beyond tolerance or a relative photon-number jump
// > 1e-3 per step (after removing the exact damping factor) aborts.
class SplitStepIntegrator {
 public:
  SplitStepIntegrator(const GridSpec& grid, const SimulationConfig& config);

  GaussianFieldState step(const GaussianFieldState& state, double dt) const;

  /// Snapshots at t = 0, interval, 2*interval, ..., t_final. Adjacent
  /// linear half-steps between nonlinear steps are merged into full steps;
  /// the realized dt is interval/round(interval/config.dt).
  void evolve_with(const GaussianFieldState& initial, const SnapshotCallback& on_snapshot) const;
  std::vector<GaussianFieldState> evolve(const GaussianFieldState& initial) const;

  double realized_dt() const;

  static constexpr double symmetry_abort_tol = 1e-8;
  static constexpr double energy_jump_tol = 1e-3;

 private:
  struct Work;

  void linear_factors(double h, Eigen::VectorXcd& u, double& decay) const;
  void linear_substep(Eigen::VectorXcd& mean, Eigen::MatrixXcd& c,
                      Eigen::MatrixXcd& m, const Eigen::VectorXcd& u, double decay) const;
  void nonlinear_substep(Eigen::VectorXcd& mean, Eigen::MatrixXcd& c,
                         Eigen::MatrixXcd& m, double h, Work& w) const;
  void finish_step(Eigen::VectorXcd& mean, Eigen::MatrixXcd& c, Eigen::MatrixXcd& m,
                   double photons_before, double damp_duration, double time) const;

  GridSpec grid_;
  SimulationConfig config_;
  std::shared_ptr<SpectralTransform> transform_;
  Eigen::VectorXd omega_sq_;  // FFT layout
};

/// One Strang step under the grid dynamics of config (convenience wrapper).
GaussianFieldState step(const GaussianFieldState& state, double dt,
                        const SimulationConfig& config);

/// Full trajectory per config (convenience wrapper).
std::vector<GaussianFieldState> evolve(const GaussianFieldState& initial,
                                       const SimulationConfig& config);

}  // namespace kerrsol

#endif
