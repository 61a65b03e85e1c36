#ifndef KERRSOL_FOCK_HPP
#define KERRSOL_FOCK_HPP

#include <Eigen/Dense>
#include <vector>

namespace kerrsol {

// Brute-force master-equation integrator on a truncated multimode Fock
// space; the independent ground truth for the Gaussian moment equations.
// Small systems only: the Hilbert dimension (cutoff+1)^n_modes is capped.

struct FockConfig {
  int n_modes = 1;
  int cutoff = 10;          // max photons per mode
  double kerr_g = 0.0;      // local (g/2) b+b+bb strength
  double hop_j = 0.0;       // kinetic coupling between adjacent modes
  double pair_kappa = 0.0;  // quadratic pair coupling b+b+ + bb (state prep)
  double gamma = 0.0;
  double n_th = 0.0;
  double dt = 1e-3;

  void validate() const;
  int dim() const;
};

struct DensityState {
  double time = 0.0;
  Eigen::MatrixXcd rho;
};

struct FockMoments {
  Eigen::VectorXcd mean;
  Eigen::MatrixXcd c_norm;
  Eigen::MatrixXcd m_anom;
};

class FockOracle {
 public:
  explicit FockOracle(const FockConfig& cfg);

  const FockConfig& config() const { return cfg_; }
  int dim() const { return dim_; }
  int occupation(int basis_index, int mode) const;

  DensityState coherent_state(const Eigen::VectorXcd& alphas) const;
  DensityState thermal_state(double nbar) const;

  /// One classical 4th-order step of dt. Aborts when the top Fock layer
  /// population exceeds 1e-6 (raise the cutoff).
  DensityState lindblad_step(const DensityState& state) const;
  /// Advances by round(t/dt) steps.
  DensityState evolve(const DensityState& state, double t) const;

  FockMoments moments_of(const DensityState& state) const;

  /// <N_A>, <N_A N_B> and normally ordered products for mode subsets; all
  /// number operators are diagonal in the Fock basis.
  double expected_number(const DensityState& state, const std::vector<int>& modes) const;
  double number_product(const DensityState& state, const std::vector<int>& modes_a,
                        const std::vector<int>& modes_b) const;
  double normally_ordered_number_product(const DensityState& state,
                                         const std::vector<int>& modes_a,
                                         const std::vector<int>& modes_b) const;

  double trace(const DensityState& state) const;
  double top_layer_population(const DensityState& state) const;

  /// Dense Hamiltonian matrix (test cross-checks via matrix exponentiation).
  Eigen::MatrixXcd hamiltonian_dense() const;

  static constexpr double cutoff_population_tol = 1e-6;

 private:
  struct Terms;

  void rhs(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const;

  FockConfig cfg_;
  int dim_;
  std::vector<int> strides_;
  Eigen::MatrixXi digits_;       // dim x n_modes occupation table
  std::vector<int> top_layer_;   // basis states touching the cutoff
};

struct GaussianComparison {
  double dev_mean = 0.0;
  double dev_c = 0.0;
  double dev_m = 0.0;
  double max_deviation = 0.0;
};

/// Runs the oracle and the Gaussian moment engine from the same initial
/// coherent state and reports the worst moment deviation over the horizon
/// (max over samples, each family scaled by max(|moment|_inf, 1)).
GaussianComparison compare_with_gaussian(const FockConfig& cfg,
                                         const Eigen::VectorXcd& alphas,
                                         double horizon, int sigma = 1,
                                         int samples = 8);

}  // namespace kerrsol

#endif
