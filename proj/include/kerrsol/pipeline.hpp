#ifndef KERRSOL_PIPELINE_HPP
#define KERRSOL_PIPELINE_HPP

#include <Eigen/Dense>
#include <functional>
#include <numbers>
#include <vector>

#include "kerrsol/config.hpp"
#include "kerrsol/optimizer.hpp"
#include "kerrsol/spectral.hpp"

namespace kerrsol {

/// Half-width of the narrow-band intervals (one frequency bin on the
/// default 200 x 0.1 grid).
inline constexpr double default_narrow_half_width = 0.05 * std::numbers::pi;

// Per-bin and pairwise narrow-band statistics of one snapshot. Entries are
// NaN where a denominator vanishes; pair maps are NaN on overlapping bins.
struct NarrowScan {
  Eigen::VectorXd eta11;
  Eigen::MatrixXd eta12;
  Eigen::MatrixXd eta_tilde12;
  Eigen::MatrixXd tau_tilde12;
  double max_eta11 = 0.0;
  double max_abs_eta12 = 0.0;
  double min_eta_tilde12 = 0.0;
  double min_tau_tilde12 = 0.0;
};

NarrowScan narrow_scan(const SpectralMoments& spec,
                       double half_width = default_narrow_half_width,
                       bool want_maps = false);

struct PipelineOptions {
  bool sym_single = true;
  bool sym_eta = true;
  bool sym_tau = true;
  bool asym_eta = true;
  bool asym_tau = false;
  bool pair_extrema = false;     // narrow-bin pairwise extrema per snapshot
  bool physicality = false;      // smallest c_norm eigenvalue per snapshot
  int coarsening = 2;
  double narrow_half_width = default_narrow_half_width;
  std::function<void(int index, double time)> progress;
};

// Everything the sweep reports and the acceptance suite asserts, gathered
// in one streaming pass over a run.
struct RunTrajectory {
  std::vector<double> times;
  std::vector<double> total_photons;
  double initial_total = 0.0;
  Eigen::VectorXd freqs;
  Eigen::MatrixXd eta11_surface;  // times x bins
  std::vector<double> eta11_mid;  // narrow mid-band interval
  std::vector<double> omega0;
  std::vector<double> min_eigenvalue_rel;
  std::vector<double> narrow_min_eta_tilde;
  std::vector<double> narrow_min_tau_tilde;
  std::vector<double> narrow_max_abs_eta12;
  std::vector<double> narrow_max_eta11;
  std::vector<WindowSearchResult> sym_single;
  std::vector<WindowSearchResult> sym_eta;
  std::vector<WindowSearchResult> sym_tau;
  std::vector<WindowSearchResult> asym_eta;
  std::vector<WindowSearchResult> asym_tau;

  int index_of_time(double t, double tol = 1e-6) const;
};

/// Evolves the soliton under the config and analyzes every snapshot.
RunTrajectory analyze_run(const SimulationConfig& config,
                          const PipelineOptions& options = {});

/// Argmin over a trajectory column; returns (index, value).
std::pair<int, double> trajectory_min(const std::vector<double>& values);

// Validation gate for the Gaussian moment equations against the
// truncated-Fock oracle: exact-linear regimes, the weak-Kerr regime, and
// the measured convergence order of the closure error in g.
struct OracleValidation {
  struct Case {
    std::string name;
    double dev_mean = 0.0;
    double dev_c = 0.0;
    double dev_m = 0.0;
    double max_deviation = 0.0;
    double bound = 0.0;
    bool pass = false;
  };
  std::vector<Case> cases;
  std::vector<double> sweep_g;
  std::vector<double> sweep_dev;
  double measured_order = 0.0;
  bool monotone = false;
  bool pass = false;
};

OracleValidation run_oracle_validation();

}  // namespace kerrsol

#endif
