#ifndef KERRSOL_SPECTRAL_HPP
#define KERRSOL_SPECTRAL_HPP

#include <Eigen/Dense>
#include <optional>

#include "kerrsol/grid.hpp"
#include "kerrsol/state.hpp"

namespace kerrsol {

// Moments rotated to an orthonormal mode basis (the discrete frequency
// basis for grid states), with the per-bin photon numbers and the pairwise
// normally ordered number covariance
//   cov_nn(q,q') = 2 Re[b_q conj(b_q') c_f(q,q')]
//                + 2 Re[conj(b_q b_q') m_f(q,q')]
//                + |c_f(q,q')|^2 + |m_f(q,q')|^2
// evaluated by Wick's theorem for Gaussian states. Rows are in ascending
// frequency order. Immutable after construction; all statistics are pure
// functions over it.
class SpectralMoments {
 public:
  /// Unitary DFT of a grid state (kernel exp(+i omega_q xi_k)/sqrt(n)).
  static SpectralMoments from_state(const GaussianFieldState& state);

  /// Direct construction in a caller-defined mode basis (oracle checks).
  static SpectralMoments from_moments(Eigen::VectorXd freqs, Eigen::VectorXcd mean,
                                      Eigen::MatrixXcd c, Eigen::MatrixXcd m,
                                      double time = 0.0);

  int size() const { return static_cast<int>(freqs_.size()); }
  double time() const { return time_; }
  const Eigen::VectorXd& freqs() const { return freqs_; }
  const Eigen::VectorXcd& mean_f() const { return mean_; }
  const Eigen::MatrixXcd& c_f() const { return c_; }
  const Eigen::MatrixXcd& m_f() const { return m_; }
  const Eigen::VectorXd& n_per_bin() const { return n_; }
  const Eigen::MatrixXd& cov_nn() const { return cov_; }
  /// Sum of n_per_bin (equals the source-state photon number by unitarity).
  double total_photons() const { return n_total_; }

  /// Bin range [first, last) of a window under the half-open rule.
  std::pair<int, int> resolve(const SpectralWindow& w) const;

  /// Window-boundary frequency of edge index 0..size() (bin midpoints plus
  /// the two outer boundaries); the optimizer's search lattice.
  double edge_frequency(int edge) const;

  // O(1) prefix-sum accumulators over half-open bin ranges.
  double n_sum(int a, int b) const;
  double cov_sum(int a1, int b1, int a2, int b2) const;
  /// Plain double sum over cov_nn; verification path for the prefix sums.
  double cov_sum_direct(int a1, int b1, int a2, int b2) const;

 private:
  SpectralMoments() = default;
  void finalize();

  double time_ = 0.0;
  Eigen::VectorXd freqs_;
  Eigen::VectorXcd mean_;
  Eigen::MatrixXcd c_;
  Eigen::MatrixXcd m_;
  Eigen::VectorXd n_;
  Eigen::MatrixXd cov_;
  double n_total_ = 0.0;
  Eigen::VectorXd prefix_n_;   // size n+1
  Eigen::MatrixXd prefix_cov_; // (n+1) x (n+1)
};

enum class Ordering { normal, full };

// Formula layer shared by the named statistics and the window optimizer.
// All return quiet NaN when a denominator vanishes; the public functions
// below turn NaN into std::domain_error.
namespace stats {
double eta_ii_of(double vn, double n);
double eta_12_of(double cov_full, double v1, double v2);
double eta_tilde_of(double vn1, double vn2, double cov, double v1, double v2);
double tau_12_of(double n1, double n2, double vn1, double vn2, double cov);
double tau_tilde_of(double n1, double n2, double vn1, double vn2, double cov);
}  // namespace stats

double window_photon_number(const SpectralMoments& spec, const SpectralWindow& w);
double number_covariance(const SpectralMoments& spec, const SpectralWindow& w1,
                         const SpectralWindow& w2, Ordering ordering);
double eta_ii(const SpectralMoments& spec, const SpectralWindow& w);
double eta_12(const SpectralMoments& spec, const SpectralWindow& w1,
              const SpectralWindow& w2);
double eta_tilde_12(const SpectralMoments& spec, const SpectralWindow& w1,
                    const SpectralWindow& w2);
double tau_12(const SpectralMoments& spec, const SpectralWindow& w1,
              const SpectralWindow& w2);
double tau_tilde_12(const SpectralMoments& spec, const SpectralWindow& w1,
                    const SpectralWindow& w2);

struct FanoResult {
  double factor;
  double decibels;  // -10 log10 F
};
FanoResult fano_factor(const SpectralMoments& spec, const SpectralWindow& w);

/// Smallest frequency beyond which every narrow-band interval
/// (omega_q - half_width, omega_q + half_width) is super-Poissonian;
/// 0 when no bin is sub-Poissonian, +inf when even the outermost is.
double omega0_crossing(const SpectralMoments& spec, double half_width);

// All coefficients for a window or a disjoint window pair. Undefined
// entries are quiet NaN rather than errors so sweeps can record them.
struct CorrelationReport {
  double time = 0.0;
  double lo1 = 0.0, hi1 = 0.0;
  double lo2 = 0.0, hi2 = 0.0;
  bool has_pair = false;
  double n1 = 0.0, n2 = 0.0;
  double eta11 = 0.0, eta22 = 0.0;
  double eta12 = 0.0, eta_tilde12 = 0.0;
  double tau12 = 0.0, tau_tilde12 = 0.0;
  double fano1 = 0.0, fano1_db = 0.0;
  double fano2 = 0.0, fano2_db = 0.0;
};

CorrelationReport make_report(const SpectralMoments& spec, const SpectralWindow& w1);
CorrelationReport make_report(const SpectralMoments& spec, const SpectralWindow& w1,
                              const SpectralWindow& w2);

}  // namespace kerrsol

#endif
