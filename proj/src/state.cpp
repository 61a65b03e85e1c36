#include "kerrsol/state.hpp"

#include <cmath>
#include <stdexcept>

namespace kerrsol {

GaussianFieldState::GaussianFieldState(const GridSpec& g, double t,
                                       Eigen::VectorXcd b, Eigen::MatrixXcd c,
                                       Eigen::MatrixXcd m)
    : grid(g), time(t), mean(std::move(b)), c_norm(std::move(c)), m_anom(std::move(m)) {
  const int n = grid.n_points();
  if (mean.size() != n || c_norm.rows() != n || c_norm.cols() != n ||
      m_anom.rows() != n || m_anom.cols() != n)
    throw std::invalid_argument("state arrays do not match the grid size");
}

void GaussianFieldState::check_structure(double rel_tol) const {
  if (!mean.allFinite() || !c_norm.allFinite() || !m_anom.allFinite())
    throw std::runtime_error("non-finite state entries at t=" + std::to_string(time));
  const double c_scale = std::max(c_norm.cwiseAbs().maxCoeff(), 1e-300);
  const double m_scale = std::max(m_anom.cwiseAbs().maxCoeff(), 1e-300);
  const double herm_dev = (c_norm - c_norm.adjoint()).cwiseAbs().maxCoeff() / c_scale;
  const double sym_dev = (m_anom - m_anom.transpose()).cwiseAbs().maxCoeff() / m_scale;
  if (herm_dev > rel_tol)
    throw std::runtime_error("c_norm lost Hermiticity (rel dev " + std::to_string(herm_dev) +
                             ") at t=" + std::to_string(time));
  if (sym_dev > rel_tol)
    throw std::runtime_error("m_anom lost symmetry (rel dev " + std::to_string(sym_dev) +
                             ") at t=" + std::to_string(time));
}

double GaussianFieldState::min_cnorm_eigenvalue_rel() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c_norm, Eigen::EigenvaluesOnly);
  const double scale = std::max(c_norm.real().trace() / grid.n_points(), 1e-300);
  return es.eigenvalues().minCoeff() / scale;
}

GaussianFieldState make_vacuum(const GridSpec& grid) {
  const int n = grid.n_points();
  return GaussianFieldState(grid, 0.0, Eigen::VectorXcd::Zero(n),
                            Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n));
}

GaussianFieldState make_fundamental_soliton(const GridSpec& grid,
                                            const SimulationConfig& config) {
  if (grid.length() < 10.0)
    throw std::invalid_argument("grid length " + std::to_string(grid.length()) +
                                " x0 is too short for the pulse (need >= 10 x0)");
  if (!(config.nbar >= 0.0)) throw std::invalid_argument("nbar must be >= 0");
  if (!(config.n_th >= 0.0)) throw std::invalid_argument("n_th must be >= 0");

  const int n = grid.n_points();
  const double amp = std::sqrt(config.nbar * grid.dx());
  Eigen::VectorXcd beta(n);
  for (int k = 0; k < n; ++k) beta[k] = amp / std::cosh(grid.coordinate(k));

  Eigen::MatrixXcd c = config.n_th * Eigen::MatrixXcd::Identity(n, n);
  return GaussianFieldState(grid, 0.0, std::move(beta), std::move(c),
                            Eigen::MatrixXcd::Zero(n, n));
}

double total_photon_number(const GaussianFieldState& state) {
  return state.mean.squaredNorm() + state.c_norm.real().trace();
}

}  // namespace kerrsol
