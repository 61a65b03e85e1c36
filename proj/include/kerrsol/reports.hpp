#ifndef KERRSOL_REPORTS_HPP
#define KERRSOL_REPORTS_HPP

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "kerrsol/optimizer.hpp"
#include "kerrsol/spectral.hpp"

namespace kerrsol {

/// Deterministic number formatting for CSV output ("%.12g", NaN -> "nan").
std::string fmt_num(double v);

/// Surface CSV: header "t_over_td,omega=...", one row per time.
/// values(i, q) belongs to times[i] and freqs[q] (omega in omega0 units).
void write_surface_csv(const std::string& path, const std::vector<double>& times,
                       const Eigen::VectorXd& freqs, const Eigen::MatrixXd& values);

/// Pairwise map CSV at fixed time: header "omega1_over_omega0,omega2=...",
/// one row per omega1.
void write_map_csv(const std::string& path, const Eigen::VectorXd& freqs,
                   const Eigen::MatrixXd& values);

/// Multi-column curve CSV: header "t_over_td,<labels...>".
void write_curves_csv(const std::string& path, const std::vector<double>& times,
                      const std::vector<std::string>& labels,
                      const std::vector<Eigen::VectorXd>& columns);

/// Per-window correlation records.
void write_report_csv(const std::string& path,
                      const std::vector<CorrelationReport>& reports);

/// Optimizer trajectory: window endpoints in omega0 units, photon
/// fractions, objective; optional omega0-crossing column.
void write_trajectory_csv(const std::string& path, const std::vector<double>& times,
                          const std::vector<WindowSearchResult>& results,
                          const std::vector<double>* omega0 = nullptr);

/// key=value manifest.
void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace kerrsol

#endif
