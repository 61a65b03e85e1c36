#include "kerrsol/reports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace kerrsol {

std::string fmt_num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {
std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}
}  // namespace

void write_surface_csv(const std::string& path, const std::vector<double>& times,
                       const Eigen::VectorXd& freqs, const Eigen::MatrixXd& values) {
  if (static_cast<int>(times.size()) != values.rows() || freqs.size() != values.cols())
    throw std::invalid_argument("surface dimensions do not match axes");
  auto out = open_out(path);
  out << "t_over_td";
  for (int q = 0; q < freqs.size(); ++q) out << ",omega=" << fmt_num(freqs[q]);
  out << "\n";
  for (size_t i = 0; i < times.size(); ++i) {
    out << fmt_num(times[i]);
    for (int q = 0; q < freqs.size(); ++q) out << "," << fmt_num(values(static_cast<int>(i), q));
    out << "\n";
  }
}

void write_map_csv(const std::string& path, const Eigen::VectorXd& freqs,
                   const Eigen::MatrixXd& values) {
  if (freqs.size() != values.rows() || freqs.size() != values.cols())
    throw std::invalid_argument("map dimensions do not match the frequency axis");
  auto out = open_out(path);
  out << "omega1_over_omega0";
  for (int q = 0; q < freqs.size(); ++q) out << ",omega2=" << fmt_num(freqs[q]);
  out << "\n";
  for (int q1 = 0; q1 < freqs.size(); ++q1) {
    out << fmt_num(freqs[q1]);
    for (int q2 = 0; q2 < freqs.size(); ++q2) out << "," << fmt_num(values(q1, q2));
    out << "\n";
  }
}

void write_curves_csv(const std::string& path, const std::vector<double>& times,
                      const std::vector<std::string>& labels,
                      const std::vector<Eigen::VectorXd>& columns) {
  if (labels.size() != columns.size())
    throw std::invalid_argument("curve labels do not match columns");
  for (const auto& c : columns)
    if (static_cast<size_t>(c.size()) != times.size())
      throw std::invalid_argument("curve column length does not match the time axis");
  auto out = open_out(path);
  out << "t_over_td";
  for (const auto& l : labels) out << "," << l;
  out << "\n";
  for (size_t i = 0; i < times.size(); ++i) {
    out << fmt_num(times[i]);
    for (const auto& c : columns) out << "," << fmt_num(c[static_cast<int>(i)]);
    out << "\n";
  }
}

void write_report_csv(const std::string& path,
                      const std::vector<CorrelationReport>& reports) {
  auto out = open_out(path);
  out << "t_over_td,lo1_over_omega0,hi1_over_omega0,lo2_over_omega0,hi2_over_omega0,"
         "n1,n2,eta11,eta22,eta12,eta_tilde12,tau12,tau_tilde12,"
         "fano1,fano1_db,fano2,fano2_db\n";
  for (const auto& r : reports) {
    out << fmt_num(r.time) << "," << fmt_num(r.lo1) << "," << fmt_num(r.hi1) << ","
        << fmt_num(r.lo2) << "," << fmt_num(r.hi2) << "," << fmt_num(r.n1) << ","
        << fmt_num(r.n2) << "," << fmt_num(r.eta11) << "," << fmt_num(r.eta22) << ","
        << fmt_num(r.eta12) << "," << fmt_num(r.eta_tilde12) << "," << fmt_num(r.tau12)
        << "," << fmt_num(r.tau_tilde12) << "," << fmt_num(r.fano1) << ","
        << fmt_num(r.fano1_db) << "," << fmt_num(r.fano2) << "," << fmt_num(r.fano2_db)
        << "\n";
  }
}

void write_trajectory_csv(const std::string& path, const std::vector<double>& times,
                          const std::vector<WindowSearchResult>& results,
                          const std::vector<double>* omega0) {
  if (times.size() != results.size())
    throw std::invalid_argument("trajectory length does not match the time axis");
  auto out = open_out(path);
  out << "t_over_td,lo1_over_omega0,hi1_over_omega0,lo2_over_omega0,hi2_over_omega0,"
         "fraction1,fraction2,objective";
  if (omega0) out << ",omega0_over_omega0";
  out << "\n";
  for (size_t i = 0; i < times.size(); ++i) {
    const auto& r = results[i];
    out << fmt_num(times[i]) << "," << fmt_num(r.lo1) << "," << fmt_num(r.hi1) << ","
        << fmt_num(r.has_pair ? r.lo2 : std::nan("")) << ","
        << fmt_num(r.has_pair ? r.hi2 : std::nan("")) << "," << fmt_num(r.fraction1)
        << "," << fmt_num(r.has_pair ? r.fraction2 : std::nan("")) << ","
        << fmt_num(r.objective);
    if (omega0) out << "," << fmt_num((*omega0)[i]);
    out << "\n";
  }
}

void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
  auto out = open_out(path);
  for (const auto& [k, v] : entries) out << k << "=" << v << "\n";
}

}  // namespace kerrsol
