#include "kerrsol/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kerrsol/fft.hpp"

namespace kerrsol {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double require_finite(double v, const char* what) {
  if (std::isnan(v)) throw std::domain_error(std::string(what) + " is undefined for this window");
  return v;
}
}  // namespace

SpectralMoments SpectralMoments::from_state(const GaussianFieldState& state) {
  const GridSpec& grid = state.grid;
  const int n = grid.n_points();
  SpectralTransform tf(n);

  Eigen::VectorXcd mean = state.mean;
  Eigen::MatrixXcd c = state.c_norm;
  Eigen::MatrixXcd m = state.m_anom;
  tf.vec_to_freq(mean);
  tf.cmat_to_freq(c);
  tf.mmat_to_freq(m);

  SpectralMoments out;
  out.time_ = state.time;
  out.freqs_.resize(n);
  out.mean_.resize(n);
  out.c_.resize(n, n);
  out.m_.resize(n, n);
  for (int r = 0; r < n; ++r) out.freqs_[r] = grid.frequency(r);
  for (int r = 0; r < n; ++r) out.mean_[r] = mean[grid.fft_index_of_row(r)];
  for (int r2 = 0; r2 < n; ++r2) {
    const int q2 = grid.fft_index_of_row(r2);
    for (int r1 = 0; r1 < n; ++r1) {
      const int q1 = grid.fft_index_of_row(r1);
      out.c_(r1, r2) = c(q1, q2);
      out.m_(r1, r2) = m(q1, q2);
    }
  }
  out.finalize();
  return out;
}

SpectralMoments SpectralMoments::from_moments(Eigen::VectorXd freqs,
                                              Eigen::VectorXcd mean,
                                              Eigen::MatrixXcd c, Eigen::MatrixXcd m,
                                              double time) {
  const int n = static_cast<int>(freqs.size());
  if (mean.size() != n || c.rows() != n || c.cols() != n || m.rows() != n || m.cols() != n)
    throw std::invalid_argument("from_moments: inconsistent array sizes");
  for (int i = 1; i < n; ++i)
    if (!(freqs[i] > freqs[i - 1]))
      throw std::invalid_argument("from_moments: frequencies must be strictly ascending");
  SpectralMoments out;
  out.time_ = time;
  out.freqs_ = std::move(freqs);
  out.mean_ = std::move(mean);
  out.c_ = std::move(c);
  out.m_ = std::move(m);
  out.finalize();
  return out;
}

void SpectralMoments::finalize() {
  const int n = size();
  n_.resize(n);
  cov_.resize(n, n);
  for (int q = 0; q < n; ++q) n_[q] = std::norm(mean_[q]) + c_(q, q).real();
  n_total_ = n_.sum();

  for (int q2 = 0; q2 < n; ++q2) {
    for (int q1 = 0; q1 < n; ++q1) {
      const std::complex<double> b1 = mean_[q1];
      const std::complex<double> b2 = mean_[q2];
      const std::complex<double> cc = c_(q1, q2);
      const std::complex<double> mm = m_(q1, q2);
      cov_(q1, q2) = 2.0 * (b1 * std::conj(b2) * cc).real() +
                     2.0 * (std::conj(b1 * b2) * mm).real() +
                     std::norm(cc) + std::norm(mm);
    }
  }

  prefix_n_.setZero(n + 1);
  for (int q = 0; q < n; ++q) prefix_n_[q + 1] = prefix_n_[q] + n_[q];
  prefix_cov_.setZero(n + 1, n + 1);
  for (int q2 = 0; q2 < n; ++q2)
    for (int q1 = 0; q1 < n; ++q1)
      prefix_cov_(q1 + 1, q2 + 1) = cov_(q1, q2) + prefix_cov_(q1, q2 + 1) +
                                    prefix_cov_(q1 + 1, q2) - prefix_cov_(q1, q2);
}

std::pair<int, int> SpectralMoments::resolve(const SpectralWindow& w) const {
  const int n = size();
  int a = n, b = n;
  for (int q = 0; q < n; ++q)
    if (freqs_[q] >= w.lo() - SpectralWindow::edge_epsilon) {
      a = q;
      break;
    }
  for (int q = a; q < n; ++q)
    if (freqs_[q] >= w.hi() - SpectralWindow::edge_epsilon) {
      b = q;
      break;
    }
  if (a >= b) throw std::invalid_argument("window resolves to an empty bin set");
  return {a, b};
}

double SpectralMoments::edge_frequency(int edge) const {
  const int n = size();
  if (edge <= 0) return freqs_[0] - 0.5 * (n > 1 ? freqs_[1] - freqs_[0] : 1.0);
  if (edge >= n) return freqs_[n - 1] + 0.5 * (n > 1 ? freqs_[n - 1] - freqs_[n - 2] : 1.0);
  return 0.5 * (freqs_[edge - 1] + freqs_[edge]);
}

double SpectralMoments::n_sum(int a, int b) const { return prefix_n_[b] - prefix_n_[a]; }

double SpectralMoments::cov_sum(int a1, int b1, int a2, int b2) const {
  return prefix_cov_(b1, b2) - prefix_cov_(a1, b2) - prefix_cov_(b1, a2) +
         prefix_cov_(a1, a2);
}

double SpectralMoments::cov_sum_direct(int a1, int b1, int a2, int b2) const {
  double s = 0.0;
  for (int q2 = a2; q2 < b2; ++q2)
    for (int q1 = a1; q1 < b1; ++q1) s += cov_(q1, q2);
  return s;
}

namespace stats {

double eta_ii_of(double vn, double n) {
  const double v = vn + n;
  if (!(v > 0.0)) return kNaN;
  return vn / v;
}

double eta_12_of(double cov_full, double v1, double v2) {
  if (!(v1 > 0.0) || !(v2 > 0.0)) return kNaN;
  return cov_full / std::sqrt(v1 * v2);
}

double eta_tilde_of(double vn1, double vn2, double cov, double v1, double v2) {
  if (!(v1 > 0.0) || !(v2 > 0.0)) return kNaN;
  const double denom = std::abs(v1 * v2 - vn1 * vn2);
  if (!(denom > 0.0)) return kNaN;
  return (vn1 * vn2 - cov * cov) / denom;
}

double tau_12_of(double n1, double n2, double vn1, double vn2, double cov) {
  const double s1 = vn1 + n1 + n1 * n1;  // <N1^2>
  const double s2 = vn2 + n2 + n2 * n2;
  if (!(s1 > 0.0) || !(s2 > 0.0)) return kNaN;
  return (cov + n1 * n2) / std::sqrt(s1 * s2);
}

double tau_tilde_of(double n1, double n2, double vn1, double vn2, double cov) {
  // normally ordered squares cannot be negative; clamp fp dips
  const double q1 = std::max(0.0, vn1 + n1 * n1);  // <:N1^2:>
  const double q2 = std::max(0.0, vn2 + n2 * n2);
  const double s1 = vn1 + n1 + n1 * n1;
  const double s2 = vn2 + n2 + n2 * n2;
  const double p = cov + n1 * n2;  // <:N1 N2:>
  const double denom = s1 * s2 - q1 * q2;
  if (!(denom > 0.0)) return kNaN;
  return (q1 * q2 - p * p) / denom;
}

}  // namespace stats

double window_photon_number(const SpectralMoments& spec, const SpectralWindow& w) {
  const auto [a, b] = spec.resolve(w);
  return spec.n_sum(a, b);
}

double number_covariance(const SpectralMoments& spec, const SpectralWindow& w1,
                         const SpectralWindow& w2, Ordering ordering) {
  const auto [a1, b1] = spec.resolve(w1);
  const auto [a2, b2] = spec.resolve(w2);
  double out = spec.cov_sum(a1, b1, a2, b2);
  if (ordering == Ordering::full) {
    const int a = std::max(a1, a2), b = std::min(b1, b2);
    if (a < b) out += spec.n_sum(a, b);  // shot noise on the overlap
  }
  return out;
}

double eta_ii(const SpectralMoments& spec, const SpectralWindow& w) {
  const auto [a, b] = spec.resolve(w);
  return require_finite(stats::eta_ii_of(spec.cov_sum(a, b, a, b), spec.n_sum(a, b)),
                        "eta_ii");
}

double eta_12(const SpectralMoments& spec, const SpectralWindow& w1,
              const SpectralWindow& w2) {
  const auto [a1, b1] = spec.resolve(w1);
  const auto [a2, b2] = spec.resolve(w2);
  const double v1 = spec.cov_sum(a1, b1, a1, b1) + spec.n_sum(a1, b1);
  const double v2 = spec.cov_sum(a2, b2, a2, b2) + spec.n_sum(a2, b2);
  double cov = spec.cov_sum(a1, b1, a2, b2);
  const int a = std::max(a1, a2), b = std::min(b1, b2);
  if (a < b) cov += spec.n_sum(a, b);
  return require_finite(stats::eta_12_of(cov, v1, v2), "eta_12");
}

double eta_tilde_12(const SpectralMoments& spec, const SpectralWindow& w1,
                    const SpectralWindow& w2) {
  const auto [a1, b1] = spec.resolve(w1);
  const auto [a2, b2] = spec.resolve(w2);
  const double vn1 = spec.cov_sum(a1, b1, a1, b1);
  const double vn2 = spec.cov_sum(a2, b2, a2, b2);
  const double v1 = vn1 + spec.n_sum(a1, b1);
  const double v2 = vn2 + spec.n_sum(a2, b2);
  const double cov = spec.cov_sum(a1, b1, a2, b2);
  return require_finite(stats::eta_tilde_of(vn1, vn2, cov, v1, v2), "eta_tilde_12");
}

double tau_12(const SpectralMoments& spec, const SpectralWindow& w1,
              const SpectralWindow& w2) {
  const auto [a1, b1] = spec.resolve(w1);
  const auto [a2, b2] = spec.resolve(w2);
  return require_finite(
      stats::tau_12_of(spec.n_sum(a1, b1), spec.n_sum(a2, b2),
                       spec.cov_sum(a1, b1, a1, b1), spec.cov_sum(a2, b2, a2, b2),
                       spec.cov_sum(a1, b1, a2, b2)),
      "tau_12");
}

double tau_tilde_12(const SpectralMoments& spec, const SpectralWindow& w1,
                    const SpectralWindow& w2) {
  const auto [a1, b1] = spec.resolve(w1);
  const auto [a2, b2] = spec.resolve(w2);
  return require_finite(
      stats::tau_tilde_of(spec.n_sum(a1, b1), spec.n_sum(a2, b2),
                          spec.cov_sum(a1, b1, a1, b1), spec.cov_sum(a2, b2, a2, b2),
                          spec.cov_sum(a1, b1, a2, b2)),
      "tau_tilde_12");
}

FanoResult fano_factor(const SpectralMoments& spec, const SpectralWindow& w) {
  const auto [a, b] = spec.resolve(w);
  const double n = spec.n_sum(a, b);
  if (!(n > 0.0)) throw std::domain_error("fano_factor requires <N> > 0");
  const double v = spec.cov_sum(a, b, a, b) + n;
  FanoResult r;
  r.factor = v / n;
  r.decibels = -10.0 * std::log10(r.factor);
  return r;
}

double omega0_crossing(const SpectralMoments& spec, double half_width) {
  const int n = spec.size();
  double crossing = 0.0;
  double outermost_defined = -1.0;
  bool outermost_negative = false;
  for (int q = 0; q < n; ++q) {
    const double w = spec.freqs()[q];
    const SpectralWindow win(w - half_width, w + half_width);
    const auto [a, b] = spec.resolve(win);
    const double eta = stats::eta_ii_of(spec.cov_sum(a, b, a, b), spec.n_sum(a, b));
    if (std::isnan(eta)) continue;
    const double mag = std::abs(w);
    if (mag > outermost_defined) {
      outermost_defined = mag;
      outermost_negative = eta < 0.0;
    } else if (mag == outermost_defined && eta < 0.0) {
      outermost_negative = true;
    }
    if (eta < 0.0 && mag > crossing) crossing = mag;
  }
  if (outermost_negative) return std::numeric_limits<double>::infinity();
  return crossing;
}

namespace {
CorrelationReport base_report(const SpectralMoments& spec, const SpectralWindow& w1) {
  CorrelationReport r;
  r.time = spec.time();
  r.lo1 = w1.lo();
  r.hi1 = w1.hi();
  const auto [a, b] = spec.resolve(w1);
  const double vn = spec.cov_sum(a, b, a, b);
  r.n1 = spec.n_sum(a, b);
  r.eta11 = stats::eta_ii_of(vn, r.n1);
  const double v = vn + r.n1;
  r.fano1 = r.n1 > 0.0 ? v / r.n1 : kNaN;
  r.fano1_db = -10.0 * std::log10(r.fano1);
  r.eta22 = r.eta12 = r.eta_tilde12 = r.tau12 = r.tau_tilde12 = kNaN;
  r.fano2 = r.fano2_db = kNaN;
  r.lo2 = r.hi2 = kNaN;
  return r;
}
}  // namespace

CorrelationReport make_report(const SpectralMoments& spec, const SpectralWindow& w1) {
  return base_report(spec, w1);
}

CorrelationReport make_report(const SpectralMoments& spec, const SpectralWindow& w1,
                              const SpectralWindow& w2) {
  CorrelationReport r = base_report(spec, w1);
  r.has_pair = true;
  r.lo2 = w2.lo();
  r.hi2 = w2.hi();
  const auto [a1, b1] = spec.resolve(w1);
  const auto [a2, b2] = spec.resolve(w2);
  const double vn1 = spec.cov_sum(a1, b1, a1, b1);
  const double vn2 = spec.cov_sum(a2, b2, a2, b2);
  const double cov = spec.cov_sum(a1, b1, a2, b2);
  r.n2 = spec.n_sum(a2, b2);
  const double v1 = vn1 + r.n1;
  const double v2 = vn2 + r.n2;
  r.eta22 = stats::eta_ii_of(vn2, r.n2);
  r.eta12 = stats::eta_12_of(cov, v1, v2);
  r.eta_tilde12 = stats::eta_tilde_of(vn1, vn2, cov, v1, v2);
  r.tau12 = stats::tau_12_of(r.n1, r.n2, vn1, vn2, cov);
  r.tau_tilde12 = stats::tau_tilde_of(r.n1, r.n2, vn1, vn2, cov);
  r.fano2 = r.n2 > 0.0 ? v2 / r.n2 : kNaN;
  r.fano2_db = -10.0 * std::log10(r.fano2);
  return r;
}

}  // namespace kerrsol
