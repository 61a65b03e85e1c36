#include "kerrsol/dynamics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace kerrsol {

using std::complex;
namespace {
inline complex<double> mul_i(complex<double> z) { return {-z.imag(), z.real()}; }
}  // namespace

Eigen::MatrixXcd kinetic_generator(const GridSpec& grid) {
  const int n = grid.n_points();
  SpectralTransform tf(n);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int q = 0; q < n; ++q) {
    const double omega = grid.frequency(grid.row_of_fft_index(q));
    h(q, q) = 0.5 * omega * omega;
  }
  tf.cmat_to_space(h);
  return h;
}

DriftCoefficients make_drift_coefficients(const GaussianFieldState& state,
                                          const SimulationConfig& config) {
  const int n = state.grid.n_points();
  DriftCoefficients dc;
  dc.g = config.coupling_g();
  dc.sigma = config.closure == Closure::self_consistent ? 1 : 0;
  dc.h_linear = kinetic_generator(state.grid);
  dc.h_diag.resize(n);
  dc.delta_diag.resize(n);
  for (int k = 0; k < n; ++k) {
    const complex<double> b = state.mean[k];
    const double nk = std::norm(b);
    dc.h_diag[k] = 2.0 * dc.g * (nk + dc.sigma * state.c_norm(k, k).real());
    dc.delta_diag[k] = dc.g * (b * b + static_cast<double>(dc.sigma) * state.m_anom(k, k));
  }
  return dc;
}

MomentDerivatives drift_rhs_general(const Eigen::VectorXcd& mean,
                                    const Eigen::MatrixXcd& c_norm,
                                    const Eigen::MatrixXcd& m_anom,
                                    const Eigen::MatrixXcd& h_linear, double g,
                                    int sigma, double gamma, double n_th) {
  if (!mean.allFinite() || !c_norm.allFinite() || !m_anom.allFinite())
    throw std::runtime_error("drift_rhs: non-finite state entries");

  const int n = static_cast<int>(mean.size());
  const complex<double> I(0.0, 1.0);

  Eigen::VectorXd h_diag(n);
  Eigen::VectorXcd delta(n);
  Eigen::VectorXcd dmean(n);
  for (int k = 0; k < n; ++k) {
    const complex<double> b = mean[k];
    const double nk = std::norm(b);
    const double ck = c_norm(k, k).real();
    const complex<double> mk = m_anom(k, k);
    h_diag[k] = 2.0 * g * (nk + sigma * ck);
    delta[k] = g * (b * b + static_cast<double>(sigma) * mk);
    // Gaussian factorization <b+bb> = (|b|^2 + 2C_kk) b + M_kk b*.
    dmean[k] = -I * g * ((nk + 2.0 * sigma * ck) * b +
                         static_cast<double>(sigma) * mk * std::conj(b));
  }
  dmean.noalias() -= I * (h_linear * mean);
  dmean -= gamma * mean;

  Eigen::MatrixXcd h = h_linear;
  h.diagonal() += h_diag.cast<complex<double>>();

  MomentDerivatives d;
  d.mean = std::move(dmean);
  d.c_norm = I * (h.conjugate() * c_norm - c_norm * h.transpose());
  d.c_norm += I * (delta.conjugate().asDiagonal() * m_anom -
                   m_anom.conjugate() * delta.asDiagonal());
  d.c_norm -= 2.0 * gamma * c_norm;
  d.c_norm.diagonal().array() += 2.0 * gamma * n_th;

  d.m_anom = -I * (h * m_anom + m_anom * h.transpose());
  d.m_anom -= I * (delta.asDiagonal() * c_norm + c_norm.conjugate() * delta.asDiagonal());
  d.m_anom.diagonal() -= I * delta;
  d.m_anom -= 2.0 * gamma * m_anom;
  return d;
}

MomentDerivatives drift_rhs(const GaussianFieldState& state,
                            const SimulationConfig& config) {
  const int sigma = config.closure == Closure::self_consistent ? 1 : 0;
  return drift_rhs_general(state.mean, state.c_norm, state.m_anom,
                           kinetic_generator(state.grid), config.coupling_g(),
                           sigma, config.gamma_td, config.n_th);
}

void evolve_moments_dense(Eigen::VectorXcd& mean, Eigen::MatrixXcd& c_norm,
                          Eigen::MatrixXcd& m_anom, const Eigen::MatrixXcd& h_linear,
                          double g, int sigma, double gamma, double n_th,
                          double dt, int steps) {
  for (int s = 0; s < steps; ++s) {
    const MomentDerivatives k1 = drift_rhs_general(mean, c_norm, m_anom, h_linear, g, sigma, gamma, n_th);
    const MomentDerivatives k2 = drift_rhs_general(mean + 0.5 * dt * k1.mean,
                                                   c_norm + 0.5 * dt * k1.c_norm,
                                                   m_anom + 0.5 * dt * k1.m_anom,
                                                   h_linear, g, sigma, gamma, n_th);
    const MomentDerivatives k3 = drift_rhs_general(mean + 0.5 * dt * k2.mean,
                                                   c_norm + 0.5 * dt * k2.c_norm,
                                                   m_anom + 0.5 * dt * k2.m_anom,
                                                   h_linear, g, sigma, gamma, n_th);
    const MomentDerivatives k4 = drift_rhs_general(mean + dt * k3.mean,
                                                   c_norm + dt * k3.c_norm,
                                                   m_anom + dt * k3.m_anom,
                                                   h_linear, g, sigma, gamma, n_th);
    mean += (dt / 6.0) * (k1.mean + 2.0 * k2.mean + 2.0 * k3.mean + k4.mean);
    c_norm += (dt / 6.0) * (k1.c_norm + 2.0 * k2.c_norm + 2.0 * k3.c_norm + k4.c_norm);
    m_anom += (dt / 6.0) * (k1.m_anom + 2.0 * k2.m_anom + 2.0 * k3.m_anom + k4.m_anom);
    // contain floating-point symmetry drift
    c_norm = 0.5 * (c_norm + c_norm.adjoint()).eval();
    m_anom = 0.5 * (m_anom + m_anom.transpose()).eval();
  }
}

// ---------------------------------------------------------------------------

struct SplitStepIntegrator::Work {
  Eigen::VectorXcd b0, bk, ba, bt;
  Eigen::MatrixXcd c0, ck, ca, ct;
  Eigen::MatrixXcd m0, mk, ma, mt;
  explicit Work(int n)
      : b0(n), bk(n), ba(n), bt(n), c0(n, n), ck(n, n), ca(n, n), ct(n, n),
        m0(n, n), mk(n, n), ma(n, n), mt(n, n) {}
};

SplitStepIntegrator::SplitStepIntegrator(const GridSpec& grid,
                                         const SimulationConfig& config)
    : grid_(grid), config_(config),
      transform_(std::make_shared<SpectralTransform>(grid.n_points())) {
  config_.validate();
  const int n = grid_.n_points();
  omega_sq_.resize(n);
  for (int q = 0; q < n; ++q) {
    const double w = grid_.frequency(grid_.row_of_fft_index(q));
    omega_sq_[q] = w * w;
  }
}

double SplitStepIntegrator::realized_dt() const {
  const double interval = config_.snapshot_interval;
  const int per = std::max(1, static_cast<int>(std::round(interval / config_.dt)));
  return interval / per;
}

void SplitStepIntegrator::linear_factors(double h, Eigen::VectorXcd& u, double& decay) const {
  const int n = grid_.n_points();
  u.resize(n);
  for (int q = 0; q < n; ++q)
    u[q] = std::polar(1.0, -0.5 * omega_sq_[q] * h);
  decay = std::exp(-config_.gamma_td * h);
}

void SplitStepIntegrator::linear_substep(Eigen::VectorXcd& mean, Eigen::MatrixXcd& c,
                                         Eigen::MatrixXcd& m, const Eigen::VectorXcd& u,
                                         double decay) const {
  const int n = grid_.n_points();
  transform_->vec_to_freq(mean);
  transform_->cmat_to_freq(c);
  transform_->mmat_to_freq(m);

  const double d2 = decay * decay;
  for (int q = 0; q < n; ++q) mean[q] *= u[q] * decay;
  for (int l = 0; l < n; ++l) {
    const complex<double> cl = u[l] * d2;
    for (int k = 0; k < n; ++k) {
      c(k, l) *= std::conj(u[k]) * cl;
      m(k, l) *= u[k] * cl;
    }
  }
  if (config_.gamma_td > 0.0) {
    // exact relaxation of the diagonal toward the reservoir occupation
    const double pump = config_.n_th * (1.0 - d2);
    for (int q = 0; q < n; ++q) c(q, q) += pump;
  }

  transform_->vec_to_space(mean);
  transform_->cmat_to_space(c);
  transform_->mmat_to_space(m);
}

void SplitStepIntegrator::nonlinear_substep(Eigen::VectorXcd& mean, Eigen::MatrixXcd& c,
                                            Eigen::MatrixXcd& m, double h, Work& w) const {
  const int n = grid_.n_points();
  const double g = config_.coupling_g();
  const int sigma = config_.closure == Closure::self_consistent ? 1 : 0;

  Eigen::VectorXd hd(n);
  Eigen::VectorXcd delta(n);

  auto stage = [&](const Eigen::VectorXcd& b, const Eigen::MatrixXcd& cc,
                   const Eigen::MatrixXcd& mm, Eigen::VectorXcd& db,
                   Eigen::MatrixXcd& dc, Eigen::MatrixXcd& dm) {
    for (int k = 0; k < n; ++k) {
      const complex<double> bk = b[k];
      const double nk = std::norm(bk);
      const double ck = cc(k, k).real();
      const complex<double> mk = mm(k, k);
      hd[k] = 2.0 * g * (nk + sigma * ck);
      delta[k] = g * (bk * bk + static_cast<double>(sigma) * mk);
      db[k] = -mul_i((nk + 2.0 * sigma * ck) * g * bk +
                     static_cast<double>(sigma) * g * mk * std::conj(bk));
    }
    for (int l = 0; l < n; ++l) {
      const double hl = hd[l];
      const complex<double> dl = delta[l];
      for (int k = 0; k < n; ++k) {
        const complex<double> ckl = cc(k, l);
        const complex<double> mkl = mm(k, l);
        dc(k, l) = mul_i((hd[k] - hl) * ckl + std::conj(delta[k]) * mkl -
                         dl * std::conj(mkl));
        dm(k, l) = -mul_i((hd[k] + hl) * mkl + delta[k] * ckl + dl * std::conj(ckl));
      }
      dm(l, l) -= mul_i(dl);
    }
  };

  w.b0 = mean; w.c0 = c; w.m0 = m;

  stage(w.b0, w.c0, w.m0, w.bk, w.ck, w.mk);
  w.ba = w.bk; w.ca = w.ck; w.ma = w.mk;

  w.bt = w.b0 + (0.5 * h) * w.bk; w.ct = w.c0 + (0.5 * h) * w.ck; w.mt = w.m0 + (0.5 * h) * w.mk;
  stage(w.bt, w.ct, w.mt, w.bk, w.ck, w.mk);
  w.ba += 2.0 * w.bk; w.ca += 2.0 * w.ck; w.ma += 2.0 * w.mk;

  w.bt = w.b0 + (0.5 * h) * w.bk; w.ct = w.c0 + (0.5 * h) * w.ck; w.mt = w.m0 + (0.5 * h) * w.mk;
  stage(w.bt, w.ct, w.mt, w.bk, w.ck, w.mk);
  w.ba += 2.0 * w.bk; w.ca += 2.0 * w.ck; w.ma += 2.0 * w.mk;

  w.bt = w.b0 + h * w.bk; w.ct = w.c0 + h * w.ck; w.mt = w.m0 + h * w.mk;
  stage(w.bt, w.ct, w.mt, w.bk, w.ck, w.mk);
  w.ba += w.bk; w.ca += w.ck; w.ma += w.mk;

  mean = w.b0 + (h / 6.0) * w.ba;
  c = w.c0 + (h / 6.0) * w.ca;
  m = w.m0 + (h / 6.0) * w.ma;
}

void SplitStepIntegrator::finish_step(Eigen::VectorXcd& mean, Eigen::MatrixXcd& c,
                                      Eigen::MatrixXcd& m, double photons_before,
                                      double damp_duration, double time) const {
  const double c_scale = std::max(c.cwiseAbs().maxCoeff(), 1e-300);
  const double m_scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  const double c_dev = (c - c.adjoint()).cwiseAbs().maxCoeff() / c_scale;
  const double m_dev = (m - m.transpose()).cwiseAbs().maxCoeff() / m_scale;
  if (c_dev > symmetry_abort_tol || m_dev > symmetry_abort_tol)
    throw std::runtime_error("moment symmetry drift beyond tolerance at t=" +
                             std::to_string(time) + " (C dev " + std::to_string(c_dev) +
                             ", M dev " + std::to_string(m_dev) + ")");
  c = 0.5 * (c + c.adjoint()).eval();
  m = 0.5 * (m + m.transpose()).eval();

  if (!mean.allFinite() || !c.allFinite() || !m.allFinite())
    throw std::runtime_error("non-finite state entries at t=" + std::to_string(time));

  const double n_inf = grid_.n_points() * config_.n_th;
  const double expected =
      n_inf + (photons_before - n_inf) * std::exp(-2.0 * config_.gamma_td * damp_duration);
  const double after = mean.squaredNorm() + c.real().trace();
  if (std::abs(after - expected) > energy_jump_tol * std::max(std::abs(expected), 1e-9))
    throw std::runtime_error("photon-number jump beyond stability bound at t=" +
                             std::to_string(time));
}

GaussianFieldState SplitStepIntegrator::step(const GaussianFieldState& state,
                                             double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  Eigen::VectorXcd mean = state.mean;
  Eigen::MatrixXcd c = state.c_norm;
  Eigen::MatrixXcd m = state.m_anom;
  const double before = mean.squaredNorm() + c.real().trace();

  Eigen::VectorXcd u;
  double decay;
  linear_factors(0.5 * dt, u, decay);
  Work w(grid_.n_points());

  linear_substep(mean, c, m, u, decay);
  nonlinear_substep(mean, c, m, dt, w);
  linear_substep(mean, c, m, u, decay);
  finish_step(mean, c, m, before, dt, state.time + dt);

  return GaussianFieldState(grid_, state.time + dt, std::move(mean), std::move(c),
                            std::move(m));
}

void SplitStepIntegrator::evolve_with(const GaussianFieldState& initial,
                                      const SnapshotCallback& on_snapshot) const {
  if (initial.grid.n_points() != grid_.n_points())
    throw std::invalid_argument("state grid does not match the integrator grid");

  on_snapshot(initial);
  if (config_.t_final <= 0.0) return;

  const double interval = config_.snapshot_interval;
  const int intervals = static_cast<int>(std::round(config_.t_final / interval));
  const int per = std::max(1, static_cast<int>(std::round(interval / config_.dt)));
  const double h = interval / per;
  const double t0 = initial.time;

  Eigen::VectorXcd mean = initial.mean;
  Eigen::MatrixXcd c = initial.c_norm;
  Eigen::MatrixXcd m = initial.m_anom;

  Eigen::VectorXcd u_half, u_full;
  double decay_half, decay_full;
  linear_factors(0.5 * h, u_half, decay_half);
  linear_factors(h, u_full, decay_full);
  Work w(grid_.n_points());

  for (int i = 0; i < intervals; ++i) {
    double before = mean.squaredNorm() + c.real().trace();
    // Strang steps with interior half-steps merged pairwise; damp_acc
    // tracks the damping duration covered since the last stability check.
    linear_substep(mean, c, m, u_half, decay_half);
    double damp_acc = 0.5 * h;
    for (int s = 0; s < per; ++s) {
      nonlinear_substep(mean, c, m, h, w);
      const bool last = (s == per - 1);
      linear_substep(mean, c, m, last ? u_half : u_full, last ? decay_half : decay_full);
      damp_acc += last ? 0.5 * h : h;
      if (!last) {
        const double t = t0 + i * interval + (s + 1) * h;
        finish_step(mean, c, m, before, damp_acc, t);
        before = mean.squaredNorm() + c.real().trace();
        damp_acc = 0.0;
      }
    }
    const double t = t0 + (i + 1) * interval;
    finish_step(mean, c, m, before, damp_acc, t);
    on_snapshot(GaussianFieldState(grid_, t, mean, c, m));
  }
}

std::vector<GaussianFieldState> SplitStepIntegrator::evolve(
    const GaussianFieldState& initial) const {
  std::vector<GaussianFieldState> out;
  evolve_with(initial, [&out](const GaussianFieldState& s) { out.push_back(s); });
  return out;
}

GaussianFieldState step(const GaussianFieldState& state, double dt,
                        const SimulationConfig& config) {
  return SplitStepIntegrator(state.grid, config).step(state, dt);
}

std::vector<GaussianFieldState> evolve(const GaussianFieldState& initial,
                                       const SimulationConfig& config) {
  return SplitStepIntegrator(initial.grid, config).evolve(initial);
}

}  // namespace kerrsol
