#include "kerrsol/fock.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "kerrsol/dynamics.hpp"

namespace kerrsol {

using std::complex;

void FockConfig::validate() const {
  if (n_modes < 1 || n_modes > 3) throw std::invalid_argument("n_modes must be 1..3");
  if (cutoff < 1 || cutoff > 30) throw std::invalid_argument("cutoff must be 1..30");
  if (dim() > 30000) throw std::invalid_argument("Hilbert dimension exceeds 3e4");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  if (!(n_th >= 0.0)) throw std::invalid_argument("n_th must be >= 0");
}

int FockConfig::dim() const {
  int d = 1;
  for (int k = 0; k < n_modes; ++k) d *= cutoff + 1;
  return d;
}

FockOracle::FockOracle(const FockConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  dim_ = cfg_.dim();
  strides_.resize(cfg_.n_modes);
  int s = 1;
  for (int k = 0; k < cfg_.n_modes; ++k) {
    strides_[k] = s;
    s *= cfg_.cutoff + 1;
  }
  digits_.resize(dim_, cfg_.n_modes);
  for (int i = 0; i < dim_; ++i) {
    int rest = i;
    for (int k = 0; k < cfg_.n_modes; ++k) {
      digits_(i, k) = rest % (cfg_.cutoff + 1);
      rest /= cfg_.cutoff + 1;
    }
    for (int k = 0; k < cfg_.n_modes; ++k)
      if (digits_(i, k) == cfg_.cutoff) {
        top_layer_.push_back(i);
        break;
      }
  }
}

int FockOracle::occupation(int basis_index, int mode) const {
  return digits_(basis_index, mode);
}

DensityState FockOracle::coherent_state(const Eigen::VectorXcd& alphas) const {
  if (alphas.size() != cfg_.n_modes)
    throw std::invalid_argument("coherent_state: wrong number of amplitudes");
  Eigen::VectorXcd psi(dim_);
  for (int i = 0; i < dim_; ++i) {
    complex<double> amp = 1.0;
    for (int k = 0; k < cfg_.n_modes; ++k) {
      const int n = digits_(i, k);
      complex<double> c = std::exp(-0.5 * std::norm(alphas[k]));
      for (int j = 1; j <= n; ++j) c *= alphas[k] / std::sqrt(static_cast<double>(j));
      amp *= c;
    }
    psi[i] = amp;
  }
  psi /= psi.norm();
  DensityState st;
  st.rho = psi * psi.adjoint();
  return st;
}

DensityState FockOracle::thermal_state(double nbar) const {
  if (!(nbar >= 0.0)) throw std::invalid_argument("nbar must be >= 0");
  Eigen::VectorXd p = Eigen::VectorXd::Ones(dim_);
  if (nbar > 0.0) {
    const double r = nbar / (1.0 + nbar);
    for (int i = 0; i < dim_; ++i) {
      int total = 0;
      for (int k = 0; k < cfg_.n_modes; ++k) total += digits_(i, k);
      p[i] = std::pow(r, total);
    }
  } else {
    for (int i = 1; i < dim_; ++i) p[i] = 0.0;
  }
  p /= p.sum();
  DensityState st;
  st.rho = p.cast<complex<double>>().asDiagonal();
  return st;
}

// dH/dt = -i[H, rho] + gamma * sum_k { N_th (2 b+ rho b - {b b+, rho})
//                                    + (N_th+1) (2 b rho b+ - {b+ b, rho}) }
// applied with the literally truncated ladder operators so the trace is
// preserved identically.
void FockOracle::rhs(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
  const int cut = cfg_.cutoff;
  const complex<double> I(0.0, 1.0);

  // H rho via weighted shifts; [H, rho] = A - A^+ for Hermitian H, rho.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim_, dim_);
  // local Kerr: (g/2) n(n-1), diagonal
  if (cfg_.kerr_g != 0.0) {
    for (int j = 0; j < dim_; ++j)
      for (int i = 0; i < dim_; ++i) {
        double e = 0.0;
        for (int k = 0; k < cfg_.n_modes; ++k) {
          const double d = digits_(i, k);
          e += 0.5 * cfg_.kerr_g * d * (d - 1.0);
        }
        a(i, j) += e * rho(i, j);
      }
  }
  // hopping j (b_k^+ b_{k+1} + h.c.) and pair coupling kappa (b_k^+ b_{k+1}^+ + h.c.)
  for (int k = 0; k + 1 < cfg_.n_modes; ++k) {
    const int s0 = strides_[k], s1 = strides_[k + 1];
    if (cfg_.hop_j != 0.0) {
      for (int j = 0; j < dim_; ++j)
        for (int m = 0; m < dim_; ++m) {
          const int d0 = digits_(m, k), d1 = digits_(m, k + 1);
          if (d1 >= 1 && d0 < cut)  // b_k^+ b_{k+1} |m>
            a(m - s1 + s0, j) += cfg_.hop_j * std::sqrt(d1 * (d0 + 1.0)) * rho(m, j);
          if (d0 >= 1 && d1 < cut)  // b_{k+1}^+ b_k |m>
            a(m - s0 + s1, j) += cfg_.hop_j * std::sqrt(d0 * (d1 + 1.0)) * rho(m, j);
        }
    }
    if (cfg_.pair_kappa != 0.0) {
      for (int j = 0; j < dim_; ++j)
        for (int m = 0; m < dim_; ++m) {
          const int d0 = digits_(m, k), d1 = digits_(m, k + 1);
          if (d0 < cut && d1 < cut)  // b_k^+ b_{k+1}^+ |m>
            a(m + s0 + s1, j) += cfg_.pair_kappa * std::sqrt((d0 + 1.0) * (d1 + 1.0)) * rho(m, j);
          if (d0 >= 1 && d1 >= 1)  // b_k b_{k+1} |m>
            a(m - s0 - s1, j) += cfg_.pair_kappa * std::sqrt(static_cast<double>(d0) * d1) * rho(m, j);
        }
    }
  }
  out = -I * (a - a.adjoint());

  if (cfg_.gamma > 0.0) {
    const double gn = cfg_.gamma * cfg_.n_th;
    const double gp = cfg_.gamma * (cfg_.n_th + 1.0);
    for (int k = 0; k < cfg_.n_modes; ++k) {
      const int s = strides_[k];
      for (int j = 0; j < dim_; ++j) {
        const int dj = digits_(j, k);
        for (int i = 0; i < dim_; ++i) {
          const int di = digits_(i, k);
          complex<double> acc = 0.0;
          if (gn > 0.0) {
            if (di >= 1 && dj >= 1)  // 2 b+ rho b
              acc += 2.0 * gn * std::sqrt(static_cast<double>(di) * dj) * rho(i - s, j - s);
            // {b b+, rho} with the truncated b+: diag is d+1 below the cutoff, 0 at it
            const double wi = di < cut ? di + 1.0 : 0.0;
            const double wj = dj < cut ? dj + 1.0 : 0.0;
            acc -= gn * (wi + wj) * rho(i, j);
          }
          if (di < cut && dj < cut)  // 2 b rho b+
            acc += 2.0 * gp * std::sqrt((di + 1.0) * (dj + 1.0)) * rho(i + s, j + s);
          acc -= gp * (static_cast<double>(di) + dj) * rho(i, j);
          out(i, j) += acc;
        }
      }
    }
  }
}

DensityState FockOracle::lindblad_step(const DensityState& state) const {
  if (top_layer_population(state) > cutoff_population_tol)
    throw std::runtime_error(
        "Fock cutoff saturated (top layer population > 1e-6); increase the cutoff");

  const double h = cfg_.dt;
  Eigen::MatrixXcd k1(dim_, dim_), k2(dim_, dim_), k3(dim_, dim_), k4(dim_, dim_);
  rhs(state.rho, k1);
  rhs(state.rho + 0.5 * h * k1, k2);
  rhs(state.rho + 0.5 * h * k2, k3);
  rhs(state.rho + h * k3, k4);

  DensityState next;
  next.time = state.time + h;
  next.rho = state.rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  next.rho = 0.5 * (next.rho + next.rho.adjoint()).eval();
  return next;
}

DensityState FockOracle::evolve(const DensityState& state, double t) const {
  const int steps = std::max(1, static_cast<int>(std::round(t / cfg_.dt)));
  DensityState cur = state;
  for (int s = 0; s < steps; ++s) cur = lindblad_step(cur);
  return cur;
}

FockMoments FockOracle::moments_of(const DensityState& state) const {
  const int nm = cfg_.n_modes;
  const int cut = cfg_.cutoff;
  FockMoments mom;
  mom.mean.setZero(nm);
  Eigen::MatrixXcd nn = Eigen::MatrixXcd::Zero(nm, nm);  // <b_k^+ b_l>
  Eigen::MatrixXcd aa = Eigen::MatrixXcd::Zero(nm, nm);  // <b_k b_l>

  for (int k = 0; k < nm; ++k) {
    const int sk = strides_[k];
    for (int m = 0; m < dim_; ++m) {
      const int dk = digits_(m, k);
      if (dk >= 1) mom.mean[k] += std::sqrt(static_cast<double>(dk)) * state.rho(m, m - sk);
    }
    for (int l = 0; l < nm; ++l) {
      const int sl = strides_[l];
      for (int m = 0; m < dim_; ++m) {
        const int dl = digits_(m, l);
        if (dl < 1) continue;
        if (k == l) {
          nn(k, l) += static_cast<double>(dl) * state.rho(m, m);
          if (dl >= 2) aa(k, l) += std::sqrt(dl * (dl - 1.0)) * state.rho(m, m - 2 * sk);
        } else {
          const int dk = digits_(m, k);
          if (dk < cut)  // b_k^+ b_l
            nn(k, l) += std::sqrt(dl * (dk + 1.0)) * state.rho(m, m - sl + sk);
          if (dk >= 1)  // b_k b_l
            aa(k, l) += std::sqrt(static_cast<double>(dl) * dk) * state.rho(m, m - sl - sk);
        }
      }
    }
  }
  mom.c_norm = nn - mom.mean.conjugate() * mom.mean.transpose();
  mom.m_anom = aa - mom.mean * mom.mean.transpose();
  return mom;
}

double FockOracle::expected_number(const DensityState& state,
                                   const std::vector<int>& modes) const {
  double out = 0.0;
  for (int m = 0; m < dim_; ++m) {
    int n = 0;
    for (int k : modes) n += digits_(m, k);
    out += n * state.rho(m, m).real();
  }
  return out;
}

double FockOracle::number_product(const DensityState& state,
                                  const std::vector<int>& modes_a,
                                  const std::vector<int>& modes_b) const {
  double out = 0.0;
  for (int m = 0; m < dim_; ++m) {
    int na = 0, nb = 0;
    for (int k : modes_a) na += digits_(m, k);
    for (int k : modes_b) nb += digits_(m, k);
    out += static_cast<double>(na) * nb * state.rho(m, m).real();
  }
  return out;
}

double FockOracle::normally_ordered_number_product(const DensityState& state,
                                                   const std::vector<int>& modes_a,
                                                   const std::vector<int>& modes_b) const {
  // :N_A N_B: = N_A N_B - N_{A intersect B}
  std::vector<int> common;
  for (int k : modes_a)
    for (int l : modes_b)
      if (k == l) common.push_back(k);
  return number_product(state, modes_a, modes_b) - expected_number(state, common);
}

double FockOracle::trace(const DensityState& state) const {
  return state.rho.real().trace();
}

double FockOracle::top_layer_population(const DensityState& state) const {
  double p = 0.0;
  for (int i : top_layer_) p += state.rho(i, i).real();
  return p;
}

Eigen::MatrixXcd FockOracle::hamiltonian_dense() const {
  const int cut = cfg_.cutoff;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (int m = 0; m < dim_; ++m) {
    double e = 0.0;
    for (int k = 0; k < cfg_.n_modes; ++k) {
      const double d = digits_(m, k);
      e += 0.5 * cfg_.kerr_g * d * (d - 1.0);
    }
    h(m, m) = e;
  }
  for (int k = 0; k + 1 < cfg_.n_modes; ++k) {
    const int s0 = strides_[k], s1 = strides_[k + 1];
    for (int m = 0; m < dim_; ++m) {
      const int d0 = digits_(m, k), d1 = digits_(m, k + 1);
      if (cfg_.hop_j != 0.0) {
        if (d1 >= 1 && d0 < cut)
          h(m - s1 + s0, m) += cfg_.hop_j * std::sqrt(d1 * (d0 + 1.0));
        if (d0 >= 1 && d1 < cut)
          h(m - s0 + s1, m) += cfg_.hop_j * std::sqrt(d0 * (d1 + 1.0));
      }
      if (cfg_.pair_kappa != 0.0) {
        if (d0 < cut && d1 < cut)
          h(m + s0 + s1, m) += cfg_.pair_kappa * std::sqrt((d0 + 1.0) * (d1 + 1.0));
        if (d0 >= 1 && d1 >= 1)
          h(m - s0 - s1, m) += cfg_.pair_kappa * std::sqrt(static_cast<double>(d0) * d1);
      }
    }
  }
  return h;
}

GaussianComparison compare_with_gaussian(const FockConfig& cfg,
                                         const Eigen::VectorXcd& alphas,
                                         double horizon, int sigma, int samples) {
  if (cfg.pair_kappa != 0.0)
    throw std::invalid_argument(
        "compare_with_gaussian covers the hop+Kerr dynamics (pair_kappa must be 0)");
  FockOracle oracle(cfg);
  DensityState rho = oracle.coherent_state(alphas);

  const int nm = cfg.n_modes;
  Eigen::MatrixXcd h_lin = Eigen::MatrixXcd::Zero(nm, nm);
  for (int k = 0; k + 1 < nm; ++k) {
    h_lin(k, k + 1) = cfg.hop_j;
    h_lin(k + 1, k) = cfg.hop_j;
  }
  Eigen::VectorXcd mean = alphas;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(nm, nm);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(nm, nm);

  const int total_steps = std::max(1, static_cast<int>(std::round(horizon / cfg.dt)));
  const int chunk = std::max(1, total_steps / std::max(1, samples));

  GaussianComparison cmp;
  int done = 0;
  while (done < total_steps) {
    const int steps = std::min(chunk, total_steps - done);
    rho = oracle.evolve(rho, steps * cfg.dt);
    evolve_moments_dense(mean, c, m, h_lin, cfg.kerr_g, sigma, cfg.gamma, cfg.n_th,
                         cfg.dt, steps);
    done += steps;

    const FockMoments ref = oracle.moments_of(rho);
    const double sb = std::max(ref.mean.cwiseAbs().maxCoeff(), 1.0);
    const double sc = std::max(ref.c_norm.cwiseAbs().maxCoeff(), 1.0);
    const double sm = std::max(ref.m_anom.cwiseAbs().maxCoeff(), 1.0);
    cmp.dev_mean = std::max(cmp.dev_mean, (mean - ref.mean).cwiseAbs().maxCoeff() / sb);
    cmp.dev_c = std::max(cmp.dev_c, (c - ref.c_norm).cwiseAbs().maxCoeff() / sc);
    cmp.dev_m = std::max(cmp.dev_m, (m - ref.m_anom).cwiseAbs().maxCoeff() / sm);
  }
  cmp.max_deviation = std::max({cmp.dev_mean, cmp.dev_c, cmp.dev_m});
  return cmp;
}

}  // namespace kerrsol
