#include "kerrsol/pipeline.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kerrsol/dynamics.hpp"
#include "kerrsol/fock.hpp"

namespace kerrsol {

NarrowScan narrow_scan(const SpectralMoments& spec, double half_width, bool want_maps) {
  const int n = spec.size();
  NarrowScan scan;
  scan.eta11.setConstant(n, std::numeric_limits<double>::quiet_NaN());
  if (want_maps) {
    scan.eta12.setConstant(n, n, std::numeric_limits<double>::quiet_NaN());
    scan.eta_tilde12.setConstant(n, n, std::numeric_limits<double>::quiet_NaN());
    scan.tau_tilde12.setConstant(n, n, std::numeric_limits<double>::quiet_NaN());
  }

  // per-bin narrow windows
  std::vector<std::pair<int, int>> ranges(n);
  std::vector<double> ns(n), vns(n);
  for (int q = 0; q < n; ++q) {
    const double w = spec.freqs()[q];
    ranges[q] = spec.resolve(SpectralWindow(w - half_width, w + half_width));
    const auto [a, b] = ranges[q];
    ns[q] = spec.n_sum(a, b);
    vns[q] = spec.cov_sum(a, b, a, b);
    scan.eta11[q] = stats::eta_ii_of(vns[q], ns[q]);
  }

  double max_eta11 = -std::numeric_limits<double>::infinity();
  double max_abs_eta12 = 0.0;
  double min_eta_tilde = std::numeric_limits<double>::infinity();
  double min_tau_tilde = std::numeric_limits<double>::infinity();
  bool any_eta11 = false, any_pair = false;

  for (int q = 0; q < n; ++q)
    if (!std::isnan(scan.eta11[q])) {
      any_eta11 = true;
      max_eta11 = std::max(max_eta11, scan.eta11[q]);
    }

  for (int q1 = 0; q1 < n; ++q1) {
    const auto [a1, b1] = ranges[q1];
    for (int q2 = 0; q2 < n; ++q2) {
      const auto [a2, b2] = ranges[q2];
      const bool disjoint = b1 <= a2 || b2 <= a1;
      if (!disjoint) continue;
      const double cov = spec.cov_sum(a1, b1, a2, b2);
      const double e12 = stats::eta_12_of(cov, vns[q1] + ns[q1], vns[q2] + ns[q2]);
      const double et = stats::eta_tilde_of(vns[q1], vns[q2], cov, vns[q1] + ns[q1],
                                            vns[q2] + ns[q2]);
      const double tt = stats::tau_tilde_of(ns[q1], ns[q2], vns[q1], vns[q2], cov);
      if (want_maps) {
        scan.eta12(q1, q2) = e12;
        scan.eta_tilde12(q1, q2) = et;
        scan.tau_tilde12(q1, q2) = tt;
      }
      if (!std::isnan(e12)) {
        any_pair = true;
        max_abs_eta12 = std::max(max_abs_eta12, std::abs(e12));
      }
      if (!std::isnan(et)) min_eta_tilde = std::min(min_eta_tilde, et);
      if (!std::isnan(tt)) min_tau_tilde = std::min(min_tau_tilde, tt);
    }
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  scan.max_eta11 = any_eta11 ? max_eta11 : nan;
  scan.max_abs_eta12 = any_pair ? max_abs_eta12 : nan;
  scan.min_eta_tilde12 = std::isfinite(min_eta_tilde) ? min_eta_tilde : nan;
  scan.min_tau_tilde12 = std::isfinite(min_tau_tilde) ? min_tau_tilde : nan;
  return scan;
}

int RunTrajectory::index_of_time(double t, double tol) const {
  for (size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t) <= tol) return static_cast<int>(i);
  throw std::invalid_argument("no snapshot at t=" + std::to_string(t));
}

RunTrajectory analyze_run(const SimulationConfig& config, const PipelineOptions& opt) {
  config.validate();
  const GridSpec grid = config.grid();
  const GaussianFieldState initial = make_fundamental_soliton(grid, config);
  SplitStepIntegrator integrator(grid, config);

  RunTrajectory out;
  out.initial_total = total_photon_number(initial);
  const int n = grid.n_points();
  const int snapshots = static_cast<int>(std::round(config.t_final / config.snapshot_interval)) + 1;
  out.eta11_surface.resize(snapshots, n);
  out.freqs.resize(n);
  for (int r = 0; r < n; ++r) out.freqs[r] = grid.frequency(r);

  int index = 0;
  integrator.evolve_with(initial, [&](const GaussianFieldState& state) {
    const SpectralMoments spec = SpectralMoments::from_state(state);
    out.times.push_back(state.time);
    out.total_photons.push_back(total_photon_number(state));

    const NarrowScan scan = narrow_scan(spec, opt.narrow_half_width, false);
    out.eta11_surface.row(index) = scan.eta11.transpose();
    out.eta11_mid.push_back(scan.eta11[n / 2]);
    out.omega0.push_back(omega0_crossing(spec, opt.narrow_half_width));
    if (opt.pair_extrema) {
      out.narrow_min_eta_tilde.push_back(scan.min_eta_tilde12);
      out.narrow_min_tau_tilde.push_back(scan.min_tau_tilde12);
      out.narrow_max_abs_eta12.push_back(scan.max_abs_eta12);
      out.narrow_max_eta11.push_back(scan.max_eta11);
    }
    if (opt.physicality)
      out.min_eigenvalue_rel.push_back(state.min_cnorm_eigenvalue_rel());

    const double ref = out.initial_total;
    if (opt.sym_single) out.sym_single.push_back(optimize_symmetric_single(spec, ref));
    if (opt.sym_eta)
      out.sym_eta.push_back(optimize_symmetric_pair(spec, PairObjective::eta_tilde, ref));
    if (opt.sym_tau)
      out.sym_tau.push_back(optimize_symmetric_pair(spec, PairObjective::tau_tilde, ref));
    if (opt.asym_eta)
      out.asym_eta.push_back(
          optimize_asymmetric_pair(spec, PairObjective::eta_tilde, opt.coarsening, ref));
    if (opt.asym_tau)
      out.asym_tau.push_back(
          optimize_asymmetric_pair(spec, PairObjective::tau_tilde, opt.coarsening, ref));

    if (opt.progress) opt.progress(index, state.time);
    ++index;
  });
  return out;
}

std::pair<int, double> trajectory_min(const std::vector<double>& values) {
  int arg = -1;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) continue;
    if (values[i] < best) {
      best = values[i];
      arg = static_cast<int>(i);
    }
  }
  if (arg < 0) throw std::domain_error("trajectory has no defined values");
  return {arg, best};
}

OracleValidation run_oracle_validation() {
  OracleValidation v;
  auto add_case = [&v](const std::string& name, const GaussianComparison& cmp,
                       double bound) {
    OracleValidation::Case c;
    c.name = name;
    c.dev_mean = cmp.dev_mean;
    c.dev_c = cmp.dev_c;
    c.dev_m = cmp.dev_m;
    c.max_deviation = cmp.max_deviation;
    c.bound = bound;
    c.pass = cmp.max_deviation < bound;
    v.cases.push_back(c);
  };

  {
    FockConfig cfg;
    cfg.n_modes = 1;
    cfg.cutoff = 16;
    cfg.gamma = 0.1;
    cfg.n_th = 0.2;
    cfg.dt = 2e-3;
    Eigen::VectorXcd a(1);
    a[0] = std::complex<double>(1.1, -0.4);
    add_case("linear 1 mode (damping + thermal)", compare_with_gaussian(cfg, a, 1.0),
             1e-8);
  }
  {
    FockConfig cfg;
    cfg.n_modes = 2;
    cfg.cutoff = 14;
    cfg.hop_j = 0.4;
    cfg.gamma = 0.05;
    cfg.n_th = 0.1;
    cfg.dt = 2e-3;
    Eigen::VectorXcd a(2);
    a[0] = std::complex<double>(0.9, 0.3);
    a[1] = std::complex<double>(-0.5, 0.7);
    add_case("linear 2 modes (hopping + damping)", compare_with_gaussian(cfg, a, 1.0),
             1e-8);
  }
  {
    // weak Kerr gate: |beta|^2 = 4, g |beta|^2 t = 0.1
    FockConfig cfg;
    cfg.n_modes = 1;
    cfg.cutoff = 26;
    cfg.kerr_g = 0.0125;
    cfg.dt = 1e-3;
    Eigen::VectorXcd a(1);
    a[0] = 2.0;
    add_case("weak Kerr 1 mode (g|b|^2 t = 0.1)", compare_with_gaussian(cfg, a, 2.0),
             1e-2);
  }

  // closure-error convergence order in g at a fixed horizon
  {
    const double g0 = 0.0125;
    for (int k = 0; k < 3; ++k) {
      FockConfig cfg;
      cfg.n_modes = 1;
      cfg.cutoff = 26;
      cfg.kerr_g = g0 / (1 << k);
      cfg.dt = 1e-3;
      Eigen::VectorXcd a(1);
      a[0] = 2.0;
      const GaussianComparison cmp = compare_with_gaussian(cfg, a, 2.0);
      v.sweep_g.push_back(cfg.kerr_g);
      v.sweep_dev.push_back(cmp.max_deviation);
    }
    v.monotone = true;
    for (size_t i = 1; i < v.sweep_dev.size(); ++i)
      v.monotone = v.monotone && v.sweep_dev[i] < v.sweep_dev[i - 1];
    // least-squares slope of log(dev) against log(g)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = static_cast<int>(v.sweep_g.size());
    for (int i = 0; i < m; ++i) {
      const double x = std::log(v.sweep_g[i]);
      const double y = std::log(v.sweep_dev[i]);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    v.measured_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }

  v.pass = v.monotone && v.measured_order >= 2.0;
  for (const auto& c : v.cases) v.pass = v.pass && c.pass;
  return v;
}

}  // namespace kerrsol
