#include "kerrsol/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace kerrsol {

namespace {

double pair_objective_of(PairObjective obj, double n1, double n2, double vn1,
                         double vn2, double cov) {
  if (obj == PairObjective::eta_tilde)
    return stats::eta_tilde_of(vn1, vn2, cov, vn1 + n1, vn2 + n2);
  return stats::tau_tilde_of(n1, n2, vn1, vn2, cov);
}

void check_fresh(double search_value, double fresh_value) {
  const double scale = std::max({std::abs(search_value), std::abs(fresh_value), 1.0});
  if (std::abs(search_value - fresh_value) > 1e-12 * scale)
    throw std::runtime_error("optimizer result does not match a fresh window evaluation");
}

double reference_or_total(const SpectralMoments& spec, double reference_total) {
  return reference_total > 0.0 ? reference_total : spec.total_photons();
}

}  // namespace

WindowSearchResult optimize_symmetric_single(const SpectralMoments& spec,
                                             double reference_total) {
  const int n = spec.size();
  const int mid = n / 2;
  WindowSearchResult best;
  bool found = false;
  double best_val = 0.0;
  int best_m = -1;

  for (int m = 0; m < mid; ++m) {
    const int a = mid - m, b = mid + m + 1;
    const double val = stats::eta_ii_of(spec.cov_sum(a, b, a, b), spec.n_sum(a, b));
    ++best.candidates;
    if (std::isnan(val)) continue;
    if (!found || val < best_val) {
      found = true;
      best_val = val;
      best_m = m;
    }
  }
  if (!found) throw std::domain_error("no window with positive variance");

  const int a = mid - best_m, b = mid + best_m + 1;
  best.objective = best_val;
  best.time = spec.time();
  best.lo1 = spec.edge_frequency(a);
  best.hi1 = spec.edge_frequency(b);
  best.fraction1 = spec.n_sum(a, b) / reference_or_total(spec, reference_total);
  check_fresh(best_val, eta_ii(spec, best.window1()));
  return best;
}

WindowSearchResult optimize_symmetric_pair(const SpectralMoments& spec,
                                           PairObjective objective,
                                           double reference_total) {
  const int n = spec.size();
  const int mid = n / 2;
  WindowSearchResult best;
  bool found = false;
  double best_val = 0.0;
  int best_a = -1, best_b = -1;

  for (int a = mid + 1; a < n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      const int ma = n - b + 1, mb = n - a + 1;  // mirror rows
      const double n1 = spec.n_sum(a, b);
      const double n2 = spec.n_sum(ma, mb);
      const double vn1 = spec.cov_sum(a, b, a, b);
      const double vn2 = spec.cov_sum(ma, mb, ma, mb);
      const double cov = spec.cov_sum(a, b, ma, mb);
      const double val = pair_objective_of(objective, n1, n2, vn1, vn2, cov);
      ++best.candidates;
      if (std::isnan(val)) continue;
      if (!found || val < best_val) {
        found = true;
        best_val = val;
        best_a = a;
        best_b = b;
      }
    }
  }
  if (!found) throw std::domain_error("no window pair with defined objective");

  const int ma = n - best_b + 1, mb = n - best_a + 1;
  best.objective = best_val;
  best.time = spec.time();
  best.has_pair = true;
  best.lo1 = spec.edge_frequency(best_a);
  best.hi1 = spec.edge_frequency(best_b);
  best.lo2 = spec.edge_frequency(ma);
  best.hi2 = spec.edge_frequency(mb);
  const double total = reference_or_total(spec, reference_total);
  best.fraction1 = spec.n_sum(best_a, best_b) / total;
  best.fraction2 = spec.n_sum(ma, mb) / total;
  check_fresh(best_val, objective == PairObjective::eta_tilde
                            ? eta_tilde_12(spec, best.window1(), best.window2())
                            : tau_tilde_12(spec, best.window1(), best.window2()));
  return best;
}

WindowSearchResult optimize_asymmetric_pair(const SpectralMoments& spec,
                                            PairObjective objective, int coarsening,
                                            double reference_total) {
  if (coarsening < 1) throw std::invalid_argument("coarsening must be >= 1");
  const int n = spec.size();

  // window self-statistics for every edge pair, O(n^2) memory
  std::vector<double> ntab(static_cast<size_t>(n + 1) * (n + 1));
  std::vector<double> vtab(static_cast<size_t>(n + 1) * (n + 1));
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      ntab[a * (n + 1) + b] = spec.n_sum(a, b);
      vtab[a * (n + 1) + b] = spec.cov_sum(a, b, a, b);
    }

  std::int64_t candidates = 0;
  bool found = false;
  double best_val = 0.0;
  int w[4] = {-1, -1, -1, -1};

  auto consider = [&](int a1, int b1, int a2, int b2) {
    const double n1 = ntab[a1 * (n + 1) + b1];
    const double n2 = ntab[a2 * (n + 1) + b2];
    const double vn1 = vtab[a1 * (n + 1) + b1];
    const double vn2 = vtab[a2 * (n + 1) + b2];
    const double cov = spec.cov_sum(a1, b1, a2, b2);
    const double val = pair_objective_of(objective, n1, n2, vn1, vn2, cov);
    ++candidates;
    if (std::isnan(val)) return;
    if (!found || val < best_val) {
      found = true;
      best_val = val;
      w[0] = a1; w[1] = b1; w[2] = a2; w[3] = b2;
    }
  };

  std::vector<int> edges;
  for (int e = 0; e <= n; e += coarsening) edges.push_back(e);
  if (edges.back() != n) edges.push_back(n);
  const int ne = static_cast<int>(edges.size());

  for (int i1 = 0; i1 + 2 < ne; ++i1)
    for (int i2 = i1 + 1; i2 + 1 < ne; ++i2)
      for (int i3 = i2; i3 + 1 < ne; ++i3)
        for (int i4 = i3 + 1; i4 < ne; ++i4)
          consider(edges[i1], edges[i2], edges[i3], edges[i4]);
  if (!found) throw std::domain_error("no window pair with defined objective");

  if (coarsening > 1) {
    const int c = coarsening;
    const int base[4] = {w[0], w[1], w[2], w[3]};
    for (int a1 = std::max(0, base[0] - c); a1 <= std::min(n, base[0] + c); ++a1)
      for (int b1 = std::max(a1 + 1, base[1] - c); b1 <= std::min(n, base[1] + c); ++b1)
        for (int a2 = std::max(b1, base[2] - c); a2 <= std::min(n, base[2] + c); ++a2)
          for (int b2 = std::max(a2 + 1, base[3] - c); b2 <= std::min(n, base[3] + c); ++b2)
            consider(a1, b1, a2, b2);
  }

  WindowSearchResult best;
  best.objective = best_val;
  best.time = spec.time();
  best.has_pair = true;
  best.candidates = candidates;
  best.lo1 = spec.edge_frequency(w[0]);
  best.hi1 = spec.edge_frequency(w[1]);
  best.lo2 = spec.edge_frequency(w[2]);
  best.hi2 = spec.edge_frequency(w[3]);
  const double total = reference_or_total(spec, reference_total);
  best.fraction1 = ntab[w[0] * (n + 1) + w[1]] / total;
  best.fraction2 = ntab[w[2] * (n + 1) + w[3]] / total;
  check_fresh(best_val, objective == PairObjective::eta_tilde
                            ? eta_tilde_12(spec, best.window1(), best.window2())
                            : tau_tilde_12(spec, best.window1(), best.window2()));
  return best;
}

}  // namespace kerrsol
