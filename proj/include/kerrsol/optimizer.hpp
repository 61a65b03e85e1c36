#ifndef KERRSOL_OPTIMIZER_HPP
#define KERRSOL_OPTIMIZER_HPP

#include <cstdint>

#include "kerrsol/spectral.hpp"

namespace kerrsol {

// Exhaustive searches over contiguous-bin windows. Window boundaries live
// on the bin-edge lattice (statistics are piecewise constant between
// edges, so nothing finer can help). Ties break toward the
// lexicographically smallest (lo1, hi1, lo2, hi2).

enum class PairObjective { eta_tilde, tau_tilde };

struct WindowSearchResult {
  double objective = 0.0;
  double time = 0.0;
  double lo1 = 0.0, hi1 = 0.0;
  double lo2 = 0.0, hi2 = 0.0;
  bool has_pair = false;
  double fraction1 = 0.0;  // <N_1> / reference total
  double fraction2 = 0.0;
  std::int64_t candidates = 0;

  SpectralWindow window1() const { return SpectralWindow(lo1, hi1); }
  SpectralWindow window2() const { return SpectralWindow(lo2, hi2); }
};

/// Minimizes eta_11 over center-symmetric windows (-Omega, Omega).
/// reference_total scales the photon fractions; pass the initial-pulse
/// total (<= 0 uses the snapshot total).
WindowSearchResult optimize_symmetric_single(const SpectralMoments& spec,
                                             double reference_total = 0.0);

/// Minimizes the objective over mirror pairs (O1, O1') and (-O1', -O1).
WindowSearchResult optimize_symmetric_pair(const SpectralMoments& spec,
                                           PairObjective objective,
                                           double reference_total = 0.0);

/// Minimizes the objective over all disjoint window pairs on the edge
/// lattice coarsened by the given stride, then refines the winner at full
/// resolution (each endpoint scanned over +-coarsening bins).
WindowSearchResult optimize_asymmetric_pair(const SpectralMoments& spec,
                                            PairObjective objective = PairObjective::eta_tilde,
                                            int coarsening = 2,
                                            double reference_total = 0.0);

}  // namespace kerrsol

#endif
