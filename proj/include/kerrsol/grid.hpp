#ifndef KERRSOL_GRID_HPP
#define KERRSOL_GRID_HPP

#include <vector>

namespace kerrsol {

// Periodic spatial grid in soliton-width units: xi_k = (k - n/2)*dx for
// k = 0..n-1, so the pulse center xi = 0 lies on a grid point. Frequencies
// are quoted in units of omega0 = 1/x0; the discrete bins are
// omega_q = 2*pi*q/(n*dx), q = -n/2 .. n/2-1.
class GridSpec {
 public:
  GridSpec(int n_points, double dx);

  int n_points() const { return n_; }
  double dx() const { return dx_; }
  double length() const { return n_ * dx_; }
  double coordinate(int k) const { return (k - n_ / 2) * dx_; }

  double bin_spacing() const { return spacing_; }
  /// Physical frequency of row r when bins are listed in ascending order
  /// (row 0 is q = -n/2, row n-1 is q = n/2-1).
  double frequency(int row) const { return (row - n_ / 2) * spacing_; }
  /// Row in ascending-frequency order for the FFT-layout index q in [0, n).
  int row_of_fft_index(int q) const { return (q + n_ / 2) % n_; }
  int fft_index_of_row(int row) const { return (row + n_ / 2) % n_; }

  bool operator==(const GridSpec&) const = default;

 private:
  int n_;
  double dx_;
  double spacing_;
};

// Contiguous frequency interval [lo, hi) in units of omega0. A bin belongs
// to the window iff lo - eps <= omega_q < hi - eps with eps = 1e-9, which
// makes bin assignment deterministic and tie-free when an endpoint falls
// exactly on a bin frequency.
class SpectralWindow {
 public:
  SpectralWindow(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  /// Ascending-order row range [first, last) of the bins inside the window.
  /// Throws if the resolved bin set is empty.
  std::pair<int, int> resolve(const GridSpec& grid) const;

  static constexpr double edge_epsilon = 1e-9;

 private:
  double lo_;
  double hi_;
};

}  // namespace kerrsol

#endif
