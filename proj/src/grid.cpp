#include "kerrsol/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kerrsol {

GridSpec::GridSpec(int n_points, double dx) : n_(n_points), dx_(dx) {
  if (n_points < 8 || n_points % 2 != 0)
    throw std::invalid_argument("n_points must be even and >= 8");
  if (!(dx > 0.0)) throw std::invalid_argument("dx must be positive");
  spacing_ = 2.0 * std::numbers::pi / (n_ * dx_);
}

SpectralWindow::SpectralWindow(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo < hi)) throw std::invalid_argument("window requires lo < hi");
}

std::pair<int, int> SpectralWindow::resolve(const GridSpec& grid) const {
  const int n = grid.n_points();
  const double d = grid.bin_spacing();
  // Smallest row with omega_row >= lo - eps and smallest row with
  // omega_row >= hi - eps; the window is the half-open range in between.
  const int first = static_cast<int>(std::ceil((lo_ - edge_epsilon) / d)) + n / 2;
  const int last = static_cast<int>(std::ceil((hi_ - edge_epsilon) / d)) + n / 2;
  const int a = std::max(first, 0);
  const int b = std::min(last, n);
  if (a >= b) throw std::invalid_argument("window resolves to an empty bin set");
  return {a, b};
}

}  // namespace kerrsol
