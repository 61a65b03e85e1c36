#ifndef KERRSOL_FFT_HPP
#define KERRSOL_FFT_HPP

#include <Eigen/Dense>

namespace kerrsol {

// Unitary discrete Fourier transform with the centered kernel
//   F_{qk} = exp(+i omega_q xi_k) / sqrt(n) = (-1)^q exp(+2 pi i q k / n) / sqrt(n)
// (FFT index layout, grid centered at xi = 0). Wraps in-place FFTW plans;
// one instance per grid size, reusable across calls. Plan creation is not
// thread-safe, execution on distinct arrays is.
class SpectralTransform {
 public:
  explicit SpectralTransform(int n);
  ~SpectralTransform();

  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  int size() const { return n_; }

  void vec_to_freq(Eigen::VectorXcd& v) const;   // v <- F v
  void vec_to_space(Eigen::VectorXcd& v) const;  // v <- F^+ v
  void cmat_to_freq(Eigen::MatrixXcd& c) const;  // c <- F c F^+
  void cmat_to_space(Eigen::MatrixXcd& c) const;
  void mmat_to_freq(Eigen::MatrixXcd& m) const;  // m <- F m F^T
  void mmat_to_space(Eigen::MatrixXcd& m) const;

 private:
  struct Plans;
  void scale_outer(Eigen::MatrixXcd& a) const;

  int n_;
  Eigen::VectorXd sign_scale_;  // (-1)^q / sqrt(n)
  Plans* plans_;
};

}  // namespace kerrsol

#endif
