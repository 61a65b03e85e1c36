#include "kerrsol/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace kerrsol {

struct SpectralTransform::Plans {
  fftw_plan vec_fwd = nullptr, vec_bwd = nullptr;
  fftw_plan cols_fwd = nullptr, cols_bwd = nullptr;
  fftw_plan rows_fwd = nullptr, rows_bwd = nullptr;
  fftw_complex* buf = nullptr;
};

namespace {
fftw_complex* as_fftw(Eigen::VectorXcd& v) { return reinterpret_cast<fftw_complex*>(v.data()); }
fftw_complex* as_fftw(Eigen::MatrixXcd& m) { return reinterpret_cast<fftw_complex*>(m.data()); }
}  // namespace

SpectralTransform::SpectralTransform(int n) : n_(n), plans_(new Plans) {
  if (n < 2) throw std::invalid_argument("transform size must be >= 2");
  sign_scale_.resize(n);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
  for (int q = 0; q < n; ++q) sign_scale_[q] = (q % 2 == 0 ? inv_sqrt : -inv_sqrt);

  plans_->buf = fftw_alloc_complex(static_cast<size_t>(n) * n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  // In-place 1-d plans reused on arbitrary arrays through fftw_execute_dft.
  plans_->vec_fwd = fftw_plan_dft_1d(n, plans_->buf, plans_->buf, FFTW_FORWARD, flags);
  plans_->vec_bwd = fftw_plan_dft_1d(n, plans_->buf, plans_->buf, FFTW_BACKWARD, flags);
  // Column-major n x n matrices: columns are contiguous (stride 1, dist n),
  // rows are strided (stride n, dist 1).
  plans_->cols_fwd = fftw_plan_many_dft(1, &n, n, plans_->buf, nullptr, 1, n,
                                        plans_->buf, nullptr, 1, n, FFTW_FORWARD, flags);
  plans_->cols_bwd = fftw_plan_many_dft(1, &n, n, plans_->buf, nullptr, 1, n,
                                        plans_->buf, nullptr, 1, n, FFTW_BACKWARD, flags);
  plans_->rows_fwd = fftw_plan_many_dft(1, &n, n, plans_->buf, nullptr, n, 1,
                                        plans_->buf, nullptr, n, 1, FFTW_FORWARD, flags);
  plans_->rows_bwd = fftw_plan_many_dft(1, &n, n, plans_->buf, nullptr, n, 1,
                                        plans_->buf, nullptr, n, 1, FFTW_BACKWARD, flags);
}

SpectralTransform::~SpectralTransform() {
  fftw_destroy_plan(plans_->vec_fwd);
  fftw_destroy_plan(plans_->vec_bwd);
  fftw_destroy_plan(plans_->cols_fwd);
  fftw_destroy_plan(plans_->cols_bwd);
  fftw_destroy_plan(plans_->rows_fwd);
  fftw_destroy_plan(plans_->rows_bwd);
  fftw_free(plans_->buf);
  delete plans_;
}

void SpectralTransform::scale_outer(Eigen::MatrixXcd& a) const {
  // a_{qq'} *= s_q s_{q'} with s = sign_scale_.
  for (int c = 0; c < n_; ++c) a.col(c) *= sign_scale_[c];
  for (int c = 0; c < n_; ++c) a.col(c).array() *= sign_scale_.array();
}

void SpectralTransform::vec_to_freq(Eigen::VectorXcd& v) const {
  fftw_execute_dft(plans_->vec_bwd, as_fftw(v), as_fftw(v));
  v.array() *= sign_scale_.array();
}

void SpectralTransform::vec_to_space(Eigen::VectorXcd& v) const {
  v.array() *= sign_scale_.array();
  fftw_execute_dft(plans_->vec_fwd, as_fftw(v), as_fftw(v));
}

void SpectralTransform::cmat_to_freq(Eigen::MatrixXcd& c) const {
  fftw_execute_dft(plans_->cols_bwd, as_fftw(c), as_fftw(c));
  fftw_execute_dft(plans_->rows_fwd, as_fftw(c), as_fftw(c));
  scale_outer(c);
}

void SpectralTransform::cmat_to_space(Eigen::MatrixXcd& c) const {
  scale_outer(c);
  fftw_execute_dft(plans_->cols_fwd, as_fftw(c), as_fftw(c));
  fftw_execute_dft(plans_->rows_bwd, as_fftw(c), as_fftw(c));
}

void SpectralTransform::mmat_to_freq(Eigen::MatrixXcd& m) const {
  fftw_execute_dft(plans_->cols_bwd, as_fftw(m), as_fftw(m));
  fftw_execute_dft(plans_->rows_bwd, as_fftw(m), as_fftw(m));
  scale_outer(m);
}

void SpectralTransform::mmat_to_space(Eigen::MatrixXcd& m) const {
  scale_outer(m);
  fftw_execute_dft(plans_->cols_fwd, as_fftw(m), as_fftw(m));
  fftw_execute_dft(plans_->rows_fwd, as_fftw(m), as_fftw(m));
}

}  // namespace kerrsol
