#include "rvlab/fft_engine.hpp"

#include <fftw3.h>

#include <cstring>
#include <stdexcept>

namespace rvlab {

Fft2D::Fft2D(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("Fft2D: size must be at least 2");
  std::size_t total = static_cast<std::size_t>(n) * n;
  buf_ = fftw_malloc(sizeof(fftw_complex) * total);
  if (!buf_) throw std::bad_alloc();
  auto* b = static_cast<fftw_complex*>(buf_);
  plan_fwd_ = fftw_plan_dft_2d(n, n, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_2d(n, n, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("Fft2D: planning failed");
}

Fft2D::~Fft2D() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_);
}

void Fft2D::forward(const std::vector<std::complex<double>>& in,
                    std::vector<std::complex<double>>& out) {
  std::size_t total = static_cast<std::size_t>(n_) * n_;
  if (in.size() != total) throw std::invalid_argument("Fft2D::forward: size mismatch");
  std::memcpy(buf_, in.data(), total * sizeof(fftw_complex));
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  out.resize(total);
  std::memcpy(out.data(), buf_, total * sizeof(fftw_complex));
}

void Fft2D::backward(const std::vector<std::complex<double>>& in,
                     std::vector<std::complex<double>>& out) {
  std::size_t total = static_cast<std::size_t>(n_) * n_;
  if (in.size() != total) throw std::invalid_argument("Fft2D::backward: size mismatch");
  std::memcpy(buf_, in.data(), total * sizeof(fftw_complex));
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  out.resize(total);
  std::memcpy(out.data(), buf_, total * sizeof(fftw_complex));
}

}  // namespace rvlab
