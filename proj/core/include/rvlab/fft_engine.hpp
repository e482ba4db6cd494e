#pragma once

#include <complex>
#include <vector>

namespace rvlab {

// Unnormalized 2D complex FFT of size n x n (row-major), FFTW behind a
// copy-in/copy-out wrapper. Plans use FFTW_ESTIMATE only: measured plans
// may pick different algorithms between runs and break bit-for-bit
// reproducibility of outputs.
class Fft2D {
 public:
  explicit Fft2D(int n);
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  int size() const { return n_; }
  void forward(const std::vector<std::complex<double>>& in,
               std::vector<std::complex<double>>& out);
  void backward(const std::vector<std::complex<double>>& in,
                std::vector<std::complex<double>>& out);

 private:
  int n_;
  void* buf_;       // fftw_complex*
  void* plan_fwd_;  // fftw_plan
  void* plan_bwd_;
};

}  // namespace rvlab
