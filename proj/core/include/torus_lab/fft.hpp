#pragma once

#include <vector>

#include "torus_lab/common.hpp"

namespace torus_lab {

// Iterative radix-2 complex FFT with a cached twiddle table per size.
// forward(): X[m] = sum_j x[j] e(-m j / n)   (unnormalized)
// inverse(): x[j] = (1/n) sum_m X[m] e(m j / n)
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(cplx* data) const { transform(data, /*inverse=*/false); }
  void inverse(cplx* data) const;
  // Unnormalized inverse: x[j] = sum_m X[m] e(m j / n).
  void backward(cplx* data) const { transform(data, /*inverse=*/true); }

  // Shared per-size instances; cheap to call repeatedly.
  static const Fft& plan(std::size_t n);

 private:
  void transform(cplx* data, bool inverse) const;

  std::size_t n_;
  std::vector<std::size_t> bitrev_;
  std::vector<cplx> twiddle_;  // e(-j/n), j = 0..n/2-1
};

}  // namespace torus_lab
