#include "torus_lab/fft.hpp"

#include <map>
#include <mutex>

namespace torus_lab {

Fft::Fft(std::size_t n) : n_(n) {
  if (!is_power_of_two(n)) {
    throw InvalidParameterError("FFT size must be a power of two, got " +
                                std::to_string(n));
  }
  bitrev_.resize(n);
  std::size_t log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < log2n; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
    bitrev_[i] = r;
  }
  twiddle_.resize(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j)
    twiddle_[j] = unit_phase(-static_cast<double>(j) / static_cast<double>(n));
}

void Fft::transform(cplx* a, bool inverse) const {
  const std::size_t n = n_;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = bitrev_[i];
    if (i < r) std::swap(a[i], a[r]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    const std::size_t half = len / 2;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        cplx w = twiddle_[j * stride];
        if (inverse) w = std::conj(w);
        cplx u = a[start + j];
        cplx v = a[start + j + half] * w;
        a[start + j] = u + v;
        a[start + j + half] = u - v;
      }
    }
  }
}

void Fft::inverse(cplx* data) const {
  transform(data, /*inverse=*/true);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) data[i] *= scale;
}

const Fft& Fft::plan(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, Fft> plans;
  std::lock_guard<std::mutex> lock(mu);
  auto it = plans.find(n);
  if (it == plans.end()) it = plans.emplace(n, Fft(n)).first;
  return it->second;
}

}  // namespace torus_lab
