#include "torus_lab/random_fn.hpp"

#include <cmath>
#include <map>

namespace torus_lab {

TorusFunction random_trig_function(std::mt19937_64& rng, std::size_t n,
                                   long band, double bound) {
  if (band < 0 || 2 * band >= static_cast<long>(n)) {
    throw BandLimitError("random_trig_function: need 0 <= band < n/2");
  }
  if (!(bound > 0.0)) {
    throw InvalidParameterError("random_trig_function: bound > 0");
  }
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::map<long, cplx> coeffs;
  for (long xi = -band; xi <= band; ++xi) {
    const double re = u(rng);
    const double im = u(rng);
    coeffs[xi] = cplx{re, im};
  }
  TorusFunction f = TorusFunction::from_fourier(coeffs, n);
  double sup = 0.0;
  for (const auto& s : f.samples()) sup = std::max(sup, std::abs(s));
  if (sup == 0.0) return f;
  const double scale = bound / (sup * (1.0 + 1e-9));
  std::map<long, cplx> scaled;
  for (const auto& [xi, c] : coeffs) scaled[xi] = c * scale;
  return TorusFunction::from_fourier(scaled, n);
}

TorusFunction random_trig_function(std::uint64_t seed, std::size_t n, long band,
                                   double bound) {
  std::mt19937_64 rng(seed);
  return random_trig_function(rng, n, band, bound);
}

}  // namespace torus_lab
