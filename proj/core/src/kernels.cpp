#include "torus_lab/kernels.hpp"

#include <cmath>
#include <map>

namespace torus_lab {

TorusFunction kernel(const KernelSpec& spec, std::size_t n) {
  if (spec.M <= 0) {
    throw InvalidParameterError("kernel order M must be positive, got " +
                                std::to_string(spec.M));
  }
  if (2 * spec.M >= static_cast<long>(n)) {
    throw BandLimitError("kernel order M=" + std::to_string(spec.M) +
                         " needs 2M < n, got n=" + std::to_string(n));
  }
  std::map<long, cplx> coeffs;
  for (long m = -spec.M; m <= spec.M; ++m) {
    double c = 1.0;
    if (spec.kind == KernelSpec::Kind::Fejer) {
      c = 1.0 - static_cast<double>(std::labs(m)) /
                    static_cast<double>(spec.M + 1);
    }
    coeffs[m] = cplx{c, 0.0};
  }
  return TorusFunction::from_fourier(coeffs, n);
}

TorusFunction convolve(const TorusFunction& f, const TorusFunction& g) {
  if (f.size() != g.size()) {
    throw GridMismatchError("convolve: grids " + std::to_string(f.size()) +
                            " vs " + std::to_string(g.size()));
  }
  std::vector<cplx> packed(f.size());
  const auto& fc = f.packed_coeffs();
  const auto& gc = g.packed_coeffs();
  for (std::size_t m = 0; m < packed.size(); ++m) packed[m] = fc[m] * gc[m];
  return TorusFunction::from_packed_fourier(std::move(packed));
}

TorusFunction lp_project(const TorusFunction& f, long j) {
  const std::size_t n = f.size();
  const long half = static_cast<long>(n) / 2;
  if (j < 0) throw InvalidParameterError("lp_project: j must be >= 0");
  if (j == 0) {
    return TorusFunction::from_fourier({{0, f.mean()}}, n);
  }
  if (j >= 63 || (long{1} << j) > half) {
    throw BandLimitError("lp_project: 2^j exceeds n/2 (j=" +
                         std::to_string(j) + ", n=" + std::to_string(n) + ")");
  }
  const long lo = long{1} << (j - 1);
  const long hi = long{1} << j;  // exclusive
  std::map<long, cplx> coeffs;
  for (long xi = -half + 1; xi <= half; ++xi) {
    const long a = std::labs(xi);
    if (a >= lo && a < hi) coeffs[xi] = f.coeff(xi);
  }
  return TorusFunction::from_fourier(coeffs, n);
}

}  // namespace torus_lab
