#include "torus_lab/torus_fn.hpp"

#include <algorithm>
#include <cmath>

#include "torus_lab/fft.hpp"

namespace torus_lab {

namespace {

void check_size(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw InvalidParameterError("grid size must be a power of two, got " +
                                std::to_string(n));
  }
}

std::size_t fft_index(long xi, std::size_t n) {
  long m = xi % static_cast<long>(n);
  if (m < 0) m += static_cast<long>(n);
  return static_cast<std::size_t>(m);
}

}  // namespace

TorusFunction TorusFunction::from_samples(std::vector<cplx> samples) {
  const std::size_t n = samples.size();
  check_size(n);
  std::vector<cplx> coeffs = samples;
  Fft::plan(n).forward(coeffs.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& c : coeffs) c *= scale;
  return TorusFunction(n, std::move(samples), std::move(coeffs));
}

TorusFunction TorusFunction::from_fourier(const std::map<long, cplx>& coeffs,
                                          std::size_t n) {
  check_size(n);
  const long half = static_cast<long>(n) / 2;
  std::vector<cplx> packed(n, cplx{0.0, 0.0});
  for (const auto& [xi, c] : coeffs) {
    if (xi < -half || xi > half) {
      throw BandLimitError("frequency " + std::to_string(xi) +
                           " outside band (-" + std::to_string(half) + ", " +
                           std::to_string(half) + "] for n=" +
                           std::to_string(n));
    }
    packed[fft_index(xi, n)] += c;
  }
  return from_packed_fourier(std::move(packed));
}

TorusFunction TorusFunction::from_packed_fourier(std::vector<cplx> coeffs) {
  const std::size_t n = coeffs.size();
  check_size(n);
  std::vector<cplx> samples = coeffs;
  Fft::plan(n).backward(samples.data());
  return TorusFunction(n, std::move(samples), std::move(coeffs));
}

cplx TorusFunction::coeff(long xi) const {
  const long half = static_cast<long>(n_) / 2;
  if (xi < -half || xi > half) {
    throw BandLimitError("frequency " + std::to_string(xi) +
                         " outside band for n=" + std::to_string(n_));
  }
  return coeffs_[fft_index(xi, n_)];
}

long TorusFunction::active_band() const {
  const long half = static_cast<long>(n_) / 2;
  long band = 0;
  for (long xi = -half + 1; xi <= half; ++xi) {
    if (std::abs(coeffs_[fft_index(xi, n_)]) > 1e-14) {
      band = std::max(band, std::labs(xi));
    }
  }
  return band;
}

bool TorusFunction::is_one_bounded() const {
  for (const auto& s : samples_) {
    if (std::abs(s) > 1.0 + 1e-9) return false;
  }
  return true;
}

TorusFunction TorusFunction::translate(double t) const {
  const long half = static_cast<long>(n_) / 2;
  if (std::abs(coeffs_[fft_index(half, n_)]) > 1e-12) {
    throw BandLimitError(
        "translate requires a zero Nyquist coefficient (xi = n/2)");
  }
  std::vector<cplx> shifted(n_);
  for (long xi = -half + 1; xi <= half; ++xi) {
    const std::size_t m = fft_index(xi, n_);
    shifted[m] = coeffs_[m] * unit_phase_mod1(static_cast<long double>(xi) * t);
  }
  return from_packed_fourier(std::move(shifted));
}

cplx TorusFunction::operator()(double x) const {
  const long half = static_cast<long>(n_) / 2;
  cplx acc{0.0, 0.0};
  for (long xi = -half + 1; xi <= half; ++xi) {
    const cplx c = coeffs_[fft_index(xi, n_)];
    if (c == cplx{0.0, 0.0}) continue;
    acc += c * unit_phase_mod1(static_cast<long double>(xi) * x);
  }
  return acc;
}

TorusFunction TorusFunction::conjugate() const {
  std::vector<cplx> samples(n_);
  for (std::size_t j = 0; j < n_; ++j) samples[j] = std::conj(samples_[j]);
  return from_samples(std::move(samples));
}

TorusFunction TorusFunction::pointwise_mul(const TorusFunction& other) const {
  if (other.n_ != n_) {
    throw GridMismatchError("pointwise_mul: grids " + std::to_string(n_) +
                            " vs " + std::to_string(other.n_));
  }
  std::vector<cplx> samples(n_);
  for (std::size_t j = 0; j < n_; ++j) samples[j] = samples_[j] * other.samples_[j];
  return from_samples(std::move(samples));
}

double norm(const TorusFunction& f, NormKind kind) {
  const std::size_t n = f.size();
  switch (kind.tag) {
    case NormKind::Tag::Lp: {
      const double p = kind.param;
      if (p < 1.0) {
        throw InvalidParameterError("Lp norm requires p >= 1, got " +
                                    std::to_string(p));
      }
      if (std::isinf(p)) return norm(f, NormKind::Linf());
      double acc = 0.0;
      for (const auto& s : f.samples()) acc += std::pow(std::abs(s), p);
      return std::pow(acc / static_cast<double>(n), 1.0 / p);
    }
    case NormKind::Tag::Linf: {
      double m = 0.0;
      for (const auto& s : f.samples()) m = std::max(m, std::abs(s));
      return m;
    }
    case NormKind::Tag::SobolevNeg: {
      const double sigma = kind.param;
      if (!(sigma > 0.0)) {
        throw InvalidParameterError("SobolevNeg requires sigma > 0");
      }
      const long half = static_cast<long>(n) / 2;
      double acc = 0.0;
      for (long xi = -half + 1; xi <= half; ++xi) {
        const double a = std::abs(f.coeff(xi));
        if (a == 0.0) continue;
        acc += a * a *
               std::pow(1.0 + static_cast<double>(xi) * xi, -sigma / 2.0);
      }
      return std::sqrt(acc);
    }
    case NormKind::Tag::U2Fourier: {
      double acc = 0.0;
      for (const auto& c : f.packed_coeffs()) {
        const double a2 = std::norm(c);
        acc += a2 * a2;
      }
      return std::pow(acc, 0.25);
    }
  }
  throw InvalidParameterError("unknown norm kind");
}

cplx inner_product(const TorusFunction& f, const TorusFunction& g) {
  if (f.size() != g.size()) {
    throw GridMismatchError("inner_product: mismatched grids");
  }
  cplx acc{0.0, 0.0};
  const auto& fc = f.packed_coeffs();
  const auto& gc = g.packed_coeffs();
  for (std::size_t m = 0; m < fc.size(); ++m) acc += fc[m] * std::conj(gc[m]);
  return acc;
}

}  // namespace torus_lab
