#include "torus_lab/gowers.hpp"

#include <cmath>
#include <complex>
#include <cstdint>

namespace torus_lab {

namespace {

constexpr std::uint64_t kDirectOpCap = 1ull << 28;

double direct_u1(const TorusFunction& f) { return std::abs(f.mean()); }

// avg over x of prod_w C^{|w|} f(x + w.h) for fixed grid offsets; shifts are
// sample-index rotations, so the grid average is the exact integral as long as
// the integrand band fits in (-n/2, n/2).
double direct_norm(const TorusFunction& f, int s) {
  const std::size_t n = f.size();
  const auto& v = f.samples();
  auto corner = [&](std::size_t x, std::size_t off, bool conj) {
    const cplx z = v[(x + off) % n];
    return conj ? std::conj(z) : z;
  };
  cplx acc{0.0, 0.0};
  if (s == 1) {
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t x = 0; x < n; ++x)
        acc += corner(x, 0, false) * corner(x, h, true);
  } else if (s == 2) {
    for (std::size_t h1 = 0; h1 < n; ++h1)
      for (std::size_t h2 = 0; h2 < n; ++h2)
        for (std::size_t x = 0; x < n; ++x)
          acc += corner(x, 0, false) * corner(x, h1, true) *
                 corner(x, h2, true) * corner(x, h1 + h2, false);
  } else {
    for (std::size_t h1 = 0; h1 < n; ++h1)
      for (std::size_t h2 = 0; h2 < n; ++h2)
        for (std::size_t h3 = 0; h3 < n; ++h3)
          for (std::size_t x = 0; x < n; ++x)
            acc += corner(x, 0, false) * corner(x, h1, true) *
                   corner(x, h2, true) * corner(x, h1 + h2, false) *
                   corner(x, h3, true) * corner(x, h1 + h3, false) *
                   corner(x, h2 + h3, false) * corner(x, h1 + h2 + h3, true);
  }
  double scale = 1.0;
  for (int r = 0; r <= s; ++r) scale /= static_cast<double>(n);
  const double raw = std::max(0.0, acc.real() * scale);
  return std::pow(raw, 1.0 / static_cast<double>(1 << s));
}

double fourier_u2(const TorusFunction& f) {
  return norm(f, NormKind::U2Fourier());
}

double recursive_pow(const TorusFunction& f, int s) {
  // Returns ||f||_{U^s}^{2^s}. Base case via the l^4 identity:
  // avg_h |mean(Delta_h f)|^2 = sum_xi |fhat(xi)|^4 (exact on the grid).
  if (s == 2) {
    const double u2 = fourier_u2(f);
    return u2 * u2 * u2 * u2;
  }
  const std::size_t n = f.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double h = static_cast<double>(j) / static_cast<double>(n);
    acc += recursive_pow(mult_derivative(f, h), s - 1);
  }
  return acc / static_cast<double>(n);
}

}  // namespace

TorusFunction mult_derivative(const TorusFunction& f, double h) {
  return f.pointwise_mul(f.translate(h).conjugate());
}

double gowers_norm(const TorusFunction& f, int s, GowersMethod method) {
  if (s < 1) throw InvalidParameterError("gowers_norm: s must be >= 1");
  if (s == 1) return direct_u1(f);
  switch (method) {
    case GowersMethod::Fourier:
      if (s != 2) {
        throw InvalidParameterError(
            "gowers_norm: Fourier method is defined only at s = 2");
      }
      return fourier_u2(f);
    case GowersMethod::Direct: {
      if (s > 3) {
        throw InvalidParameterError("gowers_norm: Direct supports s <= 3");
      }
      std::uint64_t ops = 1;
      for (int r = 0; r <= s; ++r) ops *= f.size();
      if (f.size() > 256 || ops > kDirectOpCap) {
        throw BudgetError(ops, kDirectOpCap);
      }
      return direct_norm(f, s);
    }
    case GowersMethod::Recursive: {
      if (s > 4) {
        throw InvalidParameterError("gowers_norm: Recursive supports s <= 4");
      }
      std::uint64_t ops = f.size();  // per-level FFT work ~ n each
      for (int r = 2; r < s; ++r) ops *= f.size();
      if (ops > kDirectOpCap) {
        throw BudgetError(ops, kDirectOpCap);
      }
      const double p = recursive_pow(f, s);
      return std::pow(std::max(0.0, p), 1.0 / static_cast<double>(1 << s));
    }
  }
  throw InvalidParameterError("gowers_norm: unknown method");
}

BoxWeights::BoxWeights(const std::vector<double>& H) {
  if (H.empty()) throw InvalidParameterError("BoxWeights: empty H list");
  for (double Hi : H) {
    if (!(Hi > 0.0)) {
      throw InvalidParameterError("BoxWeights: H must be positive");
    }
    Coordinate c;
    c.H = Hi;
    const long M = static_cast<long>(std::ceil(2.0 * Hi));
    double total = 0.0;
    for (long j = -M; j <= M; ++j) {
      const double h = static_cast<double>(j) * Hi / static_cast<double>(M);
      const double w = 1.0 - std::abs(h) / Hi;  // triangular kernel shape
      c.nodes.push_back(h);
      c.weights.push_back(w);
      total += w;
    }
    for (double& w : c.weights) w /= total;
    coords.push_back(std::move(c));
  }
}

double box_norm(const TorusFunction& f, const BoxWeights& weights, int s) {
  if (s != 2 || weights.coords.size() != 2) {
    throw InvalidParameterError("box_norm: implemented for s = 2 only");
  }
  if (f.size() > 256) {
    throw BudgetError(f.size(), 256);
  }
  const auto& c1 = weights.coords[0];
  const auto& c2 = weights.coords[1];
  const std::size_t n = f.size();

  // int Delta_{h2} g dx = sum_xi |ghat(xi)|^2 e(-xi h2); average in h2 first.
  std::vector<double> W2(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    const long xi =
        (m <= n / 2) ? static_cast<long>(m) : static_cast<long>(m) - (long)n;
    for (std::size_t l = 0; l < c2.nodes.size(); ++l) {
      W2[m] += c2.weights[l] *
               std::cos(kTwoPi * static_cast<double>(xi) * c2.nodes[l]);
    }
  }

  double acc = 0.0;
  for (std::size_t j = 0; j < c1.nodes.size(); ++j) {
    const TorusFunction g = mult_derivative(f, c1.nodes[j]);
    const auto& gc = g.packed_coeffs();
    double inner = 0.0;
    for (std::size_t m = 0; m < n; ++m) inner += std::norm(gc[m]) * W2[m];
    acc += c1.weights[j] * inner;
  }
  return std::pow(std::max(0.0, acc), 0.25);
}

GcsCheck gcs_check(const std::array<const TorusFunction*, 4>& f_w) {
  const std::size_t n = f_w[0]->size();
  for (const auto* f : f_w) {
    if (f->size() != n) {
      throw GridMismatchError("gcs_check: inputs must share one grid");
    }
  }
  if (n > 128) throw BudgetError(n, 128);
  const auto& v00 = f_w[0]->samples();
  const auto& v01 = f_w[1]->samples();
  const auto& v10 = f_w[2]->samples();
  const auto& v11 = f_w[3]->samples();
  cplx acc{0.0, 0.0};
  for (std::size_t h1 = 0; h1 < n; ++h1) {
    for (std::size_t h2 = 0; h2 < n; ++h2) {
      for (std::size_t x = 0; x < n; ++x) {
        acc += v00[x] * std::conj(v10[(x + h1) % n]) *
               std::conj(v01[(x + h2) % n]) * v11[(x + h1 + h2) % n];
      }
    }
  }
  GcsCheck c;
  c.lhs = std::abs(acc) / (static_cast<double>(n) * n * n);
  c.rhs = 1.0;
  for (const auto* f : f_w) c.rhs *= fourier_u2(*f);
  return c;
}

}  // namespace torus_lab
