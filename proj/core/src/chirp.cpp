#include "torus_lab/chirp.hpp"

#include <cmath>

namespace torus_lab {

namespace {

// Binomial coefficients up to the small degrees used here.
long double binom(std::size_t n, std::size_t k) {
  long double r = 1.0L;
  for (std::size_t i = 0; i < k; ++i)
    r = r * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
  return r;
}

// Coefficients of p(m+1) - p(m) from coefficients of p(m).
std::vector<long double> forward_difference(const std::vector<long double>& p) {
  if (p.size() <= 1) return {};
  std::vector<long double> d(p.size() - 1, 0.0L);
  for (std::size_t j = 1; j < p.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) d[i] += p[j] * binom(j, i);
  return d;
}

long double horner(const std::vector<long double>& p, long double m) {
  long double acc = 0.0L;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * m + *it;
  return acc;
}

}  // namespace

ChirpSequence::ChirpSequence(const Polynomial& theta, double y0, double h) {
  // q(m) = theta(y0 + m h), expanded in powers of m in long double.
  const auto& tc = theta.coeffs();
  const std::size_t d = tc.empty() ? 0 : tc.size() - 1;
  std::vector<long double> q(d + 1, 0.0L);
  const long double y0l = y0, hl = h;
  for (std::size_t j = 0; j < tc.size(); ++j) {
    if (tc[j] == 0.0) continue;
    // tc[j] * (y0 + m h)^j
    long double ypow = 1.0L;
    for (std::size_t i = 0; i <= j; ++i) {
      // term in m^i: C(j,i) y0^{j-i} h^i
      long double c = binom(j, i);
      for (std::size_t t = 0; t < j - i; ++t) c *= y0l;
      q[i] += static_cast<long double>(tc[j]) * c * ypow;
      ypow *= hl;
    }
  }
  while (q.size() > 1 && q.back() == 0.0L) q.pop_back();
  degree_ = q.size() - 1;
  diff_.resize(degree_ + 1);
  diff_[0] = q;
  for (std::size_t r = 1; r <= degree_; ++r)
    diff_[r] = forward_difference(diff_[r - 1]);
}

void ChirpSequence::anchor(std::uint64_t m, cplx* table) const {
  const long double ml = static_cast<long double>(m);
  for (std::size_t r = 0; r <= degree_; ++r) {
    const long double v = horner(diff_[r], ml);
    table[r] = unit_phase_mod1(v);
  }
}

void ChirpSequence::generate(std::uint64_t start, std::size_t count,
                             cplx* out) const {
  cplx table[16];
  std::size_t produced = 0;
  while (produced < count) {
    const std::uint64_t m = start + produced;
    anchor(m, table);
    const std::size_t chunk =
        std::min<std::size_t>(count - produced, kAnchorStride);
    if (degree_ == 0) {
      for (std::size_t i = 0; i < chunk; ++i) out[produced + i] = table[0];
    } else {
      for (std::size_t i = 0; i < chunk; ++i) {
        out[produced + i] = table[0];
        for (std::size_t r = 0; r < degree_; ++r) table[r] *= table[r + 1];
      }
    }
    produced += chunk;
  }
}

}  // namespace torus_lab
