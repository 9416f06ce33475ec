#include "torus_lab/cutoff.hpp"

#include <cmath>

namespace torus_lab {

namespace {
constexpr std::size_t kTableSize = 1 << 16;
constexpr std::size_t kMassNodes = 1 << 21;
}  // namespace

SmoothCutoff::SmoothCutoff(double a, double b) : a_(a), b_(b) {
  if (!(0.0 < a && a < b && b <= 1.0)) {
    throw InvalidParameterError(
        "SmoothCutoff requires 0 < a < b <= 1");
  }
  table_.resize(kTableSize + 1);
  const double step = (b_ - a_) / static_cast<double>(kTableSize);
  inv_step_ = 1.0 / step;
  for (std::size_t i = 0; i <= kTableSize; ++i)
    table_[i] = eval(a_ + static_cast<double>(i) * step);
  // Midpoint quadrature of the bump; integrand is smooth and compactly
  // supported, so this is far below the 1e-10 requirement.
  double acc = 0.0;
  const double h = (b_ - a_) / static_cast<double>(kMassNodes);
  for (std::size_t i = 0; i < kMassNodes; ++i)
    acc += eval(a_ + (static_cast<double>(i) + 0.5) * h);
  mass_ = acc * h;
}

double SmoothCutoff::eval(double u) const {
  if (u <= a_ || u >= b_) return 0.0;
  const double p = (u - a_) * (b_ - u);
  return std::exp(-1.0 / p);
}

double SmoothCutoff::operator()(double u) const {
  if (u <= a_ || u >= b_) return 0.0;
  const double t = (u - a_) * inv_step_;
  const std::size_t i = static_cast<std::size_t>(t);
  if (i >= kTableSize) return table_[kTableSize];
  const double frac = t - static_cast<double>(i);
  return table_[i] * (1.0 - frac) + table_[i + 1] * frac;
}

}  // namespace torus_lab
