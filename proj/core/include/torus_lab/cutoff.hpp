#pragma once

#include <vector>

#include "torus_lab/common.hpp"

namespace torus_lab {

// Standard bump chi(u) = exp(-1/((u-a)(b-u))) on (a,b), zero elsewhere.
// Used as the smooth cutoff chi_N(y) = chi(y/N)/N in counting operators.
// mass() is int_0^1 chi, computed once to ~1e-10.
class SmoothCutoff {
 public:
  explicit SmoothCutoff(double a = 0.1, double b = 1.0);

  double a() const { return a_; }
  double b() const { return b_; }
  double mass() const { return mass_; }

  // Exact evaluation.
  double eval(double u) const;

  // Table-interpolated evaluation (linear, ~1e-9 absolute error); used in
  // quadrature hot loops.
  double operator()(double u) const;

 private:
  double a_, b_, mass_;
  std::vector<double> table_;  // chi on a uniform grid over [a, b]
  double inv_step_;
};

}  // namespace torus_lab
