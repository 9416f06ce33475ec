#pragma once

#include <array>
#include <vector>

#include "torus_lab/torus_fn.hpp"

namespace torus_lab {

// Delta_h f = f * conj(f(. + h)); h is any real (exact band-limited shift).
// The pointwise product doubles the band; aliasing is suppressed upstream by
// keeping input bands small (see counting preconditions).
TorusFunction mult_derivative(const TorusFunction& f, double h);

enum class GowersMethod {
  Direct,     // full (s+1)-fold grid integral; s <= 3, n <= 256
  Recursive,  // ||f||_{U^s}^{2^s} = avg_h ||Delta_h f||_{U^{s-1}}^{2^{s-1}}
  Fourier,    // s = 2 only: l^4 norm of the coefficients
};

double gowers_norm(const TorusFunction& f, int s,
                   GowersMethod method = GowersMethod::Recursive);

// Triangular (Fejer) weights on [-H_i, H_i] for the box norm: 2*ceil(2H)+1
// nodes per coordinate (spacing <= 1/2), nonnegative weights summing to 1.
struct BoxWeights {
  struct Coordinate {
    double H;
    std::vector<double> nodes;
    std::vector<double> weights;
  };
  std::vector<Coordinate> coords;

  explicit BoxWeights(const std::vector<double>& H);
};

// Gowers box norm || f ||_{box^s_{[H_1],...,[H_s]}}; s = 2 only (cost cap),
// n <= 256.
double box_norm(const TorusFunction& f, const BoxWeights& weights, int s = 2);

struct GcsCheck {
  double lhs;  // |avg over (x, h1, h2) of prod_w C^{|w|} f_w(x + w.h)|
  double rhs;  // prod_w ||f_w||_{U^2}
};

// Gowers-Cauchy-Schwarz at s = 2; f_w indexed by corners (00, 01, 10, 11).
GcsCheck gcs_check(const std::array<const TorusFunction*, 4>& f_w);

}  // namespace torus_lab
