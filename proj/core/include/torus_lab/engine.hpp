#pragma once

#include <cstdint>
#include <vector>

#include "torus_lab/cutoff.hpp"
#include "torus_lab/polynomials.hpp"
#include "torus_lab/torus_fn.hpp"

namespace torus_lab {

// y-weight for progression averages over [0, N]:
//   plain:  dy / N                       (the (1/N) int_0^N of Lambda)
//   cutoff: chi(y/N) dy / N              (smooth-cutoff variant)
// plus an optional modulation e(l2 y / N) folded into the phase (used by the
// nu-functional pairings with g(x,y) = g(x) e(l2 y / N)).
struct YWeight {
  const SmoothCutoff* cutoff = nullptr;
  long l2 = 0;

  // Total weight int_0^N w(y) dy: 1 for plain, mass(chi) for cutoff
  // (exact when l2 = 0; with modulation it is whatever the quadrature gives).
  double nominal_mass() const { return cutoff ? cutoff->mass() : 1.0; }
};

// A(x) = int_0^N w(y) prod_i f_i(x + P_i(y)) dy, as a band-limited function
// on the common grid. Even/odd node-split copies back the quadrature error.
struct AverageResult {
  TorusFunction fn;       // (even + odd)/2 combined estimate
  TorusFunction fn_even;  // estimate from even-index midpoints only
  TorusFunction fn_odd;
  double est_error;       // sup-norm of (even-odd)/2 on the grid
  std::uint64_t node_count;  // midpoint evaluations actually performed
};

// Core quadrature engine shared by counting forms, dual functions, ergodic
// averages, and the nu-functional. fs may be empty (k = 0: A is the constant
// total weight). All fs must share one grid; the summed active bands must fit
// strictly inside (-n/2, n/2). Throws BudgetError when the oscillation-aware
// node rule exceeds the cap.
AverageResult progression_average(const std::vector<const TorusFunction*>& fs,
                                  const std::vector<Polynomial>& shifts,
                                  double N, std::size_t n_grid,
                                  const YWeight& weight = {},
                                  QuadOptions opts = {});

}  // namespace torus_lab
