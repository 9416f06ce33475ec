#pragma once

#include <cstdint>
#include <vector>

#include "torus_lab/polynomials.hpp"

namespace torus_lab {

struct WeylResult {
  cplx value;     // (1/N) int_0^N e(xi P(y)) dy, composite midpoint
  double N;
  long xi;
  std::uint64_t node_count;
  double est_error;  // half the gap between the even- and odd-node estimates
};

// Oscillation-aware midpoint quadrature: node density >= nodes_per_cycle
// per period of xi*P(y), node count capped (BudgetError when exceeded).
WeylResult weyl_average(const Polynomial& P, long xi, double N,
                        QuadOptions opts = {});

struct VdcRow {
  std::size_t poly_index;
  long xi;
  double N;
  double abs_value;
  double product;  // |value| * (N |xi|)^{1/deg}
  double est_error;
};

// Tabulates |weyl_average| * (N|xi|)^{1/d} over the given ranges for every
// polynomial in the family (van der Corput witness, Lemma 2.1).
std::vector<VdcRow> vdc_check(const PolynomialFamily& family,
                              const std::vector<long>& xis,
                              const std::vector<double>& Ns,
                              QuadOptions opts = {});

}  // namespace torus_lab
