#pragma once

#include <cstdint>
#include <vector>

#include "torus_lab/counting.hpp"
#include "torus_lab/fractal.hpp"

namespace torus_lab {

struct ErgodicResult {
  std::vector<cplx> values;   // A_N(x) per requested point
  std::vector<double> est;    // even/odd quadrature gap per point
  std::uint64_t node_count;
};

// A_N(x) = (1/N) int_0^N prod_i f_i(x + P_i(y)) dy evaluated at xs.
ErgodicResult ergodic_average(const PolynomialFamily& P, double N,
                              const std::vector<const TorusFunction*>& fs,
                              const std::vector<double>& xs,
                              QuadOptions opts = {});

struct DeviationTable {
  std::vector<double> x_grid;
  std::vector<double> N_list;            // (1+tau)^l, strictly increasing
  std::vector<long> l_list;
  std::vector<std::vector<double>> dev;  // dev[row][col] = |A_N(x) - limit|
  std::vector<std::vector<double>> est;  // quadrature est per cell
  double tau;
  cplx limit;     // prod_i mean(f_i)
  bool partial;   // true when a budget error truncated the sweep
};

// Deviations |A_{N(tau,l)}(x) - prod mean(f_i)| over l in [l_lo, l_hi]. On a
// BudgetError the table collected so far is returned with partial = true.
DeviationTable lacunary_sweep(const PolynomialFamily& P,
                              const std::vector<const TorusFunction*>& fs,
                              double tau, long l_lo, long l_hi,
                              const std::vector<double>& x_grid,
                              QuadOptions opts = {});

// max over 16 samples M in [N(tau,l), N(tau,l+1)] and x in xs of
// |A_{N(tau,l)}(x) - A_M(x)|.
double interpolation_gap(const PolynomialFamily& P,
                         const std::vector<const TorusFunction*>& fs,
                         double tau, long l, const std::vector<double>& xs,
                         QuadOptions opts = {});

struct DeviationSet {
  std::vector<double> points;  // x with sup_{l >= l0} dev > delta
  double empirical_measure;    // |points| / |x_grid|
  double boxdim;               // dyadic box-counting fit; 0 for the empty set
};

// Finite-l surrogate of the divergence set D(tau, l0, delta).
DeviationSet deviation_set(const DeviationTable& table, double delta, long l0);

// Fit of log10 int |A_N - prod mean| dmu against log10 N.
DecayFit l1_mu_convergence(const PolynomialFamily& P,
                           const std::vector<const TorusFunction*>& fs,
                           const FrostmanMeasure& mu,
                           const std::vector<double>& N_list,
                           QuadOptions opts = {});

}  // namespace torus_lab
