#pragma once

#include <optional>
#include <vector>

#include "torus_lab/engine.hpp"
#include "torus_lab/oscillatory.hpp"

namespace torus_lab {

struct CountingResult {
  cplx value;      // Lambda_{P;N}(f_0, ..., f_k), optionally chi-weighted
  cplx main_term;  // prod_i mean(f_i), times int chi when a cutoff is present
  cplx error;      // value - main_term
  double N;
  std::uint64_t node_count;
  double est_error;
};

// Lambda_{P;N}(f_0,...,f_k) = int_0^N w(y) int_T f_0(x) prod_i f_i(x+P_i(y)) dx dy
// with w = 1/N (plain) or chi(y/N)/N (cutoff). fs = {f_0, f_1, ..., f_k} in
// slot order; the family supplies P_1..P_k. Preconditions: shared grid and
// every active band <= n/(2(k+1)).
CountingResult counting_form(const PolynomialFamily& P, double N,
                             const std::vector<const TorusFunction*>& fs,
                             const SmoothCutoff* cutoff = nullptr,
                             QuadOptions opts = {});

// Independent k=1 cross-check: sum_xi f0^(−xi) f1^(xi) weyl_average(P1, xi, N).
cplx two_term_oracle(const Polynomial& P1, const TorusFunction& f0,
                     const TorusFunction& f1, double N, QuadOptions opts = {});

struct DualResult {
  TorusFunction fn;  // F^i(x)
  double est_error;
  std::uint64_t node_count;
};

// i-th dual function F^i(x) = int_0^N w(y) prod_{j != i} f_j(x + P_j(y) - P_i(y)) dy,
// with the slot-0 convention P_0 = 0.
DualResult dual_function(const PolynomialFamily& P, double N, std::size_t i,
                         const std::vector<const TorusFunction*>& fs,
                         const SmoothCutoff* cutoff = nullptr,
                         QuadOptions opts = {});

struct PairingCheck {
  cplx lhs;  // counting_form value
  cplx rhs;  // int f_i F^i
  double est_error;
};

// Identity (3.1): Lambda = <f_i, conj-free pairing with F^i>.
PairingCheck dual_pairing_check(const PolynomialFamily& P, double N,
                                const std::vector<const TorusFunction*>& fs,
                                std::size_t i, const SmoothCutoff* cutoff = nullptr,
                                QuadOptions opts = {});

struct DualizationCheck {
  double lhs;  // |Lambda(f_0..f_k)|^2
  double rhs;  // Re Lambda(f_0,...,conj(F^i),...,f_k)
  double est_error;
};

// Lemma 3.5 dualization step: |Lambda|^2 <= Lambda with slot i replaced by
// conj(F^i).
DualizationCheck dualization_check(const PolynomialFamily& P, double N,
                                   const std::vector<const TorusFunction*>& fs,
                                   std::size_t i,
                                   const SmoothCutoff* cutoff = nullptr,
                                   QuadOptions opts = {});

struct DecayFit {
  double slope;      // d log10|error| / d log10 N
  double intercept;
  double r2;
  std::vector<double> N_list;
  std::vector<double> errors;  // |error| per N
};

// Least-squares fit of log10|Lambda error| against log10 N. Throws on
// degenerate input (all errors ~ 0) or fewer than 4 points.
DecayFit decay_fit(const PolynomialFamily& P,
                   const std::vector<const TorusFunction*>& fs,
                   const std::vector<double>& N_list,
                   const SmoothCutoff* cutoff = nullptr, QuadOptions opts = {});

// Shared helper: least-squares line fit y = slope*x + intercept with r^2.
void linear_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                double* slope, double* intercept, double* r2);

}  // namespace torus_lab
