#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torus_lab/counting.hpp"
#include "torus_lab/torus_fn.hpp"

namespace torus_lab {

// Digit-restricted self-similar measure: keep the base-b intervals whose
// first `level` digits all lie in `digits`, with constant density
// (b/|D|)^level on the survivors. The stored density is the exact cell
// average on the n-point grid (rational overlap arithmetic), so the total
// mass is exactly 1.
struct FrostmanMeasure {
  long b = 2;
  std::vector<int> digits;
  int level = 0;
  std::size_t n = 0;
  std::vector<double> density;  // per-cell average density, >= 0
  double s = 1.0;               // log|D| / log b
  double frostman_const = 0.0;  // set by frostman_verify

  double mass() const;  // sum density / n
  TorusFunction to_function() const;

  // mu([a, b]) for 0 <= a <= b (wrap allowed via b > 1), exact for the
  // piecewise-constant density.
  double interval_mass(double lo, double hi) const;
};

// pre: b >= 2, digits nonempty subset of {0..b-1} with |D| >= 2 (s > 0),
// b^level <= n. Throws ResolutionError when the grid cannot resolve level-L
// cells.
FrostmanMeasure cantor_measure(long b, const std::vector<int>& digits,
                               int level, std::size_t n);

// C = max over grid centers x and the given radii r of mu(B(x,r)) / r^s with
// B(x,r) = [x-r, x+r]. Also stores the result in mu.frostman_const.
double frostman_verify(FrostmanMeasure& mu, const std::vector<double>& radii);

enum class RieszMethod { Direct, Fourier };

// I_t(mu): Direct is the double sum over grid cells with torus cell-center
// distances (diagonal excluded, n <= 2048); Fourier is the H^{t-1}
// comparability surrogate sum_{xi != 0} |muhat|^2 (1+xi^2)^{(t-1)/2} plus the
// analytic zero-mode term |muhat(0)|^2 2^t/(1-t) so the two methods share a
// normalization. Requires t in (0, s).
double riesz_energy(const FrostmanMeasure& mu, double t, RieszMethod method);

// Fejer mollification K_M * mu; mass preserved, nonnegative, band <= M.
TorusFunction mollify(const FrostmanMeasure& mu, long M);

struct LpSupRow {
  long j;
  double sup;    // || Pi_j mu ||_inf
  double ratio;  // sup / 2^{j (1 - s + tau)}
};

// Lemma 4.2 witness table over the given dyadic blocks.
std::vector<LpSupRow> lp_sup_bound_check(const FrostmanMeasure& mu,
                                         const std::vector<long>& j_range,
                                         double tau);

// Theorem 4.1 counting with measures: Lambda_{P;N}(K_M*mu_0, ..., K_M*mu_k).
// The main term is prod mass(mu_i) = 1.
CountingResult frostman_counting(const PolynomialFamily& P, double N,
                                 const std::vector<const FrostmanMeasure*>& mus,
                                 long M, const SmoothCutoff* cutoff = nullptr,
                                 QuadOptions opts = {});

struct NuPairing {
  long M;
  cplx value;
  double est_error;
};

// <nu_M, g> for g(x, y) = g_x(x) e(l2 y / N) against the Prop 4.6 functional
// built from K_M * mu, one entry per mollification order in M_list.
std::vector<NuPairing> nu_pairing(const FrostmanMeasure& mu,
                                  const PolynomialFamily& P, double N,
                                  const SmoothCutoff& chi,
                                  const TorusFunction& g_x, long l2,
                                  const std::vector<long>& M_list,
                                  QuadOptions opts = {});

// Sorted disjoint closed subintervals of [0, 1] with exact rational endpoints
// sharing one denominator.
class IntervalSet {
 public:
  struct Interval {
    std::int64_t lo;  // lo/q
    std::int64_t hi;  // hi/q, lo < hi
  };

  IntervalSet(std::vector<Interval> intervals, std::int64_t q);

  static IntervalSet full();  // [0, 1]
  // Level-L surviving intervals of the digit construction, adjacent cells
  // merged; q = b^level.
  static IntervalSet from_cantor(long b, const std::vector<int>& digits,
                                 int level);

  const std::vector<Interval>& intervals() const { return intervals_; }
  std::int64_t denominator() const { return q_; }

  double lo(std::size_t i) const;
  double hi(std::size_t i) const;

  // True when [a, b] (mod-1-reduced by the caller) lies inside one member
  // interval with the given safety margin subtracted from both ends.
  bool contains(double a, double b, double margin) const;

  // One interval per line as exact rationals: "p/q r/q".
  std::string to_text() const;
  static IntervalSet from_text(const std::string& text);

 private:
  std::vector<Interval> intervals_;
  std::int64_t q_;
};

struct Witness {
  double x_lo, x_hi;
  double y_lo, y_hi;
  bool certified;
};

// Scans y over {y_min, y_min + y_step, ...} <= y_max; for each y midpoint,
// searches x-subintervals of E (bisection up to max_depth) such that
// x + P_i(y) mod 1 provably lands in E for every i, using outward-rounded
// interval arithmetic with 1e-12 slack per operation. At most one witness is
// kept per (y, E-interval) pair.
std::vector<Witness> progression_search(const IntervalSet& E,
                                        const PolynomialFamily& P, double y_min,
                                        double y_max, double y_step,
                                        int max_depth = 6);

// Re-certifies w against E by splitting its x-interval into `pieces` equal
// parts and checking each piece at the y midpoint.
bool verify_witness(const IntervalSet& E, const PolynomialFamily& P,
                    const Witness& w, int pieces);

}  // namespace torus_lab
