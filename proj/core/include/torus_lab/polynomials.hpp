#pragma once

#include <string>
#include <vector>

#include "torus_lab/common.hpp"

namespace torus_lab {

// Real polynomial P(y) = sum_j coeffs[j] y^j. Families in this project have
// zero constant terms, but the type itself is general (shift polynomials
// P_j - P_i that arise in dual functions are built from it too).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  // Monomial a*y^deg.
  static Polynomial monomial(long deg, double a = 1.0);

  const std::vector<double>& coeffs() const { return coeffs_; }
  long degree() const;  // 0 for the zero polynomial
  bool is_zero() const;
  double coeff(long j) const;

  double operator()(double y) const;
  long double eval_ld(long double y) const;  // Horner in long double

  Polynomial derivative() const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(double c) const;

  // Upper bound for max_{[0,N]} |P'(y)|: sum_j j|a_j| N^{j-1}.
  double derivative_sup_bound(double N) const;

  // True when P(y) = a*y with integer a != 0.
  bool is_integer_linear() const;

  std::string to_string() const;

 private:
  std::vector<double> coeffs_;  // trailing zeros trimmed
};

// Validated family {P_1, ..., P_k}: zero constant terms, pairwise distinct
// degrees, sorted ascending by degree.
class PolynomialFamily {
 public:
  static PolynomialFamily validate(const std::vector<std::vector<double>>& raw);

  std::size_t k() const { return polys_.size(); }
  const Polynomial& poly(std::size_t i) const { return polys_[i]; }
  const std::vector<Polynomial>& polys() const { return polys_; }
  long max_degree() const;

  // d x k matrix a[j][i] = coefficient of y^{j+1} in P_i, d = max degree.
  std::vector<std::vector<double>> coeff_matrix() const;

  std::string to_string() const;

 private:
  explicit PolynomialFamily(std::vector<Polynomial> polys)
      : polys_(std::move(polys)) {}
  std::vector<Polynomial> polys_;
};

struct FrequencyControl {
  std::vector<std::size_t> rows;  // selected row indices (0-based powers - 1)
  double det;
  double a_inv_inf;    // max absolute entry of the inverse of the selected block
  double bound_const;  // k^2 * a_inv_inf
};

// Lemma 3.3 linear algebra: pick the k-row subset of the coefficient matrix
// maximizing |det|, and report the inverse-based constant with
// |sum_i xi_i| <= bound_const * max_j |sum_i a_{ji} xi_i|.
FrequencyControl frequency_control(const PolynomialFamily& family);

}  // namespace torus_lab
