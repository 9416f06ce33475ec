#pragma once

#include <map>
#include <vector>

#include "torus_lab/common.hpp"

namespace torus_lab {

// Band-limited complex function on the torus, held as consistent sample and
// coefficient vectors on an n-point grid (n a power of two).
//
// Normalization: fhat(xi) = (1/n) sum_j samples[j] e(-xi j / n), with
// frequencies xi in (-n/2, n/2]. Coefficients are stored in FFT order
// (index m = xi mod n). The Nyquist coefficient xi = n/2 is kept but must be
// zero for exact translation; translate() enforces that.
class TorusFunction {
 public:
  static TorusFunction from_samples(std::vector<cplx> samples);
  static TorusFunction from_fourier(const std::map<long, cplx>& coeffs,
                                    std::size_t n);
  // coeffs already in FFT order, length n.
  static TorusFunction from_packed_fourier(std::vector<cplx> coeffs_fft);

  std::size_t size() const { return n_; }
  const std::vector<cplx>& samples() const { return samples_; }
  const std::vector<cplx>& packed_coeffs() const { return coeffs_; }

  // fhat(xi); throws BandLimitError when |xi| > n/2.
  cplx coeff(long xi) const;
  cplx mean() const { return coeffs_[0]; }

  // Largest |xi| with |fhat(xi)| > 1e-14 (0 for the zero/constant function).
  long active_band() const;

  // max_j |samples[j]| <= 1 + 1e-9
  bool is_one_bounded() const;

  // g(x) = f(x + t), done by phase multiplication in frequency.
  TorusFunction translate(double t) const;

  // Evaluate the trigonometric polynomial at arbitrary x (not just grid
  // points).
  cplx operator()(double x) const;

  TorusFunction conjugate() const;

  // Pointwise product, exact when the band of the product still fits in
  // (-n/2, n/2); computed via sample multiplication on the shared grid.
  TorusFunction pointwise_mul(const TorusFunction& other) const;

 private:
  TorusFunction(std::size_t n, std::vector<cplx> samples,
                std::vector<cplx> coeffs)
      : n_(n), samples_(std::move(samples)), coeffs_(std::move(coeffs)) {}

  std::size_t n_;
  std::vector<cplx> samples_;
  std::vector<cplx> coeffs_;  // FFT order: coeffs_[xi mod n] = fhat(xi)
};

struct NormKind {
  enum class Tag { Lp, Linf, SobolevNeg, U2Fourier } tag;
  double param = 0.0;  // p for Lp, sigma for SobolevNeg

  static NormKind Lp(double p) { return {Tag::Lp, p}; }
  static NormKind Linf() { return {Tag::Linf, 0.0}; }
  static NormKind SobolevNeg(double sigma) { return {Tag::SobolevNeg, sigma}; }
  static NormKind U2Fourier() { return {Tag::U2Fourier, 0.0}; }
};

// Lp via grid quadrature; H^{-sigma} via sum over |xi| <= n/2 of
// |fhat|^2 (1+xi^2)^{-sigma/2}, square-rooted; U2Fourier via the l^4 norm of
// the coefficients.
double norm(const TorusFunction& f, NormKind kind);

// <f, g> = integral of f conj(g) = sum_xi fhat(xi) conj(ghat(xi)).
cplx inner_product(const TorusFunction& f, const TorusFunction& g);

}  // namespace torus_lab
