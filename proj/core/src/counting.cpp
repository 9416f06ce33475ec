#include "torus_lab/counting.hpp"

#include <cmath>

namespace torus_lab {

namespace {

void check_inputs(const PolynomialFamily& P,
                  const std::vector<const TorusFunction*>& fs) {
  if (fs.size() != P.k() + 1) {
    throw InvalidParameterError("counting_form expects k+1 functions, got " +
                                std::to_string(fs.size()) + " for k=" +
                                std::to_string(P.k()));
  }
  const std::size_t n = fs[0]->size();
  const long limit = static_cast<long>(n) / (2 * static_cast<long>(fs.size()));
  for (const auto* f : fs) {
    if (f->size() != n) {
      throw GridMismatchError("counting_form: inputs must share one grid");
    }
    if (f->active_band() > limit) {
      throw BandLimitError("counting_form: active band " +
                           std::to_string(f->active_band()) +
                           " exceeds n/(2(k+1)) = " + std::to_string(limit));
    }
  }
}

// <f, A> = int f(x) A(x) dx = sum_xi fhat(xi) Ahat(-xi)
cplx pair_mean(const TorusFunction& f, const TorusFunction& A) {
  const std::size_t n = f.size();
  const auto& fc = f.packed_coeffs();
  const auto& ac = A.packed_coeffs();
  cplx acc{0.0, 0.0};
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t neg = (n - m) % n;
    acc += fc[m] * ac[neg];
  }
  return acc;
}

CountingResult counting_from_average(const TorusFunction& f0,
                                     const AverageResult& avg, double N,
                                     double mass, cplx means_product) {
  CountingResult r;
  const cplx v_even = pair_mean(f0, avg.fn_even);
  const cplx v_odd = pair_mean(f0, avg.fn_odd);
  r.value = 0.5 * (v_even + v_odd);
  r.main_term = mass * means_product;
  r.error = r.value - r.main_term;
  r.N = N;
  r.node_count = avg.node_count;
  r.est_error = 0.5 * std::abs(v_even - v_odd);
  return r;
}

}  // namespace

CountingResult counting_form(const PolynomialFamily& P, double N,
                             const std::vector<const TorusFunction*>& fs,
                             const SmoothCutoff* cutoff, QuadOptions opts) {
  check_inputs(P, fs);
  std::vector<const TorusFunction*> inner(fs.begin() + 1, fs.end());
  YWeight weight{cutoff, 0};
  AverageResult avg =
      progression_average(inner, P.polys(), N, fs[0]->size(), weight, opts);
  cplx means{1.0, 0.0};
  for (const auto* f : fs) means *= f->mean();
  return counting_from_average(*fs[0], avg, N,
                               cutoff ? cutoff->mass() : 1.0, means);
}

cplx two_term_oracle(const Polynomial& P1, const TorusFunction& f0,
                     const TorusFunction& f1, double N, QuadOptions opts) {
  if (f0.size() != f1.size()) {
    throw GridMismatchError("two_term_oracle: mismatched grids");
  }
  const long B = std::max(f0.active_band(), f1.active_band());
  cplx acc{0.0, 0.0};
  for (long xi = -B; xi <= B; ++xi) {
    const cplx c = f0.coeff(-xi) * f1.coeff(xi);
    if (c == cplx{0.0, 0.0}) continue;
    acc += c * weyl_average(P1, xi, N, opts).value;
  }
  return acc;
}

DualResult dual_function(const PolynomialFamily& P, double N, std::size_t i,
                         const std::vector<const TorusFunction*>& fs,
                         const SmoothCutoff* cutoff, QuadOptions opts) {
  check_inputs(P, fs);
  if (i > P.k()) {
    throw InvalidParameterError("dual_function: slot index out of range");
  }
  const Polynomial Pi =
      (i == 0) ? Polynomial() : P.poly(i - 1);  // slot-0 shift is 0
  std::vector<const TorusFunction*> inner;
  std::vector<Polynomial> shifts;
  for (std::size_t j = 0; j <= P.k(); ++j) {
    if (j == i) continue;
    inner.push_back(fs[j]);
    const Polynomial Pj = (j == 0) ? Polynomial() : P.poly(j - 1);
    shifts.push_back(Pj - Pi);
  }
  YWeight weight{cutoff, 0};
  AverageResult avg =
      progression_average(inner, shifts, N, fs[0]->size(), weight, opts);
  return DualResult{std::move(avg.fn), avg.est_error, avg.node_count};
}

PairingCheck dual_pairing_check(const PolynomialFamily& P, double N,
                                const std::vector<const TorusFunction*>& fs,
                                std::size_t i, const SmoothCutoff* cutoff,
                                QuadOptions opts) {
  CountingResult lam = counting_form(P, N, fs, cutoff, opts);
  DualResult dual = dual_function(P, N, i, fs, cutoff, opts);
  PairingCheck c;
  c.lhs = lam.value;
  c.rhs = pair_mean(*fs[i], dual.fn);
  c.est_error = lam.est_error +
                dual.est_error * norm(*fs[i], NormKind::Lp(1.0));
  return c;
}

DualizationCheck dualization_check(const PolynomialFamily& P, double N,
                                   const std::vector<const TorusFunction*>& fs,
                                   std::size_t i, const SmoothCutoff* cutoff,
                                   QuadOptions opts) {
  CountingResult lam = counting_form(P, N, fs, cutoff, opts);
  DualResult dual = dual_function(P, N, i, fs, cutoff, opts);
  TorusFunction dual_conj = dual.fn.conjugate();
  std::vector<const TorusFunction*> replaced = fs;
  replaced[i] = &dual_conj;
  CountingResult lam2 = counting_form(P, N, replaced, cutoff, opts);
  DualizationCheck c;
  c.lhs = std::abs(lam.value) * std::abs(lam.value);
  c.rhs = lam2.value.real();
  c.est_error = 2.0 * std::abs(lam.value) * lam.est_error + lam2.est_error +
                dual.est_error;
  return c;
}

void linear_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                double* slope, double* intercept, double* r2) {
  const std::size_t m = xs.size();
  if (m != ys.size() || m < 2) {
    throw InvalidParameterError("linear_fit needs >= 2 matched points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double dm = static_cast<double>(m);
  const double denom = dm * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) {
    throw InvalidParameterError("linear_fit: degenerate abscissae");
  }
  *slope = (dm * sxy - sx * sy) / denom;
  *intercept = (sy - *slope * sx) / dm;
  const double ss_tot = syy - sy * sy / dm;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = ys[i] - (*slope * xs[i] + *intercept);
    ss_res += e * e;
  }
  *r2 = (ss_tot > 1e-30) ? 1.0 - ss_res / ss_tot : 1.0;
}

DecayFit decay_fit(const PolynomialFamily& P,
                   const std::vector<const TorusFunction*>& fs,
                   const std::vector<double>& N_list,
                   const SmoothCutoff* cutoff, QuadOptions opts) {
  if (N_list.size() < 4) {
    throw InvalidParameterError("decay_fit needs at least 4 values of N");
  }
  for (std::size_t i = 1; i < N_list.size(); ++i) {
    if (!(N_list[i] > N_list[i - 1])) {
      throw InvalidParameterError("decay_fit: N_list must be strictly increasing");
    }
  }
  DecayFit fit;
  fit.N_list = N_list;
  fit.errors.reserve(N_list.size());
  for (double N : N_list) {
    CountingResult r = counting_form(P, N, fs, cutoff, opts);
    fit.errors.push_back(std::abs(r.error));
  }
  bool degenerate = true;
  for (double e : fit.errors)
    if (e > 1e-14) degenerate = false;
  if (degenerate) {
    throw InvalidParameterError(
        "decay_fit: error is identically ~0; fit rejected as degenerate");
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    xs.push_back(std::log10(N_list[i]));
    ys.push_back(std::log10(std::max(fit.errors[i], 1e-300)));
  }
  linear_fit(xs, ys, &fit.slope, &fit.intercept, &fit.r2);
  return fit;
}

}  // namespace torus_lab
