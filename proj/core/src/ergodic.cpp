#include "torus_lab/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace torus_lab {

namespace {

std::size_t shared_grid(const std::vector<const TorusFunction*>& fs) {
  if (fs.empty()) {
    throw InvalidParameterError("ergodic average needs at least one function");
  }
  const std::size_t n = fs[0]->size();
  for (const auto* f : fs) {
    if (f->size() != n) {
      throw GridMismatchError("ergodic average: inputs must share one grid");
    }
  }
  return n;
}

ErgodicResult evaluate_at(const AverageResult& avg,
                          const std::vector<double>& xs) {
  ErgodicResult r;
  r.values.reserve(xs.size());
  r.est.reserve(xs.size());
  for (double x : xs) {
    const cplx ve = avg.fn_even(x);
    const cplx vo = avg.fn_odd(x);
    r.values.push_back(0.5 * (ve + vo));
    r.est.push_back(0.5 * std::abs(ve - vo));
  }
  r.node_count = avg.node_count;
  return r;
}

}  // namespace

ErgodicResult ergodic_average(const PolynomialFamily& P, double N,
                              const std::vector<const TorusFunction*>& fs,
                              const std::vector<double>& xs,
                              QuadOptions opts) {
  if (fs.size() != P.k()) {
    throw InvalidParameterError("ergodic_average expects k functions");
  }
  const std::size_t n = shared_grid(fs);
  AverageResult avg = progression_average(fs, P.polys(), N, n, {}, opts);
  return evaluate_at(avg, xs);
}

DeviationTable lacunary_sweep(const PolynomialFamily& P,
                              const std::vector<const TorusFunction*>& fs,
                              double tau, long l_lo, long l_hi,
                              const std::vector<double>& x_grid,
                              QuadOptions opts) {
  if (!(tau > 0.0)) throw InvalidParameterError("lacunary_sweep: tau > 0");
  if (l_lo > l_hi || l_lo < 0) {
    throw InvalidParameterError("lacunary_sweep: need 0 <= l_lo <= l_hi");
  }
  DeviationTable t;
  t.x_grid = x_grid;
  t.tau = tau;
  t.partial = false;
  t.limit = cplx{1.0, 0.0};
  for (const auto* f : fs) t.limit *= f->mean();
  for (long l = l_lo; l <= l_hi; ++l) {
    const double N = std::pow(1.0 + tau, static_cast<double>(l));
    try {
      ErgodicResult r = ergodic_average(P, N, fs, x_grid, opts);
      std::vector<double> dev_row(x_grid.size());
      for (std::size_t j = 0; j < x_grid.size(); ++j)
        dev_row[j] = std::abs(r.values[j] - t.limit);
      t.N_list.push_back(N);
      t.l_list.push_back(l);
      t.dev.push_back(std::move(dev_row));
      t.est.push_back(std::move(r.est));
    } catch (const BudgetError&) {
      t.partial = true;
      break;
    }
  }
  return t;
}

double interpolation_gap(const PolynomialFamily& P,
                         const std::vector<const TorusFunction*>& fs,
                         double tau, long l, const std::vector<double>& xs,
                         QuadOptions opts) {
  if (!(tau > 0.0) || l < 0) {
    throw InvalidParameterError("interpolation_gap: tau > 0, l >= 0");
  }
  const double N0 = std::pow(1.0 + tau, static_cast<double>(l));
  const double N1 = N0 * (1.0 + tau);
  ErgodicResult base = ergodic_average(P, N0, fs, xs, opts);
  double gap = 0.0;
  constexpr int kSamples = 16;
  for (int j = 0; j < kSamples; ++j) {
    const double M =
        N0 + (N1 - N0) * static_cast<double>(j + 1) / kSamples;
    ErgodicResult r = ergodic_average(P, M, fs, xs, opts);
    for (std::size_t i = 0; i < xs.size(); ++i)
      gap = std::max(gap, std::abs(r.values[i] - base.values[i]));
  }
  return gap;
}

DeviationSet deviation_set(const DeviationTable& table, double delta,
                           long l0) {
  if (!(delta > 0.0)) throw InvalidParameterError("deviation_set: delta > 0");
  if (table.dev.empty()) {
    throw InvalidParameterError("deviation_set: empty deviation table");
  }
  if (l0 > table.l_list.back()) {
    throw InvalidParameterError("deviation_set: l0 beyond the computed range");
  }
  DeviationSet out;
  for (std::size_t j = 0; j < table.x_grid.size(); ++j) {
    double sup = 0.0;
    for (std::size_t row = 0; row < table.dev.size(); ++row) {
      if (table.l_list[row] < l0) continue;
      sup = std::max(sup, table.dev[row][j]);
    }
    if (sup > delta) out.points.push_back(table.x_grid[j]);
  }
  out.empirical_measure =
      table.x_grid.empty()
          ? 0.0
          : static_cast<double>(out.points.size()) /
                static_cast<double>(table.x_grid.size());

  // Box-counting over dyadic scales 2^{-4} .. 2^{-ceil(log2 n)+2}; the empty
  // set reports dimension 0 by convention.
  out.boxdim = 0.0;
  if (!out.points.empty()) {
    const double n_pts = static_cast<double>(table.x_grid.size());
    const int e_max =
        std::max(5, static_cast<int>(std::ceil(std::log2(n_pts))) - 2);
    std::vector<double> xs_fit, ys_fit;
    for (int e = 4; e <= e_max; ++e) {
      const double eps = std::pow(0.5, e);
      std::set<long> boxes;
      for (double x : out.points)
        boxes.insert(static_cast<long>(std::floor(x / eps)));
      xs_fit.push_back(static_cast<double>(e));  // log2(1/eps)
      ys_fit.push_back(std::log2(static_cast<double>(boxes.size())));
    }
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
    linear_fit(xs_fit, ys_fit, &slope, &intercept, &r2);
    out.boxdim = std::max(0.0, slope);
  }
  return out;
}

DecayFit l1_mu_convergence(const PolynomialFamily& P,
                           const std::vector<const TorusFunction*>& fs,
                           const FrostmanMeasure& mu,
                           const std::vector<double>& N_list,
                           QuadOptions opts) {
  if (N_list.size() < 4) {
    throw InvalidParameterError("l1_mu_convergence needs at least 4 values of N");
  }
  for (std::size_t i = 1; i < N_list.size(); ++i) {
    if (!(N_list[i] > N_list[i - 1])) {
      throw InvalidParameterError(
          "l1_mu_convergence: N_list must be strictly increasing");
    }
  }
  const std::size_t n = shared_grid(fs);
  if (mu.n != n) {
    throw GridMismatchError("l1_mu_convergence: measure grid mismatch");
  }
  cplx limit{1.0, 0.0};
  for (const auto* f : fs) limit *= f->mean();

  DecayFit fit;
  fit.N_list = N_list;
  for (double N : N_list) {
    AverageResult avg = progression_average(fs, P.polys(), N, n, {}, opts);
    double l1 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      l1 += mu.density[j] * std::abs(avg.fn.samples()[j] - limit) /
            static_cast<double>(n);
    }
    fit.errors.push_back(l1);
  }
  bool degenerate = true;
  for (double e : fit.errors)
    if (e > 1e-14) degenerate = false;
  if (degenerate) {
    throw InvalidParameterError(
        "l1_mu_convergence: deviation is identically ~0; fit rejected");
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
