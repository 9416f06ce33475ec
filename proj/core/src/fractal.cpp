#include "torus_lab/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "torus_lab/kernels.hpp"

namespace torus_lab {

namespace {

void validate_digits(long b, const std::vector<int>& digits) {
  if (b < 2) throw InvalidParameterError("cantor measure: base b must be >= 2");
  if (digits.empty()) {
    throw InvalidParameterError("cantor measure: digit set must be nonempty");
  }
  std::vector<int> d = digits;
  std::sort(d.begin(), d.end());
  if (std::unique(d.begin(), d.end()) != d.end()) {
    throw InvalidParameterError("cantor measure: duplicate digits");
  }
  for (int v : d) {
    if (v < 0 || v >= b) {
      throw InvalidParameterError("cantor measure: digit outside {0..b-1}");
    }
  }
  if (d.size() < 2) {
    throw InvalidParameterError(
        "cantor measure: |D| >= 2 required (s must lie in (0, 1])");
  }
}

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t p = 1;
  for (int i = 0; i < e; ++i) p *= base;
  return p;
}

// Sorted indices p of the surviving level-L intervals [p/b^L, (p+1)/b^L].
std::vector<std::int64_t> surviving_cells(long b, const std::vector<int>& digits,
                                          int level) {
  std::vector<int> d = digits;
  std::sort(d.begin(), d.end());
  std::vector<std::int64_t> cells{0};
  for (int l = 0; l < level; ++l) {
    std::vector<std::int64_t> next;
    next.reserve(cells.size() * d.size());
    for (std::int64_t p : cells)
      for (int dig : d) next.push_back(p * b + dig);
    cells = std::move(next);
    if (cells.size() > (std::size_t{1} << 24)) {
      throw BudgetError(cells.size(), std::uint64_t{1} << 24);
    }
  }
  return cells;  // already sorted: digits sorted, BFS by level
}

}  // namespace

double FrostmanMeasure::mass() const {
  double m = 0.0;
  for (double v : density) m += v;
  return m / static_cast<double>(n);
}

TorusFunction FrostmanMeasure::to_function() const {
  std::vector<cplx> samples(density.begin(), density.end());
  return TorusFunction::from_samples(std::move(samples));
}

double FrostmanMeasure::interval_mass(double lo, double hi) const {
  if (hi < lo) throw InvalidParameterError("interval_mass: hi < lo");
  if (hi - lo >= 1.0) return mass();
  // Reduce lo into [0, 1).
  const double k = std::floor(lo);
  lo -= k;
  hi -= k;
  // cdf(x) = integral of density over [0, x], x in [0, 1].
  auto cdf = [&](double x) {
    x = std::min(std::max(x, 0.0), 1.0);
    const double t = x * static_cast<double>(n);
    std::size_t j = static_cast<std::size_t>(t);
    if (j >= n) j = n - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < j; ++i) acc += density[i];
    acc /= static_cast<double>(n);
    acc += density[j] * (x - static_cast<double>(j) / static_cast<double>(n));
    return acc;
  };
  if (hi <= 1.0) return cdf(hi) - cdf(lo);
  return cdf(1.0) - cdf(lo) + cdf(hi - 1.0);
}

FrostmanMeasure cantor_measure(long b, const std::vector<int>& digits,
                               int level, std::size_t n) {
  validate_digits(b, digits);
  if (level < 0) throw InvalidParameterError("cantor measure: level >= 0");
  if (!is_power_of_two(n) || n == 0) {
    throw InvalidParameterError("cantor measure: grid size must be 2^k");
  }
  const std::int64_t B = ipow(b, level);
  if (B > static_cast<std::int64_t>(n)) {
    throw ResolutionError("cantor measure: b^level = " + std::to_string(B) +
                          " exceeds the grid size " + std::to_string(n));
  }

  FrostmanMeasure mu;
  mu.b = b;
  mu.digits = digits;
  std::sort(mu.digits.begin(), mu.digits.end());
  mu.level = level;
  mu.n = n;
  mu.s = std::log(static_cast<double>(digits.size())) /
         std::log(static_cast<double>(b));
  mu.density.assign(n, 0.0);

  // Exact overlap of each surviving interval with each grid cell, in integer
  // units of 1/(n b^level).
  const double scale =
      std::pow(static_cast<double>(b) / static_cast<double>(digits.size()),
               level);
  const std::int64_t nn = static_cast<std::int64_t>(n);
  std::int64_t total_units = 0;
  for (std::int64_t p : surviving_cells(b, digits, level)) {
    const std::int64_t lo = p * nn;        // interval start, units 1/(nB)
    const std::int64_t hi = (p + 1) * nn;  // interval end
    for (std::int64_t j = lo / B; j * B < hi; ++j) {
      const std::int64_t len =
          std::min(hi, (j + 1) * B) - std::max(lo, j * B);
      mu.density[static_cast<std::size_t>(j)] +=
          scale * static_cast<double>(len) / static_cast<double>(B);
      total_units += len;
    }
  }
  // Rational bookkeeping: the survivors cover exactly |D|^level * n units.
  const std::int64_t want_units = ipow(static_cast<std::int64_t>(digits.size()),
                                       level) *
                                  nn;
  if (total_units != want_units) {
    throw InvalidParameterError("cantor measure: internal overlap mismatch");
  }
  return mu;
}

double frostman_verify(FrostmanMeasure& mu, const std::vector<double>& radii) {
  const double n = static_cast<double>(mu.n);
  for (double r : radii) {
    if (r < 1.0 / n - 1e-15 || r > 0.5 + 1e-15) {
      throw InvalidParameterError(
          "frostman_verify: radii must lie in [1/n, 1/2]");
    }
  }
  // Prefix sums make each ball mass O(1); cdf(x) is exact for the
  // piecewise-constant density.
  std::vector<double> prefix(mu.n + 1, 0.0);
  for (std::size_t j = 0; j < mu.n; ++j)
    prefix[j + 1] = prefix[j] + mu.density[j] / n;
  auto cdf = [&](double x) {
    x = std::min(std::max(x, 0.0), 1.0);
    std::size_t j = static_cast<std::size_t>(x * n);
    if (j >= mu.n) j = mu.n - 1;
    return prefix[j] +
           mu.density[j] * (x - static_cast<double>(j) / n);
  };
  auto ball_mass = [&](double lo, double hi) {
    const double k = std::floor(lo);
    lo -= k;
    hi -= k;
    if (hi <= 1.0) return cdf(hi) - cdf(lo);
    return cdf(1.0) - cdf(lo) + cdf(hi - 1.0);
  };
  double C = 0.0;
  for (double r : radii) {
    const double rs = std::pow(r, mu.s);
    for (std::size_t j = 0; j < mu.n; ++j) {
      const double x = (static_cast<double>(j) + 0.5) / n;
      C = std::max(C, ball_mass(x - r, x + r) / rs);
    }
  }
  mu.frostman_const = C;
  return C;
}

double riesz_energy(const FrostmanMeasure& mu, double t, RieszMethod method) {
  if (!(t > 0.0) || !(t < mu.s)) {
    throw InvalidParameterError(
        "riesz_energy: t must lie in (0, s); the energy may diverge at t >= "
        "s");
  }
  const std::size_t n = mu.n;
  if (method == RieszMethod::Direct) {
    if (n > 2048) throw BudgetError(n, 2048);
    const double dn = static_cast<double>(n);
    // Distance kernel by cell offset; diagonal excluded.
    std::vector<double> kern(n, 0.0);
    for (std::size_t d = 1; d < n; ++d) {
      const double dist =
          static_cast<double>(std::min(d, n - d)) / dn;
      kern[d] = std::pow(dist, -t);
    }
    const std::size_t nblocks = std::min<std::size_t>(64, n);
    const std::size_t per = (n + nblocks - 1) / nblocks;
    std::vector<double> partial(nblocks, 0.0);
    parallel_blocks(nblocks, [&](std::size_t blk) {
      double acc = 0.0;
      const std::size_t lo = blk * per, hi = std::min(n, lo + per);
      for (std::size_t i = lo; i < hi; ++i) {
        if (mu.density[i] == 0.0) continue;
        const double mi = mu.density[i] / dn;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          acc += mi * (mu.density[j] / dn) * kern[(j + n - i) % n];
        }
      }
      partial[blk] = acc;
    });
    double e = 0.0;
    for (double v : partial) e += v;
    return e;
  }
  // Fourier comparability surrogate (Prop 2.6 flavor) plus the analytic
  // zero-mode energy of the uniform measure so both methods share a scale.
  TorusFunction f = mu.to_function();
  const long half = static_cast<long>(n) / 2;
  double e = std::norm(f.coeff(0)) * std::pow(2.0, t) / (1.0 - t);
  for (long xi = -half + 1; xi <= half; ++xi) {
    if (xi == 0) continue;
    const double w = std::pow(1.0 + static_cast<double>(xi) *
                                        static_cast<double>(xi),
                              0.5 * (t - 1.0));
    e += std::norm(f.coeff(xi)) * w;
  }
  return e;
}

TorusFunction mollify(const FrostmanMeasure& mu, long M) {
  if (M < 1 || 2 * M >= static_cast<long>(mu.n)) {
    throw BandLimitError("mollify: need 1 <= M with 2M < n");
  }
  return convolve(kernel(KernelSpec::fejer(M), mu.n), mu.to_function());
}

std::vector<LpSupRow> lp_sup_bound_check(const FrostmanMeasure& mu,
                                         const std::vector<long>& j_range,
                                         double tau) {
  if (tau <= 0.0) throw InvalidParameterError("lp_sup_bound_check: tau > 0");
  TorusFunction f = mu.to_function();
  std::vector<LpSupRow> rows;
  rows.reserve(j_range.size());
  for (long j : j_range) {
    TorusFunction pj = lp_project(f, j);
    const double sup = norm(pj, NormKind::Linf());
    const double denom =
        std::pow(2.0, static_cast<double>(j) * (1.0 - mu.s + tau));
    rows.push_back({j, sup, sup / denom});
  }
  return rows;
}

CountingResult frostman_counting(const PolynomialFamily& P, double N,
                                 const std::vector<const FrostmanMeasure*>& mus,
                                 long M, const SmoothCutoff* cutoff,
                                 QuadOptions opts) {
  if (mus.size() != P.k() + 1) {
    throw InvalidParameterError(
        "frostman_counting expects k+1 measures for the k-polynomial family");
  }
  std::vector<TorusFunction> smooth;
  smooth.reserve(mus.size());
  for (const auto* mu : mus) smooth.push_back(mollify(*mu, M));
  std::vector<const TorusFunction*> fs;
  for (const auto& f : smooth) fs.push_back(&f);
  return counting_form(P, N, fs, cutoff, opts);
}

namespace {

cplx pair_integral(const TorusFunction& f, const TorusFunction& A) {
  // int f A = sum_xi fhat(xi) Ahat(-xi)
  const std::size_t n = f.size();
  const auto& fc = f.packed_coeffs();
  const auto& ac = A.packed_coeffs();
  cplx acc{0.0, 0.0};
  for (std::size_t m = 0; m < n; ++m) acc += fc[m] * ac[(n - m) % n];
  return acc;
}

}  // namespace

std::vector<NuPairing> nu_pairing(const FrostmanMeasure& mu,
                                  const PolynomialFamily& P, double N,
                                  const SmoothCutoff& chi,
                                  const TorusFunction& g_x, long l2,
                                  const std::vector<long>& M_list,
                                  QuadOptions opts) {
  if (g_x.size() != mu.n) {
    throw GridMismatchError("nu_pairing: g must live on the measure's grid");
  }
  for (std::size_t i = 1; i < M_list.size(); ++i) {
    if (M_list[i] <= M_list[i - 1]) {
      throw InvalidParameterError("nu_pairing: M_list must be increasing");
    }
  }
  std::vector<NuPairing> out;
  out.reserve(M_list.size());
  YWeight weight{&chi, l2};
  for (long M : M_list) {
    TorusFunction f_mu = mollify(mu, M);
    TorusFunction f0 = f_mu.pointwise_mul(g_x);
    std::vector<const TorusFunction*> inner(P.k(), &f_mu);
    AverageResult avg =
        progression_average(inner, P.polys(), N, mu.n, weight, opts);
    const cplx ve = pair_integral(f0, avg.fn_even);
    const cplx vo = pair_integral(f0, avg.fn_odd);
    out.push_back({M, 0.5 * (ve + vo), 0.5 * std::abs(ve - vo)});
  }
  return out;
}

// ---- interval sets and certified search ----

IntervalSet::IntervalSet(std::vector<Interval> intervals, std::int64_t q)
    : intervals_(std::move(intervals)), q_(q) {
  if (q_ < 1) throw InvalidParameterError("IntervalSet: denominator >= 1");
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (iv.lo < 0 || iv.hi > q_ || iv.lo >= iv.hi) {
      throw InvalidParameterError("IntervalSet: endpoints must satisfy 0 <= "
                                  "lo < hi <= q");
    }
    if (i > 0 && intervals_[i - 1].hi >= iv.lo) {
      throw InvalidParameterError("IntervalSet: intervals must be sorted and "
                                  "disjoint");
    }
  }
}

IntervalSet IntervalSet::full() { return IntervalSet({{0, 1}}, 1); }

IntervalSet IntervalSet::from_cantor(long b, const std::vector<int>& digits,
                                     int level) {
  validate_digits(b, digits);
  const std::int64_t q = ipow(b, level);
  std::vector<Interval> merged;
  for (std::int64_t p : surviving_cells(b, digits, level)) {
    if (!merged.empty() && merged.back().hi == p) {
      merged.back().hi = p + 1;
    } else {
      merged.push_back({p, p + 1});
    }
  }
  return IntervalSet(std::move(merged), q);
}

double IntervalSet::lo(std::size_t i) const {
  return static_cast<double>(intervals_[i].lo) / static_cast<double>(q_);
}

double IntervalSet::hi(std::size_t i) const {
  return static_cast<double>(intervals_[i].hi) / static_cast<double>(q_);
}

bool IntervalSet::contains(double a, double b, double margin) const {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (lo(i) + margin <= a && b <= hi(i) - margin) return true;
    if (lo(i) > b) break;
  }
  return false;
}

std::string IntervalSet::to_text() const {
  std::ostringstream os;
  for (const auto& iv : intervals_) {
    os << iv.lo << "/" << q_ << " " << iv.hi << "/" << q_ << "\n";
  }
  return os.str();
}

IntervalSet IntervalSet::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<Interval> ivs;
  std::int64_t q = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::int64_t lo, q1, hi, q2;
    char s1, s2;
    std::istringstream ls(line);
    if (!(ls >> lo >> s1 >> q1 >> hi >> s2 >> q2) || s1 != '/' || s2 != '/') {
      throw InvalidParameterError("IntervalSet: malformed line '" + line + "'");
    }
    if (q == 0) q = q1;
    if (q1 != q || q2 != q) {
      throw InvalidParameterError(
          "IntervalSet: all endpoints must share one denominator");
    }
    ivs.push_back({lo, hi});
  }
  if (q == 0) throw InvalidParameterError("IntervalSet: empty serialization");
  return IntervalSet(std::move(ivs), q);
}

namespace {

constexpr double kSlack = 1e-12;  // outward rounding per arithmetic op

struct Iv {
  double lo, hi;
};

Iv iv_widen(Iv v) { return {v.lo - kSlack, v.hi + kSlack}; }

Iv iv_add(Iv a, Iv b) { return iv_widen({a.lo + b.lo, a.hi + b.hi}); }

Iv iv_mul_point(Iv a, double y) {
  const double p = a.lo * y, q = a.hi * y;
  return iv_widen({std::min(p, q), std::max(p, q)});
}

// Enclosure of P(y) for an exact double y.
Iv iv_poly(const Polynomial& P, double y) {
  Iv acc{0.0, 0.0};
  const auto& c = P.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = iv_mul_point(acc, y);
    acc = iv_add(acc, {*it, *it});
  }
  return acc;
}

// True when the mod-1 reduction of v provably lies inside E.
bool iv_in_set(const IntervalSet& E, Iv v) {
  if (v.hi - v.lo >= 1.0) return false;
  const double k = std::floor(v.lo);
  Iv w = iv_widen({v.lo - k, v.hi - k});
  if (w.lo < 0.0) w.lo = 0.0;
  if (w.hi <= 1.0) return E.contains(w.lo, w.hi, 0.0);
  // Wraps past 1: both pieces must be covered.
  return E.contains(w.lo, 1.0, 0.0) && E.contains(0.0, w.hi - 1.0, 0.0);
}

bool certify(const IntervalSet& E, const std::vector<Iv>& shifts, double x_lo,
             double x_hi) {
  for (const Iv& sh : shifts) {
    if (!iv_in_set(E, iv_add(sh, {x_lo, x_hi}))) return false;
  }
  return true;
}

bool search_piece(const IntervalSet& E, const std::vector<Iv>& shifts,
                  double x_lo, double x_hi, int depth, int max_depth,
                  double* out_lo, double* out_hi) {
  if (certify(E, shifts, x_lo, x_hi)) {
    *out_lo = x_lo;
    *out_hi = x_hi;
    return true;
  }
  if (depth >= max_depth) return false;
  const double mid = 0.5 * (x_lo + x_hi);
  return search_piece(E, shifts, x_lo, mid, depth + 1, max_depth, out_lo,
                      out_hi) ||
         search_piece(E, shifts, mid, x_hi, depth + 1, max_depth, out_lo,
                      out_hi);
}

}  // namespace

std::vector<Witness> progression_search(const IntervalSet& E,
                                        const PolynomialFamily& P, double y_min,
                                        double y_max, double y_step,
                                        int max_depth) {
  if (!(y_min > 0.0) || !(y_step > 0.0) || y_max < y_min) {
    throw InvalidParameterError(
        "progression_search: need y_min > 0, y_step > 0, y_max >= y_min");
  }
  const std::size_t count = static_cast<std::size_t>(
      std::floor((y_max - y_min) / y_step + 1e-12)) + 1;
  std::vector<std::vector<Witness>> per_y(count);
  parallel_blocks(count, [&](std::size_t m) {
    const double y = y_min + static_cast<double>(m) * y_step;
    std::vector<Iv> shifts;
    shifts.reserve(P.k());
    for (const auto& poly : P.polys()) shifts.push_back(iv_poly(poly, y));
    for (std::size_t i = 0; i < E.intervals().size(); ++i) {
      double wlo = 0.0, whi = 0.0;
      if (search_piece(E, shifts, E.lo(i), E.hi(i), 0, max_depth, &wlo,
                       &whi)) {
        per_y[m].push_back(
            {wlo, whi, y - 0.5 * y_step, y + 0.5 * y_step, true});
      }
    }
  });
  std::vector<Witness> out;
  for (const auto& ws : per_y) out.insert(out.end(), ws.begin(), ws.end());
  return out;
}

bool verify_witness(const IntervalSet& E, const PolynomialFamily& P,
                    const Witness& w, int pieces) {
  if (pieces < 1) throw InvalidParameterError("verify_witness: pieces >= 1");
  const double y = 0.5 * (w.y_lo + w.y_hi);
  std::vector<Iv> shifts;
  for (const auto& poly : P.polys()) shifts.push_back(iv_poly(poly, y));
  for (int p = 0; p < pieces; ++p) {
    const double a =
        w.x_lo + (w.x_hi - w.x_lo) * static_cast<double>(p) / pieces;
    const double b =
        w.x_lo + (w.x_hi - w.x_lo) * static_cast<double>(p + 1) / pieces;
    if (!certify(E, shifts, a, b)) return false;
  }
  return true;
}

}  // namespace torus_lab
