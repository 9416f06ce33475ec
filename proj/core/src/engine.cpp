#include "torus_lab/engine.hpp"

#include <algorithm>
#include <cmath>

#include "torus_lab/chirp.hpp"
#include "torus_lab/fft.hpp"

namespace torus_lab {

namespace {

constexpr std::size_t kChunk = 8192;

std::size_t fft_index(long xi, std::size_t n) {
  long m = xi % static_cast<long>(n);
  if (m < 0) m += static_cast<long>(n);
  return static_cast<std::size_t>(m);
}

std::uint64_t next_pow2(std::uint64_t v) {
  std::uint64_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

struct WeightEval {
  // omega_m = h * w(y_m), the per-node quadrature weight (modulation is folded
  // into the chirp phase, so weights stay real).
  const SmoothCutoff* cutoff;
  double N;
  double h;

  double operator()(double y) const {
    if (cutoff) return h * (*cutoff)(y / N) / N;
    // Sharp truncation at y = N: weight the node by the exact overlap of its
    // cell [y - h/2, y + h/2] with [0, N], so constants integrate exactly.
    const double overlap = std::min(y + 0.5 * h, N) - std::max(y - 0.5 * h, 0.0);
    return overlap > 0.0 ? overlap / N : 0.0;
  }
};

// Node count for a scalar integrand with the given oscillation rate
// (cycles per unit y). Always even.
std::uint64_t scalar_nodes(double rate, double N, const YWeight& weight,
                           const QuadOptions& opts) {
  double want = opts.nodes_per_cycle * rate * N;
  std::uint64_t L = std::max<std::uint64_t>(
      opts.min_nodes, static_cast<std::uint64_t>(std::ceil(want)));
  if (weight.cutoff) L = std::max<std::uint64_t>(L, std::uint64_t{1} << 14);
  if (L % 2) ++L;
  return L;
}

// Weighted midpoint sum of e(theta(y)) over [0, N_span] split into even/odd
// node estimates. theta includes any modulation term.
struct ScalarSum {
  cplx even, odd;  // each already scaled to be a full estimate (x2)
};

ScalarSum scalar_chirp_sum(const Polynomial& theta, double N, double N_span,
                           std::uint64_t L, const YWeight& weight) {
  const double h = N_span / static_cast<double>(L);
  WeightEval wt{weight.cutoff, N, h};
  ChirpSequence chirp(theta, 0.5 * h, h);
  cplx se{0.0, 0.0}, so{0.0, 0.0};
  std::vector<cplx> buf(kChunk);
  for (std::uint64_t start = 0; start < L; start += kChunk) {
    const std::size_t count =
        static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, L - start));
    chirp.generate(start, count, buf.data());
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t m = start + i;
      const double y = (static_cast<double>(m) + 0.5) * h;
      const cplx v = wt(y) * buf[i];
      if ((m & 1) == 0)
        se += v;
      else
        so += v;
    }
  }
  return {2.0 * se, 2.0 * so};
}

Polynomial modulated(const Polynomial& base, double scale, long l2, double N) {
  // scale*base(y) + (l2/N) y, the phase in cycles.
  Polynomial th = base * scale;
  if (l2 != 0) {
    th = th - Polynomial::monomial(1, -static_cast<double>(l2) / N);
  }
  return th;
}

AverageResult finish(std::vector<cplx> even_packed, std::vector<cplx> odd_packed,
                     std::uint64_t nodes) {
  const std::size_t n = even_packed.size();
  std::vector<cplx> mean_packed(n);
  for (std::size_t i = 0; i < n; ++i)
    mean_packed[i] = 0.5 * (even_packed[i] + odd_packed[i]);
  TorusFunction fe = TorusFunction::from_packed_fourier(std::move(even_packed));
  TorusFunction fo = TorusFunction::from_packed_fourier(std::move(odd_packed));
  TorusFunction fm = TorusFunction::from_packed_fourier(std::move(mean_packed));
  double sup = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    sup = std::max(sup, std::abs(fe.samples()[j] - fo.samples()[j]));
  return AverageResult{std::move(fm), std::move(fe), std::move(fo), 0.5 * sup,
                       nodes};
}

// ---- k = 1: one chirp sum per active frequency ----

AverageResult single_function_path(const TorusFunction& f,
                                   const Polynomial& P, double N,
                                   std::size_t n, const YWeight& weight,
                                   const QuadOptions& opts) {
  const long B = f.active_band();
  const double dsup = P.derivative_sup_bound(N);
  std::vector<long> active;
  for (long xi = -B; xi <= B; ++xi)
    if (f.coeff(xi) != cplx{0.0, 0.0}) active.push_back(xi);

  struct Cell {
    cplx even, odd;
    std::uint64_t nodes;
  };
  std::vector<Cell> cells(active.size());
  parallel_blocks(active.size(), [&](std::size_t b) {
    const long xi = active[b];
    const double rate = std::abs(static_cast<double>(xi)) * dsup +
                        std::abs(static_cast<double>(weight.l2)) / N;
    const std::uint64_t L = scalar_nodes(rate, N, weight, opts);
    Polynomial th = modulated(P, static_cast<double>(xi), weight.l2, N);
    ScalarSum s = scalar_chirp_sum(th, N, N, L, weight);
    cells[b] = {s.even, s.odd, L};
  });

  std::vector<cplx> even(n, cplx{0.0, 0.0}), odd(n, cplx{0.0, 0.0});
  std::uint64_t nodes = 0;
  for (std::size_t b = 0; b < active.size(); ++b) {
    const cplx c = f.coeff(active[b]);
    even[fft_index(active[b], n)] += c * cells[b].even;
    odd[fft_index(active[b], n)] += c * cells[b].odd;
    nodes += cells[b].nodes;
  }
  return finish(std::move(even), std::move(odd), nodes);
}

// ---- k = 2 with one integer-linear shift: folded chirp + FFT over residues --

AverageResult linear_chirp_path(const TorusFunction& f_lin, long a,
                                const TorusFunction& f_chirp,
                                const Polynomial& P_chirp, double N,
                                std::size_t n, const YWeight& weight,
                                const QuadOptions& opts) {
  const long B_lin = f_lin.active_band();
  const long B_c = f_chirp.active_band();
  const double dsup_c = P_chirp.derivative_sup_bound(N);
  const std::uint64_t Nspan_i = static_cast<std::uint64_t>(std::ceil(N));
  const double N_span = static_cast<double>(Nspan_i);

  std::vector<long> active;
  for (long xi = -B_c; xi <= B_c; ++xi)
    if (f_chirp.coeff(xi) != cplx{0.0, 0.0}) active.push_back(xi);

  struct Cell {
    // T_even/T_odd indexed by xi_lin + B_lin
    std::vector<cplx> t_even, t_odd;
    std::uint64_t nodes = 0;
  };
  std::vector<Cell> cells(active.size());

  parallel_blocks(active.size(), [&](std::size_t b) {
    const long xic = active[b];
    const double rate = std::abs(static_cast<double>(xic)) * dsup_c +
                        std::abs(static_cast<double>(a)) *
                            static_cast<double>(B_lin) +
                        std::abs(static_cast<double>(weight.l2)) / N;
    std::uint64_t q = next_pow2(std::max<std::uint64_t>(
        {static_cast<std::uint64_t>(2 * std::labs(a) * B_lin + 2),
         static_cast<std::uint64_t>(std::ceil(opts.nodes_per_cycle * rate)),
         static_cast<std::uint64_t>(
             (std::max<std::uint64_t>(opts.min_nodes,
                                      weight.cutoff ? (std::uint64_t{1} << 14)
                                                    : 0) +
              Nspan_i - 1) /
             Nspan_i),
         2}));
    const std::uint64_t L = q * Nspan_i;
    const double h = 1.0 / static_cast<double>(q);
    WeightEval wt{weight.cutoff, N, h};
    Polynomial th = modulated(P_chirp, static_cast<double>(xic), weight.l2, N);
    ChirpSequence chirp(th, 0.5 * h, h);

    std::vector<cplx> S(q, cplx{0.0, 0.0});
    std::vector<cplx> buf(kChunk);
    std::size_t r = 0;
    for (std::uint64_t start = 0; start < L; start += kChunk) {
      const std::size_t count =
          static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, L - start));
      chirp.generate(start, count, buf.data());
      for (std::size_t i = 0; i < count; ++i) {
        const double y = (static_cast<double>(start + i) + 0.5) * h;
        S[r] += wt(y) * buf[i];
        if (++r == q) r = 0;
      }
    }
    // U[j] = sum_r S_r e(r j / q); parity split via the j + q/2 shift.
    Fft::plan(q).backward(S.data());
    const std::uint64_t half_q = q / 2;
    Cell& cell = cells[b];
    cell.t_even.resize(2 * B_lin + 1);
    cell.t_odd.resize(2 * B_lin + 1);
    for (long xl = -B_lin; xl <= B_lin; ++xl) {
      const long aj = static_cast<long>(
          ((static_cast<long long>(a) * xl) % static_cast<long long>(q) +
           static_cast<long long>(q)) %
          static_cast<long long>(q));
      const cplx u = S[static_cast<std::size_t>(aj)];
      const cplx ualt = S[static_cast<std::size_t>(
          (static_cast<std::uint64_t>(aj) + half_q) % q)];
      const cplx twist = unit_phase(static_cast<double>(a) *
                                    static_cast<double>(xl) /
                                    (2.0 * static_cast<double>(q)));
      cell.t_even[static_cast<std::size_t>(xl + B_lin)] = 2.0 * twist * (0.5 * (u + ualt));
      cell.t_odd[static_cast<std::size_t>(xl + B_lin)] = 2.0 * twist * (0.5 * (u - ualt));
    }
    cell.nodes = L;
  });

  std::vector<cplx> even(n, cplx{0.0, 0.0}), odd(n, cplx{0.0, 0.0});
  std::uint64_t nodes = 0;
  for (std::size_t b = 0; b < active.size(); ++b) {
    const long xic = active[b];
    const cplx cc = f_chirp.coeff(xic);
    for (long xl = -B_lin; xl <= B_lin; ++xl) {
      const cplx cl = f_lin.coeff(xl);
      if (cl == cplx{0.0, 0.0}) continue;
      const cplx w = cc * cl;
      const std::size_t idx = fft_index(xic + xl, n);
      even[idx] += w * cells[b].t_even[static_cast<std::size_t>(xl + B_lin)];
      odd[idx] += w * cells[b].t_odd[static_cast<std::size_t>(xl + B_lin)];
    }
    nodes += cells[b].nodes;
  }
  return finish(std::move(even), std::move(odd), nodes);
}

// ---- generic dense path: per-node translation + inverse FFT ----

AverageResult dense_path(const std::vector<const TorusFunction*>& fs,
                         const std::vector<Polynomial>& shifts, double N,
                         std::size_t n, const YWeight& weight,
                         std::uint64_t L) {
  const std::size_t k = fs.size();
  const double h = N / static_cast<double>(L);
  WeightEval wt{weight.cutoff, N, h};
  const Fft& plan = Fft::plan(n);

  std::vector<long> bands(k);
  for (std::size_t i = 0; i < k; ++i) bands[i] = fs[i]->active_band();

  const std::size_t nblocks = static_cast<std::size_t>(
      std::min<std::uint64_t>(64, (L + kChunk - 1) / kChunk));
  const std::uint64_t per_block = (L + nblocks - 1) / nblocks;

  std::vector<std::vector<cplx>> acc_e(nblocks), acc_o(nblocks);
  parallel_blocks(nblocks, [&](std::size_t b) {
    const std::uint64_t lo = per_block * b;
    const std::uint64_t hi = std::min<std::uint64_t>(L, lo + per_block);
    std::vector<cplx> ae(n, cplx{0.0, 0.0}), ao(n, cplx{0.0, 0.0});
    // Pure translation phases e(P_i(y_m)); the l2 modulation enters as a
    // complex scalar on the weight.
    std::vector<ChirpSequence> chirps;
    chirps.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
      chirps.emplace_back(shifts[i], 0.5 * h, h);
    std::vector<std::vector<cplx>> wbuf(k, std::vector<cplx>(kChunk));
    std::vector<cplx> u(n), prod(n);
    for (std::uint64_t start = lo; start < hi; start += kChunk) {
      const std::size_t count =
          static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, hi - start));
      for (std::size_t i = 0; i < k; ++i)
        chirps[i].generate(start, count, wbuf[i].data());
      for (std::size_t m = 0; m < count; ++m) {
        const std::uint64_t node = start + m;
        const double y = (static_cast<double>(node) + 0.5) * h;
        cplx omega{wt(y), 0.0};
        if (omega == cplx{0.0, 0.0}) continue;
        if (weight.l2 != 0) {
          omega *= unit_phase_mod1(static_cast<long double>(weight.l2) * y / N);
        }
        std::fill(prod.begin(), prod.end(), cplx{1.0, 0.0});
        for (std::size_t i = 0; i < k; ++i) {
          const cplx w = wbuf[i][m];
          std::fill(u.begin(), u.end(), cplx{0.0, 0.0});
          u[0] = fs[i]->coeff(0);
          cplx pw_pos{1.0, 0.0}, pw_neg{1.0, 0.0};
          const cplx wconj = std::conj(w);
          for (long xi = 1; xi <= bands[i]; ++xi) {
            pw_pos *= w;
            pw_neg *= wconj;
            u[fft_index(xi, n)] = fs[i]->coeff(xi) * pw_pos;
            u[fft_index(-xi, n)] = fs[i]->coeff(-xi) * pw_neg;
          }
          plan.backward(u.data());
          for (std::size_t j = 0; j < n; ++j) prod[j] *= u[j];
        }
        auto& acc = (node & 1) ? ao : ae;
        for (std::size_t j = 0; j < n; ++j) acc[j] += omega * prod[j];
      }
    }
    acc_e[b] = std::move(ae);
    acc_o[b] = std::move(ao);
  });

  std::vector<cplx> se(n, cplx{0.0, 0.0}), so(n, cplx{0.0, 0.0});
  for (std::size_t b = 0; b < nblocks; ++b) {
    for (std::size_t j = 0; j < n; ++j) {
      se[j] += acc_e[b][j];
      so[j] += acc_o[b][j];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    se[j] *= 2.0;
    so[j] *= 2.0;
  }
  // Samples -> coefficients.
  std::vector<cplx> ce = se, co = so;
  plan.forward(ce.data());
  plan.forward(co.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    ce[j] *= scale;
    co[j] *= scale;
  }
  return finish(std::move(ce), std::move(co), L);
}

}  // namespace

AverageResult progression_average(const std::vector<const TorusFunction*>& fs,
                                  const std::vector<Polynomial>& shifts,
                                  double N, std::size_t n_grid,
                                  const YWeight& weight, QuadOptions opts) {
  if (fs.size() != shifts.size()) {
    throw InvalidParameterError("progression_average: fs/shifts size mismatch");
  }
  if (N < 1.0) throw InvalidParameterError("progression_average: N >= 1 required");
  const std::size_t k = fs.size();
  long total_band = 0;
  long max_band = 0;
  double max_dsup = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (fs[i]->size() != n_grid) {
      throw GridMismatchError("progression_average: all inputs must share grid " +
                              std::to_string(n_grid));
    }
    const long B = fs[i]->active_band();
    total_band += B;
    max_band = std::max(max_band, B);
    max_dsup = std::max(max_dsup, shifts[i].derivative_sup_bound(N));
  }
  if (k > 0 && total_band >= static_cast<long>(n_grid) / 2) {
    throw BandLimitError(
        "progression_average: summed active bands must stay below n/2");
  }

  // Node budget check against the spec's density rule for the full integrand.
  const double full_rate = static_cast<double>(max_band) * max_dsup +
                           std::abs(static_cast<double>(weight.l2)) / N;
  const std::uint64_t L_full = scalar_nodes(full_rate, N, weight, opts);
  if (L_full > opts.cap()) throw BudgetError(L_full, opts.cap());

  if (k == 0) {
    const std::uint64_t L = scalar_nodes(
        std::abs(static_cast<double>(weight.l2)) / N, N, weight, opts);
    ScalarSum s = scalar_chirp_sum(modulated(Polynomial(), 1.0, weight.l2, N),
                                   N, N, L, weight);
    std::vector<cplx> even(n_grid, cplx{0.0, 0.0}), odd(n_grid, cplx{0.0, 0.0});
    even[0] = s.even;
    odd[0] = s.odd;
    return finish(std::move(even), std::move(odd), L);
  }

  if (k == 1) {
    return single_function_path(*fs[0], shifts[0], N, n_grid, weight, opts);
  }

  if (k == 2) {
    int lin = -1;
    for (int i = 0; i < 2; ++i)
      if (shifts[static_cast<std::size_t>(i)].is_integer_linear()) lin = i;
    if (lin >= 0) {
      const int c = 1 - lin;
      const long a = static_cast<long>(
          shifts[static_cast<std::size_t>(lin)].coeff(1));
      // Guard against degenerate residue-FFT sizes.
      const double worst_rate =
          static_cast<double>(fs[static_cast<std::size_t>(c)]->active_band()) *
              shifts[static_cast<std::size_t>(c)].derivative_sup_bound(N) +
          std::abs(static_cast<double>(a)) *
              static_cast<double>(fs[static_cast<std::size_t>(lin)]->active_band());
      if (opts.nodes_per_cycle * worst_rate < static_cast<double>(1 << 22)) {
        return linear_chirp_path(*fs[static_cast<std::size_t>(lin)], a,
                                 *fs[static_cast<std::size_t>(c)],
                                 shifts[static_cast<std::size_t>(c)], N, n_grid,
                                 weight, opts);
      }
    }
  }

  return dense_path(fs, shifts, N, n_grid, weight, L_full);
}

}  // namespace torus_lab
