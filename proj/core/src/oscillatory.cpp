#include "torus_lab/oscillatory.hpp"

#include <cmath>

#include "torus_lab/chirp.hpp"

namespace torus_lab {

namespace {
constexpr std::size_t kBlock = 8192;
}

WeylResult weyl_average(const Polynomial& P, long xi, double N,
                        QuadOptions opts) {
  if (N < 1.0) throw InvalidParameterError("weyl_average requires N >= 1");
  if (P.coeff(0) != 0.0) {
    throw InvalidParameterError(
        "weyl_average requires a zero constant term in P");
  }
  if (xi == 0) return {cplx{1.0, 0.0}, N, 0, 0, 0.0};

  const double rate =
      std::abs(static_cast<double>(xi)) * P.derivative_sup_bound(N);
  double want = opts.nodes_per_cycle * rate * N;
  std::uint64_t L = std::max<std::uint64_t>(
      opts.min_nodes, static_cast<std::uint64_t>(std::ceil(want)));
  if (L % 2) ++L;
  if (L > opts.cap()) throw BudgetError(L, opts.cap());

  const double h = N / static_cast<double>(L);
  ChirpSequence chirp(P * static_cast<double>(xi), 0.5 * h, h);

  const std::size_t nblocks = static_cast<std::size_t>((L + kBlock - 1) / kBlock);
  std::vector<cplx> even(nblocks, cplx{0.0, 0.0}), odd(nblocks, cplx{0.0, 0.0});
  parallel_blocks(nblocks, [&](std::size_t b) {
    const std::uint64_t start = static_cast<std::uint64_t>(b) * kBlock;
    const std::size_t count =
        static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, L - start));
    std::vector<cplx> buf(count);
    chirp.generate(start, count, buf.data());
    cplx se{0.0, 0.0}, so{0.0, 0.0};
    for (std::size_t i = 0; i < count; ++i) {
      if (((start + i) & 1) == 0)
        se += buf[i];
      else
        so += buf[i];
    }
    even[b] = se;
    odd[b] = so;
  });
  cplx se{0.0, 0.0}, so{0.0, 0.0};
  for (std::size_t b = 0; b < nblocks; ++b) {
    se += even[b];
    so += odd[b];
  }
  const double invL = 1.0 / static_cast<double>(L);
  const cplx a_even = 2.0 * se * invL;
  const cplx a_odd = 2.0 * so * invL;
  WeylResult r;
  r.value = 0.5 * (a_even + a_odd);
  r.N = N;
  r.xi = xi;
  r.node_count = L;
  r.est_error = 0.5 * std::abs(a_even - a_odd);
  return r;
}

std::vector<VdcRow> vdc_check(const PolynomialFamily& family,
                              const std::vector<long>& xis,
                              const std::vector<double>& Ns,
                              QuadOptions opts) {
  if (xis.empty() || Ns.empty()) {
    throw InvalidParameterError("vdc_check requires nonempty ranges");
  }
  std::vector<VdcRow> rows;
  rows.reserve(family.k() * xis.size() * Ns.size());
  for (std::size_t p = 0; p < family.k(); ++p) {
    const double d = static_cast<double>(family.poly(p).degree());
    for (long xi : xis) {
      for (double N : Ns) {
        WeylResult w = weyl_average(family.poly(p), xi, N, opts);
        VdcRow row;
        row.poly_index = p;
        row.xi = xi;
        row.N = N;
        row.abs_value = std::abs(w.value);
        row.product =
            row.abs_value *
            std::pow(N * std::abs(static_cast<double>(xi)), 1.0 / d);
        row.est_error = w.est_error;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace torus_lab
