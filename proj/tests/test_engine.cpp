#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "torus_lab/engine.hpp"
#include "torus_lab/oscillatory.hpp"

using namespace torus_lab;
using testutil::random_trig_poly;

namespace {

// Brute-force midpoint quadrature for A(x) at the grid points, evaluating the
// trig polynomials pointwise. Independent of the engine's three code paths.
std::vector<cplx> brute_average(const std::vector<const TorusFunction*>& fs,
                                const std::vector<Polynomial>& shifts, double N,
                                std::size_t n, const SmoothCutoff* cutoff,
                                long l2, std::uint64_t L) {
  std::vector<cplx> acc(n, cplx{0.0, 0.0});
  const double h = N / static_cast<double>(L);
  for (std::uint64_t m = 0; m < L; ++m) {
    const double y = (static_cast<double>(m) + 0.5) * h;
    cplx w{(cutoff ? cutoff->eval(y / N) : 1.0) * h / N, 0.0};
    if (l2 != 0) w *= unit_phase_mod1(static_cast<long double>(l2) * y / N);
    if (w == cplx{0.0, 0.0}) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = static_cast<double>(j) / static_cast<double>(n);
      cplx prod{1.0, 0.0};
      for (std::size_t i = 0; i < fs.size(); ++i)
        prod *= (*fs[i])(x + shifts[i](y));
      acc[j] += w * prod;
    }
  }
  return acc;
}

double sup_diff(const TorusFunction& f, const std::vector<cplx>& ref) {
  double sup = 0.0;
  for (std::size_t j = 0; j < ref.size(); ++j)
    sup = std::max(sup, std::abs(f.samples()[j] - ref[j]));
  return sup;
}

}  // namespace

TEST_CASE("k = 0 reproduces the total weight") {
  AverageResult plain = progression_average({}, {}, 13.5, 32);
  CHECK(plain.fn.active_band() == 0);
  CHECK(std::abs(plain.fn.mean() - cplx{1.0, 0.0}) < 1e-12);

  SmoothCutoff chi;
  YWeight w{&chi, 0};
  AverageResult cut = progression_average({}, {}, 7.0, 32, w);
  CHECK(std::abs(cut.fn.mean() - cplx{chi.mass(), 0.0}) < 1e-7);
}

TEST_CASE("k = 0 with modulation matches a direct cutoff integral") {
  SmoothCutoff chi;
  const long l2 = 3;
  YWeight w{&chi, l2};
  const double N = 9.0;
  AverageResult r = progression_average({}, {}, N, 32, w);

  // Oracle: int_0^1 chi(u) e(l2 u) du by midpoint with 2^17 nodes.
  cplx want{0.0, 0.0};
  const std::uint64_t M = 1 << 17;
  for (std::uint64_t m = 0; m < M; ++m) {
    const double u = (static_cast<double>(m) + 0.5) / static_cast<double>(M);
    want += chi.eval(u) * unit_phase(static_cast<double>(l2) * u) /
            static_cast<double>(M);
  }
  CHECK(std::abs(r.fn.mean() - want) < 1e-7);
}

TEST_CASE("k = 1 with P = y and integer N collapses to the mean") {
  std::mt19937_64 rng(5);
  TorusFunction f = random_trig_poly(rng, 64, 6);
  AverageResult r = progression_average({&f}, {Polynomial({0.0, 1.0})}, 8.0, 64);
  for (long xi = -6; xi <= 6; ++xi) {
    const cplx want = (xi == 0) ? f.mean() : cplx{0.0, 0.0};
    CHECK(std::abs(r.fn.coeff(xi) - want) < 1e-9);
  }
}

TEST_CASE("k = 1 coefficients factor through the Weyl average") {
  std::mt19937_64 rng(17);
  TorusFunction f = random_trig_poly(rng, 64, 5);
  Polynomial P({0.0, 0.0, 1.0});
  const double N = 12.0;
  AverageResult r = progression_average({&f}, {P}, N, 64);
  for (long xi = -5; xi <= 5; ++xi) {
    const cplx want = f.coeff(xi) * weyl_average(P, xi, N).value;
    CHECK(std::abs(r.fn.coeff(xi) - want) < 1e-9);
  }
  // Cross-check against the brute-force oracle too.
  auto ref = brute_average({&f}, {P}, N, 64, nullptr, 0, 1 << 16);
  CHECK(sup_diff(r.fn, ref) < 1e-5);
}

TEST_CASE("k = 2 specialized residue path matches brute-force quadrature") {
  std::mt19937_64 rng(23);
  TorusFunction f1 = random_trig_poly(rng, 32, 3);
  TorusFunction f2 = random_trig_poly(rng, 32, 3);
  std::vector<Polynomial> shifts{Polynomial({0.0, 1.0}),
                                 Polynomial({0.0, 0.0, 1.0})};
  const double N = 4.0;
  AverageResult r = progression_average({&f1, &f2}, shifts, N, 32);
  auto ref = brute_average({&f1, &f2}, shifts, N, 32, nullptr, 0, 1 << 15);
  CHECK(sup_diff(r.fn, ref) < 1e-4);
  CHECK(sup_diff(r.fn, ref) <= 8.0 * r.est_error + 1e-7);
}

TEST_CASE("k = 2 specialized path with non-integer N and cutoff") {
  std::mt19937_64 rng(29);
  TorusFunction f1 = random_trig_poly(rng, 32, 2);
  TorusFunction f2 = random_trig_poly(rng, 32, 2);
  std::vector<Polynomial> shifts{Polynomial({0.0, 2.0}),
                                 Polynomial({0.0, 0.5, 1.0})};
  SmoothCutoff chi;
  YWeight w{&chi, 0};
  const double N = 5.75;
  AverageResult r = progression_average({&f1, &f2}, shifts, N, 32, w);
  auto ref = brute_average({&f1, &f2}, shifts, N, 32, &chi, 0, 1 << 16);
  CHECK(sup_diff(r.fn, ref) < 1e-5);
}

TEST_CASE("dense path (no integer-linear shift) matches brute-force") {
  std::mt19937_64 rng(31);
  TorusFunction f1 = random_trig_poly(rng, 32, 2);
  TorusFunction f2 = random_trig_poly(rng, 32, 2);
  std::vector<Polynomial> shifts{Polynomial({0.0, 1.5}),
                                 Polynomial({0.0, 0.0, 1.0})};
  const double N = 4.0;
  AverageResult r = progression_average({&f1, &f2}, shifts, N, 32);
  auto ref = brute_average({&f1, &f2}, shifts, N, 32, nullptr, 0, 1 << 15);
  CHECK(sup_diff(r.fn, ref) < 1e-4);
}

TEST_CASE("dense path with modulation matches brute-force") {
  std::mt19937_64 rng(37);
  TorusFunction f1 = random_trig_poly(rng, 32, 2);
  TorusFunction f2 = random_trig_poly(rng, 32, 2);
  std::vector<Polynomial> shifts{Polynomial({0.0, 0.5}),
                                 Polynomial({0.0, 0.0, 0.5})};
  SmoothCutoff chi;
  YWeight w{&chi, 2};
  const double N = 3.0;
  AverageResult r = progression_average({&f1, &f2}, shifts, N, 32, w);
  auto ref = brute_average({&f1, &f2}, shifts, N, 32, &chi, 2, 1 << 16);
  CHECK(sup_diff(r.fn, ref) < 1e-5);
}

TEST_CASE("k = 3 dense path matches brute-force") {
  std::mt19937_64 rng(41);
  TorusFunction f1 = random_trig_poly(rng, 32, 2);
  TorusFunction f2 = random_trig_poly(rng, 32, 2);
  TorusFunction f3 = random_trig_poly(rng, 32, 2);
  std::vector<Polynomial> shifts{Polynomial({0.0, 1.0}),
                                 Polynomial({0.0, 0.0, 1.0}),
                                 Polynomial({0.0, 0.0, 0.0, 0.25})};
  const double N = 3.0;
  AverageResult r = progression_average({&f1, &f2, &f3}, shifts, N, 32);
  auto ref = brute_average({&f1, &f2, &f3}, shifts, N, 32, nullptr, 0, 1 << 15);
  CHECK(sup_diff(r.fn, ref) < 1e-4);
}

TEST_CASE("input validation") {
  std::mt19937_64 rng(43);
  TorusFunction f32 = random_trig_poly(rng, 32, 3);
  TorusFunction f64 = random_trig_poly(rng, 64, 3);
  std::vector<Polynomial> shifts{Polynomial({0.0, 1.0}),
                                 Polynomial({0.0, 0.0, 1.0})};
  CHECK_THROWS_AS(progression_average({&f32, &f64}, shifts, 4.0, 32),
                  GridMismatchError);
  CHECK_THROWS_AS(progression_average({&f32}, shifts, 4.0, 32),
                  InvalidParameterError);
  CHECK_THROWS_AS(progression_average({&f32, &f32}, shifts, 0.5, 32),
                  InvalidParameterError);

  // Summed bands at n/2 must be rejected.
  TorusFunction wide = random_trig_poly(rng, 32, 9);
  CHECK_THROWS_AS(progression_average({&wide, &wide}, shifts, 4.0, 32),
                  BandLimitError);

  QuadOptions tight;
  tight.node_cap = 256;
  CHECK_THROWS_AS(
      progression_average({&f32, &f32}, shifts, 4096.0, 32, {}, tight),
      BudgetError);
}

TEST_CASE("even/odd split brackets the refinement error") {
  std::mt19937_64 rng(47);
  TorusFunction f1 = random_trig_poly(rng, 32, 3);
  TorusFunction f2 = random_trig_poly(rng, 32, 3);
  std::vector<Polynomial> shifts{Polynomial({0.0, 1.0}),
                                 Polynomial({0.0, 0.0, 1.0})};
  const double N = 16.0;
  AverageResult r = progression_average({&f1, &f2}, shifts, N, 32);
  QuadOptions fine;
  fine.nodes_per_cycle = 32.0;
  fine.min_nodes = 1 << 12;
  AverageResult ref = progression_average({&f1, &f2}, shifts, N, 32, {}, fine);
  double sup = 0.0;
  for (std::size_t j = 0; j < 32; ++j)
    sup = std::max(sup, std::abs(r.fn.samples()[j] - ref.fn.samples()[j]));
  CHECK(sup <= 8.0 * r.est_error + 1e-8);
}
