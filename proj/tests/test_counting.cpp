#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "torus_lab/counting.hpp"

using namespace torus_lab;
using testutil::random_trig_poly;

namespace {

// Nested 2D midpoint quadrature for Lambda, fully independent of the engine.
cplx brute_counting(const PolynomialFamily& P, double N,
                    const std::vector<const TorusFunction*>& fs,
                    const SmoothCutoff* cutoff, std::uint64_t L) {
  const std::size_t n = fs[0]->size();
  cplx acc{0.0, 0.0};
  const double h = N / static_cast<double>(L);
  for (std::uint64_t m = 0; m < L; ++m) {
    const double y = (static_cast<double>(m) + 0.5) * h;
    const double w = (cutoff ? cutoff->eval(y / N) : 1.0) * h / N;
    if (w == 0.0) continue;
    cplx x_int{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double x = static_cast<double>(j) / static_cast<double>(n);
      cplx prod = (*fs[0])(x);
      for (std::size_t i = 1; i < fs.size(); ++i)
        prod *= (*fs[i])(x + P.poly(i - 1)(y));
      x_int += prod;
    }
    acc += w * x_int / static_cast<double>(n);
  }
  return acc;
}

}  // namespace

TEST_CASE("constant inputs give value == main term") {
  auto fam = PolynomialFamily::validate({{0.0, 1.0}, {0.0, 0.0, 1.0}});
  TorusFunction c1 = TorusFunction::from_fourier({{0, cplx{0.5, 0.25}}}, 64);
  TorusFunction c2 = TorusFunction::from_fourier({{0, cplx{-0.3, 0.0}}}, 64);
  TorusFunction c3 = TorusFunction::from_fourier({{0, cplx{0.8, -0.1}}}, 64);
  CountingResult r = counting_form(fam, 6.5, {&c1, &c2, &c3});
  CHECK(std::abs(r.value - r.main_term) < 1e-12);
  CHECK(std::abs(r.main_term - c1.mean() * c2.mean() * c3.mean()) < 1e-14);

  SmoothCutoff chi;
  CountingResult rc = counting_form(fam, 6.5, {&c1, &c2, &c3}, &chi);
  CHECK(std::abs(rc.main_term -
                 chi.mass() * c1.mean() * c2.mean() * c3.mean()) < 1e-12);
  CHECK(std::abs(rc.value - rc.main_term) < 1e-7);
}

TEST_CASE("k = 1 counting matches the two-term oracle") {
  std::mt19937_64 rng(53);
  auto fam = PolynomialFamily::validate({{0.0, 0.0, 1.0}});
  for (int trial = 0; trial < 5; ++trial) {
    TorusFunction f0 = random_trig_poly(rng, 64, 8);
    TorusFunction f1 = random_trig_poly(rng, 64, 8);
    const double N = 7.0 + trial * 3.3;
    CountingResult r = counting_form(fam, N, {&f0, &f1});
    const cplx want = two_term_oracle(fam.poly(0), f0, f1, N, {});
    CHECK(std::abs(r.value - want) < 1e-9);
  }
}

TEST_CASE("k = 2 counting matches nested brute-force quadrature") {
  std::mt19937_64 rng(59);
  auto fam = PolynomialFamily::validate({{0.0, 1.0}, {0.0, 0.0, 1.0}});
  TorusFunction f0 = random_trig_poly(rng, 64, 4);
  TorusFunction f1 = random_trig_poly(rng, 64, 4);
  TorusFunction f2 = random_trig_poly(rng, 64, 4);
  const double N = 5.0;
  CountingResult r = counting_form(fam, N, {&f0, &f1, &f2});
  const cplx want = brute_counting(fam, N, {&f0, &f1, &f2}, nullptr, 1 << 15);
  CHECK(std::abs(r.value - want) < 1e-5);

  SmoothCutoff chi;
  CountingResult rc = counting_form(fam, N, {&f0, &f1, &f2}, &chi);
  const cplx wantc = brute_counting(fam, N, {&f0, &f1, &f2}, &chi, 1 << 16);
  CHECK(std::abs(rc.value - wantc) < 1e-5);
}

TEST_CASE("dual pairing identity holds in every slot") {
  std::mt19937_64 rng(61);
  auto fam = PolynomialFamily::validate({{0.0, 1.0}, {0.0, 0.0, 1.0}});
  TorusFunction f0 = random_trig_poly(rng, 64, 4);
  TorusFunction f1 = random_trig_poly(rng, 64, 4);
  TorusFunction f2 = random_trig_poly(rng, 64, 4);
  for (std::size_t i = 0; i <= 2; ++i) {
    PairingCheck c = dual_pairing_check(fam, 6.0, {&f0, &f1, &f2}, i);
    CHECK(std::abs(c.lhs - c.rhs) <=
          std::max(1e-7, 4.0 * c.est_error));
  }
}

TEST_CASE("dualization inequality (Cauchy-Schwarz step)") {
  std::mt19937_64 rng(67);
  auto fam = PolynomialFamily::validate({{0.0, 1.0}, {0.0, 0.0, 1.0}});
  SmoothCutoff chi;
  for (int trial = 0; trial < 4; ++trial) {
    TorusFunction f0 = random_trig_poly(rng, 64, 4);
    TorusFunction f1 = random_trig_poly(rng, 64, 4);
    TorusFunction f2 = random_trig_poly(rng, 64, 4);
    for (std::size_t i = 0; i <= 2; ++i) {
      DualizationCheck c =
          dualization_check(fam, 5.5, {&f0, &f1, &f2}, i, &chi);
      CHECK(c.lhs <= c.rhs + std::max(1e-7, 4.0 * c.est_error));
    }
  }
}

TEST_CASE("decay_fit recovers the 1/N rate for a linear progression") {
  std::mt19937_64 rng(71);
  TorusFunction f0 = random_trig_poly(rng, 64, 6);
  TorusFunction f1 = random_trig_poly(rng, 64, 6);
  auto fam = PolynomialFamily::validate({{0.0, 1.0}});
  // Non-integer N so the oscillatory error terms do not vanish identically.
  DecayFit fit = decay_fit(fam, {&f0, &f1}, {4.3, 8.6, 17.2, 34.4, 68.8});
  CHECK(fit.slope < -0.6);
  CHECK(fit.slope > -1.8);
  CHECK(fit.errors.size() == 5);
}

TEST_CASE("decay_fit rejects degenerate (exactly resolved) input") {
  TorusFunction c0 = TorusFunction::from_fourier({{0, cplx{0.5, 0.0}}}, 64);
  TorusFunction c1 = TorusFunction::from_fourier({{0, cplx{0.4, 0.0}}}, 64);
  auto fam = PolynomialFamily::validate({{0.0, 1.0}});
  CHECK_THROWS_AS(decay_fit(fam, {&c0, &c1}, {4.0, 8.0, 16.0, 32.0}),
                  InvalidParameterError);
  CHECK_THROWS_AS(decay_fit(fam, {&c0, &c1}, {4.3, 8.6, 17.2}),
                  InvalidParameterError);  // too few points
}

TEST_CASE("band precondition n/(2(k+1))") {
  std::mt19937_64 rng(73);
  auto fam = PolynomialFamily::validate({{0.0, 1.0}, {0.0, 0.0, 1.0}});
  TorusFunction wide = random_trig_poly(rng, 64, 12);  // > 64/6
  TorusFunction ok = random_trig_poly(rng, 64, 4);
  CHECK_THROWS_AS(counting_form(fam, 4.0, {&wide, &ok, &ok}), BandLimitError);
  CHECK_THROWS_AS(counting_form(fam, 4.0, {&ok, &ok}), InvalidParameterError);
}
