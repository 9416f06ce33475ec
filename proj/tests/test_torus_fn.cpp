#include "torus_lab/torus_fn.hpp"

#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace torus_lab;
using testutil::random_trig_poly;
using testutil::slow_coeff;

namespace {
double l2sq(const TorusFunction& f) {
  const double v = norm(f, NormKind::Lp(2.0));
  return v * v;
}
}  // namespace

TEST_CASE("from_fourier: constant, single mode, cosine") {
  auto one = TorusFunction::from_fourier({{0, 1.0}}, 64);
  for (const auto& s : one.samples()) {
    CHECK(std::abs(s - cplx{1.0, 0.0}) < 1e-12);
  }
  CHECK(std::abs(one.mean() - cplx{1.0, 0.0}) < 1e-14);

  auto e3 = TorusFunction::from_fourier({{3, 1.0}}, 64);
  for (std::size_t j = 0; j < 64; ++j) {
    CHECK(std::abs(e3.samples()[j] - unit_phase(3.0 * j / 64.0)) < 1e-12);
  }
  CHECK(std::abs(e3.mean()) < 1e-14);

  auto cosf = TorusFunction::from_fourier({{1, 0.5}, {-1, 0.5}}, 64);
  for (std::size_t j = 0; j < 64; ++j) {
    CHECK(std::abs(cosf.samples()[j] - std::cos(kTwoPi * j / 64.0)) < 1e-12);
  }
}

TEST_CASE("from_fourier rejects out-of-band frequencies") {
  CHECK_THROWS_AS(TorusFunction::from_fourier({{33, 1.0}}, 64),
                  BandLimitError);
  CHECK_THROWS_AS(TorusFunction::from_fourier({{-33, 1.0}}, 64),
                  BandLimitError);
  CHECK_NOTHROW(TorusFunction::from_fourier({{32, 0.0}}, 64));
  // xi = -n/2 aliases to the +n/2 bucket on the grid.
  auto f = TorusFunction::from_fourier({{-32, 1.0}}, 64);
  CHECK(std::abs(f.coeff(32) - cplx{1.0, 0.0}) < 1e-14);
}

TEST_CASE("fourier_coeff: orthogonality and Euler formula") {
  auto e3 = TorusFunction::from_fourier({{3, 1.0}}, 64);
  CHECK(std::abs(e3.coeff(3) - cplx{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(e3.coeff(2)) < 1e-12);
  auto cosf = TorusFunction::from_fourier({{1, 0.5}, {-1, 0.5}}, 64);
  CHECK(std::abs(cosf.coeff(1) - cplx{0.5, 0.0}) < 1e-12);
  CHECK_THROWS_AS(e3.coeff(40), BandLimitError);
}

TEST_CASE("coefficients match slow DFT on random samples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> samples(128);
  for (auto& s : samples) s = cplx{u(rng), u(rng)};
  auto f = TorusFunction::from_samples(samples);
  for (long xi : {-63L, -17L, 0L, 1L, 5L, 30L, 64L}) {
    CHECK(std::abs(f.coeff(xi) - slow_coeff(samples, xi)) < 1e-10);
  }
}

TEST_CASE("Parseval on random functions") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_trig_poly(rng, 256, 40);
    double sum = 0.0;
    for (const auto& c : f.packed_coeffs()) sum += std::norm(c);
    const double l2 = l2sq(f);
    CHECK(std::abs(l2 - sum) <= 1e-10 * std::max(1.0, l2));
  }
}

TEST_CASE("translate: phase rotation, identity, half period") {
  auto e1 = TorusFunction::from_fourier({{1, 1.0}}, 64);
  auto g = e1.translate(0.25);
  CHECK(std::abs(g.coeff(1) - cplx{0.0, 1.0}) < 1e-12);

  std::mt19937_64 rng(3);
  auto f = random_trig_poly(rng, 128, 20);
  auto f0 = f.translate(0.0);
  for (long xi = -20; xi <= 20; ++xi) {
    CHECK(std::abs(f0.coeff(xi) - f.coeff(xi)) < 1e-13);
  }

  auto cosf = TorusFunction::from_fourier({{1, 0.5}, {-1, 0.5}}, 64);
  auto neg = cosf.translate(0.5);
  for (std::size_t j = 0; j < 64; ++j) {
    CHECK(std::abs(neg.samples()[j] + cosf.samples()[j]) < 1e-12);
  }
}

TEST_CASE("translate composes additively") {
  std::mt19937_64 rng(5);
  auto f = random_trig_poly(rng, 256, 50);
  const double s = 0.1234, t = 0.7777;
  auto a = f.translate(s).translate(t);
  auto b = f.translate(s + t);
  for (long xi = -50; xi <= 50; ++xi) {
    CHECK(std::abs(a.coeff(xi) - b.coeff(xi)) < 1e-12);
  }
}

TEST_CASE("translate matches pointwise evaluation") {
  std::mt19937_64 rng(9);
  auto f = random_trig_poly(rng, 128, 15);
  const double t = 0.318;
  auto g = f.translate(t);
  for (double x : {0.0, 0.1, 0.5, 0.93}) {
    CHECK(std::abs(g(x) - f(x + t)) < 1e-11);
  }
}

TEST_CASE("norms: closed-form cases") {
  auto e1 = TorusFunction::from_fourier({{1, 1.0}}, 64);
  CHECK(norm(e1, NormKind::SobolevNeg(2.0)) ==
        doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-12));
  auto e5 = TorusFunction::from_fourier({{5, 1.0}}, 64);
  CHECK(norm(e5, NormKind::U2Fourier()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm(e5, NormKind::SobolevNeg(2.0)) ==
        doctest::Approx(std::pow(26.0, -0.5)).epsilon(1e-12));

  auto c = TorusFunction::from_fourier({{0, cplx{0.3, -0.4}}}, 64);
  for (double p : {1.0, 2.0, 3.5}) {
    CHECK(norm(c, NormKind::Lp(p)) == doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK(norm(c, NormKind::Linf()) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("norm parameter validation") {
  auto f = TorusFunction::from_fourier({{0, 1.0}}, 64);
  CHECK_THROWS_AS(norm(f, NormKind::Lp(0.5)), InvalidParameterError);
  CHECK_THROWS_AS(norm(f, NormKind::SobolevNeg(0.0)), InvalidParameterError);
}

TEST_CASE("SobolevNeg norm is nonincreasing in sigma") {
  std::mt19937_64 rng(21);
  auto f = random_trig_poly(rng, 256, 60);
  double prev = norm(f, NormKind::SobolevNeg(0.1));
  for (double sigma : {0.5, 1.0, 2.0, 4.0}) {
    double cur = norm(f, NormKind::SobolevNeg(sigma));
    CHECK(cur <= prev + 1e-14);
    prev = cur;
  }
}

TEST_CASE("round trip from_fourier of extracted coefficients") {
  std::mt19937_64 rng(13);
  auto f = random_trig_poly(rng, 128, 30);
  std::map<long, cplx> coeffs;
  for (long xi = -64 + 1; xi <= 64; ++xi) coeffs[xi] = f.coeff(xi);
  auto g = TorusFunction::from_fourier(coeffs, 128);
  for (std::size_t j = 0; j < 128; ++j) {
    CHECK(std::abs(g.samples()[j] - f.samples()[j]) < 1e-12);
  }
}

TEST_CASE("mean examples and one-boundedness flag") {
  CHECK(std::abs(TorusFunction::from_fourier({{3, 1.0}}, 64).mean()) < 1e-14);
  auto half = TorusFunction::from_fourier({{0, 0.5}, {1, 0.25}, {-1, 0.25}},
                                          64);
  CHECK(std::abs(half.mean() - cplx{0.5, 0.0}) < 1e-14);
  CHECK(half.is_one_bounded());
  auto big = TorusFunction::from_fourier({{0, 2.0}}, 64);
  CHECK(!big.is_one_bounded());
}

TEST_CASE("active_band and inner product") {
  auto f = TorusFunction::from_fourier({{3, 1.0}, {-7, 0.5}}, 64);
  CHECK(f.active_band() == 7);
  auto g = TorusFunction::from_fourier({{3, cplx{0.0, 2.0}}}, 64);
  CHECK(std::abs(inner_product(f, g) - cplx{0.0, -2.0}) < 1e-12);
}
