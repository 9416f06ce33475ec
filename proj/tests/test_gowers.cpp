#include <cmath>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "torus_lab/gowers.hpp"

using namespace torus_lab;
using testutil::random_trig_poly;

TEST_CASE("mult_derivative matches sample-wise definition on grid shifts") {
  std::mt19937_64 rng(101);
  const std::size_t n = 64;
  TorusFunction f = random_trig_poly(rng, n, 8);
  for (std::size_t s : {1u, 5u, 32u}) {
    const double h = static_cast<double>(s) / static_cast<double>(n);
    TorusFunction g = mult_derivative(f, h);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx want = f.samples()[j] * std::conj(f.samples()[(j + s) % n]);
      CHECK(std::abs(g.samples()[j] - want) < 1e-12);
    }
  }
}

TEST_CASE("U^1 is the absolute mean") {
  std::mt19937_64 rng(103);
  TorusFunction f = random_trig_poly(rng, 64, 6);
  CHECK(gowers_norm(f, 1) == doctest::Approx(std::abs(f.mean())));
}

TEST_CASE("U^2: Direct, Recursive and Fourier methods agree") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    TorusFunction f = random_trig_poly(rng, 64, 8);
    const double direct = gowers_norm(f, 2, GowersMethod::Direct);
    const double rec = gowers_norm(f, 2, GowersMethod::Recursive);
    const double four = gowers_norm(f, 2, GowersMethod::Fourier);
    CHECK(direct == doctest::Approx(four).epsilon(1e-9));
    CHECK(rec == doctest::Approx(four).epsilon(1e-9));
  }
}

TEST_CASE("U^3: Direct and Recursive methods agree") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 3; ++trial) {
    TorusFunction f = random_trig_poly(rng, 64, 4);
    const double direct = gowers_norm(f, 3, GowersMethod::Direct);
    const double rec = gowers_norm(f, 3, GowersMethod::Recursive);
    CHECK(direct == doctest::Approx(rec).epsilon(1e-8));
  }
}

TEST_CASE("pure characters have unit Gowers norms for s >= 2") {
  TorusFunction e3 = TorusFunction::from_fourier({{3, cplx{1.0, 0.0}}}, 64);
  CHECK(gowers_norm(e3, 1) == doctest::Approx(0.0));  // U^1 sees only the mean
  for (int s = 2; s <= 3; ++s) {
    CHECK(gowers_norm(e3, s, GowersMethod::Direct) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("monotonicity U^2 <= U^3 for one-bounded inputs") {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 10; ++trial) {
    TorusFunction f = random_trig_poly(rng, 64, 6);
    REQUIRE(f.is_one_bounded());
    const double u2 = gowers_norm(f, 2, GowersMethod::Fourier);
    const double u3 = gowers_norm(f, 3, GowersMethod::Recursive);
    CHECK(u2 <= u3 + 1e-9);
  }
}

TEST_CASE("method restrictions and budget caps") {
  std::mt19937_64 rng(127);
  TorusFunction f = random_trig_poly(rng, 64, 4);
  CHECK_THROWS_AS(gowers_norm(f, 3, GowersMethod::Fourier),
                  InvalidParameterError);
  CHECK_THROWS_AS(gowers_norm(f, 0), InvalidParameterError);
  CHECK_THROWS_AS(gowers_norm(f, 4, GowersMethod::Direct),
                  InvalidParameterError);
  TorusFunction big = random_trig_poly(rng, 512, 4);
  CHECK_THROWS_AS(gowers_norm(big, 3, GowersMethod::Direct), BudgetError);
}

TEST_CASE("box weights: nonnegative, normalized, spacing <= 1/2") {
  BoxWeights bw({3.7, 0.8});
  REQUIRE(bw.coords.size() == 2);
  for (const auto& c : bw.coords) {
    double total = 0.0;
    REQUIRE(c.nodes.size() == c.weights.size());
    CHECK(c.nodes.size() == 2 * static_cast<std::size_t>(std::ceil(2 * c.H)) + 1);
    for (std::size_t j = 0; j < c.nodes.size(); ++j) {
      CHECK(c.weights[j] >= 0.0);
      CHECK(std::abs(c.nodes[j]) <= c.H + 1e-12);
      if (j) CHECK(c.nodes[j] - c.nodes[j - 1] <= 0.5 + 1e-12);
      total += c.weights[j];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("box_norm matches direct double-difference quadrature") {
  std::mt19937_64 rng(131);
  TorusFunction f = random_trig_poly(rng, 64, 4);
  BoxWeights bw({2.3, 1.1});
  const double got = box_norm(f, bw);

  // Oracle: sum_{j,l} w1_j w2_l * (1/n) sum_x Delta_{h2} Delta_{h1} f(x),
  // evaluating the trig polynomial pointwise (real shifts, grid mean is the
  // exact integral since the band of the product fits in (-n/2, n/2)).
  const std::size_t n = f.size();
  double acc = 0.0;
  const auto& c1 = bw.coords[0];
  const auto& c2 = bw.coords[1];
  for (std::size_t j = 0; j < c1.nodes.size(); ++j) {
    for (std::size_t l = 0; l < c2.nodes.size(); ++l) {
      const double h1 = c1.nodes[j], h2 = c2.nodes[l];
      cplx m{0.0, 0.0};
      for (std::size_t t = 0; t < n; ++t) {
        const double x = static_cast<double>(t) / static_cast<double>(n);
        m += f(x) * std::conj(f(x + h1)) * std::conj(f(x + h2)) *
             f(x + h1 + h2);
      }
      acc += c1.weights[j] * c2.weights[l] * (m / static_cast<double>(n)).real();
    }
  }
  const double want = std::pow(std::max(0.0, acc), 0.25);
  CHECK(got == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("Gowers-Cauchy-Schwarz at s = 2") {
  std::mt19937_64 rng(137);
  for (int trial = 0; trial < 10; ++trial) {
    TorusFunction f00 = random_trig_poly(rng, 64, 6);
    TorusFunction f01 = random_trig_poly(rng, 64, 6);
    TorusFunction f10 = random_trig_poly(rng, 64, 6);
    TorusFunction f11 = random_trig_poly(rng, 64, 6);
    GcsCheck c = gcs_check({&f00, &f01, &f10, &f11});
    CHECK(c.lhs <= c.rhs + 1e-9);
  }
  // Equality when all four corners carry the same function.
  TorusFunction f = random_trig_poly(rng, 64, 6);
  GcsCheck c = gcs_check({&f, &f, &f, &f});
  const double u2 = gowers_norm(f, 2, GowersMethod::Fourier);
  CHECK(c.lhs == doctest::Approx(u2 * u2 * u2 * u2).epsilon(1e-9));
  CHECK(c.rhs == doctest::Approx(u2 * u2 * u2 * u2).epsilon(1e-9));
}
