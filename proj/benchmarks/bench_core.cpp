#include <benchmark/benchmark.h>

#include <random>

#include "torus_lab/counting.hpp"
#include "torus_lab/fft.hpp"
#include "torus_lab/fractal.hpp"
#include "torus_lab/gowers.hpp"
#include "torus_lab/kernels.hpp"
#include "torus_lab/random_fn.hpp"
#include "torus_lab/torus_fn.hpp"

using namespace torus_lab;

namespace {

std::vector<cplx> random_samples(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& s : v) s = cplx{u(rng), u(rng)};
  return v;
}

void BM_FftForward(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto data = random_samples(n, 1);
  const Fft& plan = Fft::plan(n);
  for (auto _ : state) {
    auto copy = data;
    plan.forward(copy.data());
    benchmark::DoNotOptimize(copy.data());
  }
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_FftForward)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_Translate(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto f = TorusFunction::from_samples(random_samples(n, 2));
  double t = 0.123456;
  for (auto _ : state) {
    auto g = f.translate(t);
    benchmark::DoNotOptimize(&g);
    t += 1e-6;
  }
}
BENCHMARK(BM_Translate)->Arg(1024)->Arg(4096);

void BM_Convolve(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto f = TorusFunction::from_samples(random_samples(n, 3));
  auto g = TorusFunction::from_samples(random_samples(n, 4));
  for (auto _ : state) {
    auto h = convolve(f, g);
    benchmark::DoNotOptimize(&h);
  }
}
BENCHMARK(BM_Convolve)->Arg(1024)->Arg(4096);

void BM_WeylAverage(benchmark::State& state) {
  Polynomial P({0.0, 0.0, 1.0});
  const double N = static_cast<double>(state.range(0));
  QuadOptions opts;
  opts.node_cap = 1ull << 30;
  for (auto _ : state) {
    auto r = weyl_average(P, 7, N, opts);
    benchmark::DoNotOptimize(&r);
  }
}
BENCHMARK(BM_WeylAverage)->Arg(64)->Arg(256)->Arg(1024);

void BM_CountingK2(benchmark::State& state) {
  auto fam = PolynomialFamily::validate({{0.0, 1.0}, {0.0, 0.0, 1.0}});
  const std::size_t n = 64;
  auto f0 = random_trig_function(11, n, 4);
  auto f1 = random_trig_function(12, n, 4);
  auto f2 = random_trig_function(13, n, 4);
  const double N = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto r = counting_form(fam, N, {&f0, &f1, &f2});
    benchmark::DoNotOptimize(&r);
  }
}
BENCHMARK(BM_CountingK2)->Arg(16)->Arg(64)->Arg(256);

void BM_GowersU3(benchmark::State& state) {
  auto f = random_trig_function(21, 64, 8);
  for (auto _ : state) {
    double v = gowers_norm(f, 3);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_GowersU3);

void BM_CantorMollify(benchmark::State& state) {
  auto mu = cantor_measure(3, {0, 2}, 6, 2048);
  for (auto _ : state) {
    auto g = mollify(mu, static_cast<long>(state.range(0)));
    benchmark::DoNotOptimize(&g);
  }
}
BENCHMARK(BM_CantorMollify)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
