#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace torus_lab {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// e(x) := exp(2*pi*i*x)
inline cplx unit_phase(double x) {
  return {std::cos(kTwoPi * x), std::sin(kTwoPi * x)};
}

// e(x) with the argument reduced mod 1 in extended precision first, so that
// very large phase values (|x| ~ 1e9 and beyond) keep full fractional accuracy.
inline cplx unit_phase_mod1(long double x) {
  long double frac = x - std::floor(x);
  return unit_phase(static_cast<double>(frac));
}

struct InvalidParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BandLimitError : std::domain_error {
  using std::domain_error::domain_error;
};

struct GridMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ResolutionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateFamilyError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a quadrature would need more nodes than the configured cap.
struct BudgetError : std::runtime_error {
  std::uint64_t required_nodes;
  std::uint64_t cap;
  BudgetError(std::uint64_t required, std::uint64_t cap_)
      : std::runtime_error("node budget exceeded: required " +
                           std::to_string(required) + " nodes, cap " +
                           std::to_string(cap_)),
        required_nodes(required),
        cap(cap_) {}
};

// Worker count: TORUS_LAB_WORKERS env var, else hardware concurrency.
std::size_t worker_count();
void set_worker_count(std::size_t w);  // 0 restores the env/default value

// Node budget cap: TORUS_LAB_NODE_CAP env var, else 2^24.
std::uint64_t default_node_cap();

struct QuadOptions {
  double nodes_per_cycle = 8.0;
  std::uint64_t node_cap = 0;  // 0 -> default_node_cap()
  std::uint64_t min_nodes = 64;

  std::uint64_t cap() const { return node_cap ? node_cap : default_node_cap(); }
};

// Runs fn(block_index) for block_index in [0, nblocks) on the worker pool and
// returns the per-block results in index order. The reduction order downstream
// is therefore independent of the worker count.
void parallel_blocks(std::size_t nblocks,
                     const std::function<void(std::size_t)>& fn);

bool is_power_of_two(std::size_t n);

}  // namespace torus_lab
