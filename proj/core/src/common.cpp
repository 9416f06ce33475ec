#include "torus_lab/common.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace torus_lab {

namespace {
std::size_t g_worker_override = 0;

std::size_t env_workers() {
  if (const char* v = std::getenv("TORUS_LAB_WORKERS")) {
    long n = std::atol(v);
    if (n > 0) return static_cast<std::size_t>(n);
  }
  std::size_t hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}
}  // namespace

std::size_t worker_count() {
  return g_worker_override ? g_worker_override : env_workers();
}

void set_worker_count(std::size_t w) { g_worker_override = w; }

std::uint64_t default_node_cap() {
  if (const char* v = std::getenv("TORUS_LAB_NODE_CAP")) {
    long long n = std::atoll(v);
    if (n > 0) return static_cast<std::uint64_t>(n);
  }
  return std::uint64_t{1} << 24;
}

void parallel_blocks(std::size_t nblocks,
                     const std::function<void(std::size_t)>& fn) {
  std::size_t workers = std::min(worker_count(), nblocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t b = next.fetch_add(1);
        if (b >= nblocks) return;
        fn(b);
      }
    });
  }
  for (auto& t : pool) t.join();
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace torus_lab
