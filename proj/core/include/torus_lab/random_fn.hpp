#pragma once

#include <cstdint>
#include <random>

#include "torus_lab/torus_fn.hpp"

namespace torus_lab {

// Seeded random trigonometric polynomial with active band <= band, rescaled
// so the sampled sup-norm is at most `bound` (default 1-bounded). Draws are
// taken from the passed engine so callers can derive reproducible streams.
TorusFunction random_trig_function(std::mt19937_64& rng, std::size_t n,
                                   long band, double bound = 1.0);

// Convenience overload seeding a fresh engine.
TorusFunction random_trig_function(std::uint64_t seed, std::size_t n,
                                   long band, double bound = 1.0);

}  // namespace torus_lab
