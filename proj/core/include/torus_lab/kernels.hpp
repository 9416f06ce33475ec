#pragma once

#include "torus_lab/torus_fn.hpp"

namespace torus_lab {

struct KernelSpec {
  enum class Kind { Dirichlet, Fejer } kind;
  long M;  // order, positive

  static KernelSpec dirichlet(long M) { return {Kind::Dirichlet, M}; }
  static KernelSpec fejer(long M) { return {Kind::Fejer, M}; }
};

// Built in frequency domain: Dirichlet has fhat(m) = 1 for |m| <= M,
// Fejer has fhat(m) = 1 - |m|/(M+1). Requires 2M < n.
TorusFunction kernel(const KernelSpec& spec, std::size_t n);

// (f*g)^(xi) = fhat(xi) ghat(xi); same grid required.
TorusFunction convolve(const TorusFunction& f, const TorusFunction& g);

// Littlewood-Paley projection: j = 0 keeps the mean; j >= 1 keeps
// |xi| in [2^{j-1}, 2^j). Requires 2^j <= n/2 for j >= 1.
TorusFunction lp_project(const TorusFunction& f, long j);

}  // namespace torus_lab
