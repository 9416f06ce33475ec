#pragma once

#include <cstdint>
#include <vector>

#include "torus_lab/common.hpp"
#include "torus_lab/polynomials.hpp"

namespace torus_lab {

// Streaming evaluator for e(theta(y_m)) at the uniform midpoints
// y_m = y0 + m*h, where theta is a real polynomial phase measured in cycles.
//
// Values are produced by a forward-difference recurrence (deg(theta) complex
// multiplies per node, no trig calls), re-anchored every kAnchorStride nodes
// from a long-double Horner evaluation of the symbolic difference polynomials,
// so phase error stays near machine precision at any node index.
class ChirpSequence {
 public:
  static constexpr std::size_t kAnchorStride = 4096;

  ChirpSequence(const Polynomial& theta, double y0, double h);

  // Writes e(theta(y0 + (start+i)*h)) for i in [0, count) into out.
  void generate(std::uint64_t start, std::size_t count, cplx* out) const;

 private:
  void anchor(std::uint64_t m, cplx* table) const;

  // diff_[r] = coefficients (in m, long double) of the r-th forward
  // difference of q(m) = theta(y0 + m h).
  std::vector<std::vector<long double>> diff_;
  std::size_t degree_;
};

}  // namespace torus_lab
