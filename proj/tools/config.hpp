#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torus_lab/cutoff.hpp"
#include "torus_lab/polynomials.hpp"
#include "torus_lab/torus_fn.hpp"

namespace torus_lab::cli {

// Invalid or ill-typed configuration input; mapped to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key-value experiment description, one experiment per file. Lines are
// `key = value`; '#' starts a comment; keys must be unique. The original
// entry order is preserved so the CSV metadata block can echo the input
// verbatim (round-trip property).
class Config {
 public:
  static Config from_text(const std::string& text);
  static Config from_file(const std::string& path);

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  bool has(const std::string& key) const;
  const std::string& raw(const std::string& key) const;  // throws if missing

  std::string get_string(const std::string& key) const;
  long get_long(const std::string& key) const;
  double get_double(const std::string& key) const;
  long get_long_or(const std::string& key, long fallback) const;
  double get_double_or(const std::string& key, double fallback) const;
  std::string get_string_or(const std::string& key,
                            const std::string& fallback) const;
  std::vector<long> get_long_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Schema check for the `experiment` named in cfg: required keys present,
// unknown keys rejected, values parse and satisfy the module preconditions
// that are checkable without running the experiment. Throws ConfigError.
void validate_config(const Config& cfg);

// FNV-1a over the canonical `key = value` lines, for the metadata block.
std::uint64_t config_hash(const Config& cfg);

// --- shared value parsers (also used by the runner) ---

// "c0,c1,...;c0,c1,..." -> validated family {P_1, ..., P_k}.
PolynomialFamily parse_family(const std::string& text);

// Function specs:
//   const:RE[:IM]           constant function
//   e:XI                    the character e(XI x)
//   random:BAND             seeded 1-bounded random trig polynomial
//   coeffs:XI=RE:IM,...     explicit Fourier coefficients
// Random draws are seeded from (seed, slot) so each slot has its own stream.
TorusFunction parse_function_spec(const std::string& spec, std::size_t n,
                                  std::uint64_t seed, std::size_t slot);

// "a,b" -> bump cutoff supported on (a, b) in [0, 1].
SmoothCutoff parse_cutoff(const std::string& text);

}  // namespace torus_lab::cli
