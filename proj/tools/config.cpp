#include "config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "torus_lab/fractal.hpp"
#include "torus_lab/random_fn.hpp"

namespace torus_lab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

long to_long(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long r = 0;
  try {
    r = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected integer, got '" + v + "'");
  }
  if (pos != v.size())
    throw ConfigError("key '" + key + "': expected integer, got '" + v + "'");
  return r;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double r = 0.0;
  try {
    r = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected number, got '" + v + "'");
  }
  if (pos != v.size())
    throw ConfigError("key '" + key + "': expected number, got '" + v + "'");
  return r;
}

}  // namespace

Config Config::from_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(key).second)
      throw ConfigError("duplicate key '" + key + "'");
    cfg.entries_.emplace_back(key, value);
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

bool Config::has(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return true;
  return false;
}

const std::string& Config::raw(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  throw ConfigError("missing required key '" + key + "'");
}

std::string Config::get_string(const std::string& key) const {
  return raw(key);
}

long Config::get_long(const std::string& key) const {
  return to_long(key, raw(key));
}

double Config::get_double(const std::string& key) const {
  return to_double(key, raw(key));
}

long Config::get_long_or(const std::string& key, long fallback) const {
  return has(key) ? get_long(key) : fallback;
}

double Config::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::string Config::get_string_or(const std::string& key,
                                  const std::string& fallback) const {
  return has(key) ? raw(key) : fallback;
}

std::vector<long> Config::get_long_list(const std::string& key) const {
  std::vector<long> out;
  for (const auto& part : split(raw(key), ','))
    out.push_back(to_long(key, part));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& part : split(raw(key), ','))
    out.push_back(to_double(key, part));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

std::uint64_t config_hash(const Config& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [k, v] : cfg.entries()) {
    mix(k);
    mix("=");
    mix(v);
    mix("\n");
  }
  return h;
}

PolynomialFamily parse_family(const std::string& text) {
  std::vector<std::vector<double>> raw;
  for (const auto& part : split(text, ';')) {
    std::vector<double> coeffs;
    for (const auto& c : split(part, ',')) coeffs.push_back(to_double("family", c));
    raw.push_back(std::move(coeffs));
  }
  try {
    return PolynomialFamily::validate(raw);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("key 'family': ") + e.what());
  }
}

TorusFunction parse_function_spec(const std::string& spec, std::size_t n,
                                  std::uint64_t seed, std::size_t slot) {
  const auto colon = spec.find(':');
  const std::string kind =
      colon == std::string::npos ? spec : spec.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (kind == "const") {
      auto parts = split(rest, ':');
      if (parts.empty() || parts.size() > 2)
        throw ConfigError("const spec needs RE[:IM]");
      const double re = to_double("function", parts[0]);
      const double im = parts.size() == 2 ? to_double("function", parts[1]) : 0.0;
      return TorusFunction::from_fourier({{0, cplx{re, im}}}, n);
    }
    if (kind == "e") {
      const long xi = to_long("function", rest);
      return TorusFunction::from_fourier({{xi, cplx{1.0, 0.0}}}, n);
    }
    if (kind == "random") {
      const long band = to_long("function", rest);
      return random_trig_function(seed * 1000003ull + slot, n, band);
    }
    if (kind == "coeffs") {
      std::map<long, cplx> coeffs;
      for (const auto& item : split(rest, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
          throw ConfigError("coeffs spec item needs XI=RE:IM");
        const long xi = to_long("function", trim(item.substr(0, eq)));
        auto vals = split(item.substr(eq + 1), ':');
        if (vals.size() != 2) throw ConfigError("coeffs spec item needs XI=RE:IM");
        coeffs[xi] = cplx{to_double("function", vals[0]),
                          to_double("function", vals[1])};
      }
      if (coeffs.empty()) throw ConfigError("coeffs spec is empty");
      return TorusFunction::from_fourier(coeffs, n);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("function spec '" + spec + "': " + e.what());
  }
  throw ConfigError("unknown function spec kind '" + kind +
                    "' (expected const, e, random, or coeffs)");
}

SmoothCutoff parse_cutoff(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 2) throw ConfigError("key 'cutoff': expected 'a,b'");
  const double a = to_double("cutoff", parts[0]);
  const double b = to_double("cutoff", parts[1]);
  try {
    return SmoothCutoff(a, b);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("key 'cutoff': ") + e.what());
  }
}

namespace {

// Required and optional keys for one experiment; the f-slot keys are added
// dynamically from the family size.
struct Schema {
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

const std::vector<std::string> kCommonOptional = {"experiment", "seed",
                                                  "output"};
const std::vector<std::string> kQuadOptional = {"nodes_per_cycle", "node_cap"};

Schema schema_for(const Config& cfg, const std::string& experiment) {
  Schema s;
  auto add_quad = [&] {
    s.optional.insert(s.optional.end(), kQuadOptional.begin(),
                      kQuadOptional.end());
  };
  auto add_slots = [&](std::size_t first, std::size_t last) {
    for (std::size_t i = first; i <= last; ++i)
      s.required.push_back("f" + std::to_string(i));
  };
  auto family_k = [&]() -> std::size_t {
    return parse_family(cfg.raw("family")).k();
  };

  if (experiment == "norms") {
    s.required = {"n", "f"};
  } else if (experiment == "counting") {
    s.required = {"family", "n", "N"};
    add_slots(0, family_k());
    s.optional = {"cutoff"};
    add_quad();
  } else if (experiment == "decay") {
    if (cfg.has("preset")) {
      s.required = {"preset"};
    } else {
      s.required = {"family", "n", "N_list"};
      add_slots(0, family_k());
      s.optional = {"cutoff"};
    }
    add_quad();
  } else if (experiment == "vdc") {
    s.required = {"family", "xi_list", "N_list"};
    add_quad();
  } else if (experiment == "fractal") {
    s.required = {"b", "digits", "level", "n", "tau", "j_list"};
    s.optional = {"radii", "riesz_t"};
  } else if (experiment == "nu") {
    s.required = {"b", "digits", "level", "n", "family", "N",
                  "g", "l2",     "M_list"};
    s.optional = {"cutoff"};
    add_quad();
  } else if (experiment == "progression") {
    s.required = {"set", "family", "y_min", "y_max", "y_step"};
    s.optional = {"max_depth"};
    if (cfg.has("set") && cfg.raw("set") == "cantor") {
      s.required.push_back("b");
      s.required.push_back("digits");
      s.required.push_back("level");
    }
  } else if (experiment == "ergodic") {
    s.required = {"family", "n", "N", "x_count"};
    add_slots(1, family_k());
    add_quad();
  } else if (experiment == "deviation") {
    s.required = {"family", "n",       "tau", "l_lo", "l_hi",
                  "x_count", "delta", "l0"};
    add_slots(1, family_k());
    add_quad();
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  s.optional.insert(s.optional.end(), kCommonOptional.begin(),
                    kCommonOptional.end());
  return s;
}

void check_positive_grid(long n) {
  if (n < 2 || n > (1 << 20))
    throw ConfigError("key 'n': grid size must be in [2, 2^20]");
  if ((n & (n - 1)) != 0)
    throw ConfigError("key 'n': grid size must be a power of two");
}

std::vector<int> digit_list(const Config& cfg) {
  std::vector<int> digits;
  for (long d : cfg.get_long_list("digits")) digits.push_back(static_cast<int>(d));
  return digits;
}

}  // namespace

void validate_config(const Config& cfg) {
  const std::string experiment = cfg.get_string("experiment");
  const Schema schema = schema_for(cfg, experiment);

  std::set<std::string> allowed(schema.required.begin(), schema.required.end());
  allowed.insert(schema.optional.begin(), schema.optional.end());
  for (const auto& [k, v] : cfg.entries())
    if (!allowed.count(k))
      throw ConfigError("unknown key '" + k + "' for experiment '" +
                        experiment + "'");
  for (const auto& k : schema.required) (void)cfg.raw(k);

  const std::uint64_t seed =
      static_cast<std::uint64_t>(cfg.get_long_or("seed", 1));

  // Value-level checks, mirroring what the runner will construct.
  try {
    if (experiment == "norms") {
      const long n = cfg.get_long("n");
      check_positive_grid(n);
      (void)parse_function_spec(cfg.raw("f"), static_cast<std::size_t>(n), seed,
                                0);
    } else if (experiment == "counting" || experiment == "ergodic" ||
               experiment == "deviation" ||
               (experiment == "decay" && !cfg.has("preset"))) {
      PolynomialFamily fam = parse_family(cfg.raw("family"));
      const long n = cfg.get_long("n");
      check_positive_grid(n);
      const std::size_t first =
          (experiment == "ergodic" || experiment == "deviation") ? 1 : 0;
      for (std::size_t i = first; i <= fam.k(); ++i)
        (void)parse_function_spec(cfg.raw("f" + std::to_string(i)),
                                  static_cast<std::size_t>(n), seed, i);
      if (cfg.has("cutoff")) (void)parse_cutoff(cfg.raw("cutoff"));
      if (experiment == "counting" && !(cfg.get_double("N") > 0.0))
        throw ConfigError("key 'N': must be positive");
      if (experiment == "decay" && cfg.get_double_list("N_list").size() < 4)
        throw ConfigError("key 'N_list': need at least 4 values");
      if (experiment == "deviation" &&
          !(cfg.get_double("tau") > 0.0))
        throw ConfigError("key 'tau': must be positive");
    } else if (experiment == "decay") {
      if (cfg.raw("preset") != "fresnel")
        throw ConfigError("key 'preset': only 'fresnel' is defined");
    } else if (experiment == "vdc") {
      (void)parse_family(cfg.raw("family"));
      (void)cfg.get_long_list("xi_list");
      (void)cfg.get_double_list("N_list");
    } else if (experiment == "fractal" || experiment == "nu") {
      const long n = cfg.get_long("n");
      check_positive_grid(n);
      (void)cantor_measure(cfg.get_long("b"), digit_list(cfg),
                           static_cast<int>(cfg.get_long("level")),
                           static_cast<std::size_t>(n));
      if (experiment == "nu") {
        (void)parse_family(cfg.raw("family"));
        (void)parse_function_spec(cfg.raw("g"), static_cast<std::size_t>(n),
                                  seed, 0);
        (void)cfg.get_long_list("M_list");
        if (cfg.has("cutoff")) (void)parse_cutoff(cfg.raw("cutoff"));
      } else {
        (void)cfg.get_long_list("j_list");
        if (cfg.has("radii")) (void)cfg.get_double_list("radii");
      }
    } else if (experiment == "progression") {
      const std::string set = cfg.raw("set");
      if (set != "full" && set != "cantor")
        throw ConfigError("key 'set': expected 'full' or 'cantor'");
      if (set == "cantor")
        (void)IntervalSet::from_cantor(cfg.get_long("b"), digit_list(cfg),
                                       static_cast<int>(cfg.get_long("level")));
      (void)parse_family(cfg.raw("family"));
      if (!(cfg.get_double("y_step") > 0.0))
        throw ConfigError("key 'y_step': must be positive");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace torus_lab::cli
