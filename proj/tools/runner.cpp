#include "runner.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "torus_lab/ergodic.hpp"
#include "torus_lab/fractal.hpp"
#include "torus_lab/gowers.hpp"

namespace torus_lab::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(cplx v) { return fmt(v.real()) + "," + fmt(v.imag()); }

// Deterministic CSV assembly: '#' metadata block (version, config hash,
// seed, verbatim config echo), then a header row and data rows.
class Csv {
 public:
  Csv(const Config& cfg, std::uint64_t seed) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    out_ << "# torus-lab " << kVersion << "\n";
    out_ << "# config-hash " << hash << "\n";
    out_ << "# seed " << seed << "\n";
    for (const auto& [k, v] : cfg.entries())
      out_ << "# config " << k << " = " << v << "\n";
  }

  void meta(const std::string& key, const std::string& value) {
    out_ << "# " << key << " " << value << "\n";
  }
  void meta(const std::string& key, double value) { meta(key, fmt(value)); }

  void line(const std::string& s) { out_ << s << "\n"; }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

QuadOptions quad_options(const Config& cfg) {
  QuadOptions opts;
  opts.nodes_per_cycle = cfg.get_double_or("nodes_per_cycle", opts.nodes_per_cycle);
  opts.node_cap = static_cast<std::uint64_t>(cfg.get_long_or(
      "node_cap", static_cast<long>(opts.node_cap)));
  return opts;
}

std::vector<double> unit_grid(std::size_t m) {
  std::vector<double> xs(m);
  for (std::size_t j = 0; j < m; ++j)
    xs[j] = static_cast<double>(j) / static_cast<double>(m);
  return xs;
}

std::vector<int> digit_list(const Config& cfg) {
  std::vector<int> digits;
  for (long d : cfg.get_long_list("digits"))
    digits.push_back(static_cast<int>(d));
  return digits;
}

struct Slots {
  std::vector<TorusFunction> owned;
  std::vector<const TorusFunction*> ptrs;
};

Slots load_slots(const Config& cfg, std::size_t n, std::uint64_t seed,
                 std::size_t first, std::size_t last) {
  Slots s;
  s.owned.reserve(last - first + 1);
  for (std::size_t i = first; i <= last; ++i)
    s.owned.push_back(
        parse_function_spec(cfg.raw("f" + std::to_string(i)), n, seed, i));
  for (const auto& f : s.owned) s.ptrs.push_back(&f);
  return s;
}

void run_norms(const Config& cfg, std::uint64_t seed, Csv& csv) {
  const auto n = static_cast<std::size_t>(cfg.get_long("n"));
  TorusFunction f = parse_function_spec(cfg.raw("f"), n, seed, 0);
  csv.line("quantity,value");
  csv.line("mean_abs," + fmt(std::abs(f.mean())));
  csv.line("l2," + fmt(norm(f, NormKind::Lp(2.0))));
  csv.line("linf," + fmt(norm(f, NormKind::Linf())));
  csv.line("u1," + fmt(gowers_norm(f, 1)));
  csv.line("u2," + fmt(gowers_norm(f, 2)));
  csv.line("u2_fourier," + fmt(norm(f, NormKind::U2Fourier())));
  csv.line("u3," + fmt(gowers_norm(f, 3)));
}

void run_counting(const Config& cfg, std::uint64_t seed, Csv& csv) {
  PolynomialFamily fam = parse_family(cfg.raw("family"));
  const auto n = static_cast<std::size_t>(cfg.get_long("n"));
  Slots slots = load_slots(cfg, n, seed, 0, fam.k());
  std::optional<SmoothCutoff> chi;
  if (cfg.has("cutoff")) chi.emplace(parse_cutoff(cfg.raw("cutoff")));
  CountingResult r = counting_form(fam, cfg.get_double("N"), slots.ptrs,
                                   chi ? &*chi : nullptr, quad_options(cfg));
  csv.line("N,value_re,value_im,main_re,main_im,err_abs,est_error,nodes");
  csv.line(fmt(r.N) + "," + fmt(r.value) + "," + fmt(r.main_term) + "," +
           fmt(std::abs(r.error)) + "," + fmt(r.est_error) + "," +
           std::to_string(r.node_count));
}

void run_decay(const Config& cfg, std::uint64_t seed, Csv& csv) {
  PolynomialFamily fam = PolynomialFamily::validate({{0.0, 0.0, 1.0}});
  Slots slots;
  std::vector<double> N_list;
  std::optional<SmoothCutoff> chi;
  if (cfg.has("preset")) {
    // k = 1 Fresnel case: P = {y^2}, f0 = e(x), f1 = e(-x); the error term is
    // a pure quadratic Weyl average with |error| ~ N^{-1}.
    const std::size_t n = 64;
    slots.owned.push_back(TorusFunction::from_fourier({{1, cplx{1.0, 0.0}}}, n));
    slots.owned.push_back(TorusFunction::from_fourier({{-1, cplx{1.0, 0.0}}}, n));
    for (double N = 8.0; N <= 512.0; N *= 2.0) N_list.push_back(N);
  } else {
    fam = parse_family(cfg.raw("family"));
    const auto n = static_cast<std::size_t>(cfg.get_long("n"));
    slots = load_slots(cfg, n, seed, 0, fam.k());
    N_list = cfg.get_double_list("N_list");
    if (cfg.has("cutoff")) chi.emplace(parse_cutoff(cfg.raw("cutoff")));
  }
  slots.ptrs.clear();
  for (const auto& f : slots.owned) slots.ptrs.push_back(&f);

  DecayFit fit = decay_fit(fam, slots.ptrs, N_list, chi ? &*chi : nullptr,
                           quad_options(cfg));
  csv.meta("slope", fit.slope);
  csv.meta("intercept", fit.intercept);
  csv.meta("r2", fit.r2);
  csv.line("N,abs_error");
  for (std::size_t i = 0; i < fit.N_list.size(); ++i)
    csv.line(fmt(fit.N_list[i]) + "," + fmt(fit.errors[i]));
}

void run_vdc(const Config& cfg, Csv& csv) {
  PolynomialFamily fam = parse_family(cfg.raw("family"));
  auto rows = vdc_check(fam, cfg.get_long_list("xi_list"),
                        cfg.get_double_list("N_list"), quad_options(cfg));
  csv.line("poly_index,xi,N,abs_value,product,est_error");
  for (const auto& r : rows)
    csv.line(std::to_string(r.poly_index) + "," + std::to_string(r.xi) + "," +
             fmt(r.N) + "," + fmt(r.abs_value) + "," + fmt(r.product) + "," +
             fmt(r.est_error));
}

void run_fractal(const Config& cfg, Csv& csv) {
  const auto n = static_cast<std::size_t>(cfg.get_long("n"));
  FrostmanMeasure mu = cantor_measure(cfg.get_long("b"), digit_list(cfg),
                                      static_cast<int>(cfg.get_long("level")),
                                      n);
  std::vector<double> radii;
  if (cfg.has("radii")) {
    radii = cfg.get_double_list("radii");
  } else {
    double r = 0.5;
    for (int l = 0; l < 12 && r >= 2.0 / static_cast<double>(n); ++l, r *= 0.5)
      radii.push_back(r);
  }
  const double C = frostman_verify(mu, radii);
  csv.meta("s", mu.s);
  csv.meta("mass", mu.mass());
  csv.meta("frostman_const", C);
  if (cfg.has("riesz_t")) {
    const double t = cfg.get_double("riesz_t");
    csv.meta("riesz_fourier", riesz_energy(mu, t, RieszMethod::Fourier));
    if (n <= 2048)
      csv.meta("riesz_direct", riesz_energy(mu, t, RieszMethod::Direct));
  }
  auto rows =
      lp_sup_bound_check(mu, cfg.get_long_list("j_list"), cfg.get_double("tau"));
  csv.line("j,sup,ratio");
  for (const auto& r : rows)
    csv.line(std::to_string(r.j) + "," + fmt(r.sup) + "," + fmt(r.ratio));
}

void run_nu(const Config& cfg, std::uint64_t seed, Csv& csv) {
  const auto n = static_cast<std::size_t>(cfg.get_long("n"));
  FrostmanMeasure mu = cantor_measure(cfg.get_long("b"), digit_list(cfg),
                                      static_cast<int>(cfg.get_long("level")),
                                      n);
  PolynomialFamily fam = parse_family(cfg.raw("family"));
  SmoothCutoff chi = parse_cutoff(cfg.get_string_or("cutoff", "0.1,1.0"));
  TorusFunction g = parse_function_spec(cfg.raw("g"), n, seed, 0);
  auto rows = nu_pairing(mu, fam, cfg.get_double("N"), chi, g,
                         cfg.get_long("l2"), cfg.get_long_list("M_list"),
                         quad_options(cfg));
  csv.meta("chi_mass", chi.mass());
  csv.line("M,value_re,value_im,est_error");
  for (const auto& r : rows)
    csv.line(std::to_string(r.M) + "," + fmt(r.value) + "," + fmt(r.est_error));
}

void run_progression(const Config& cfg, Csv& csv) {
  IntervalSet E = cfg.raw("set") == "full"
                      ? IntervalSet::full()
                      : IntervalSet::from_cantor(
                            cfg.get_long("b"), digit_list(cfg),
                            static_cast<int>(cfg.get_long("level")));
  PolynomialFamily fam = parse_family(cfg.raw("family"));
  auto witnesses = progression_search(
      E, fam, cfg.get_double("y_min"), cfg.get_double("y_max"),
      cfg.get_double("y_step"), static_cast<int>(cfg.get_long_or("max_depth", 6)));
  csv.meta("witnesses", std::to_string(witnesses.size()));
  csv.line("x_lo,x_hi,y_lo,y_hi,certified");
  for (const auto& w : witnesses)
    csv.line(fmt(w.x_lo) + "," + fmt(w.x_hi) + "," + fmt(w.y_lo) + "," +
             fmt(w.y_hi) + "," + (w.certified ? "1" : "0"));
}

void run_ergodic(const Config& cfg, std::uint64_t seed, Csv& csv) {
  PolynomialFamily fam = parse_family(cfg.raw("family"));
  const auto n = static_cast<std::size_t>(cfg.get_long("n"));
  Slots slots = load_slots(cfg, n, seed, 1, fam.k());
  auto xs = unit_grid(static_cast<std::size_t>(cfg.get_long("x_count")));
  ErgodicResult r = ergodic_average(fam, cfg.get_double("N"), slots.ptrs, xs,
                                    quad_options(cfg));
  csv.meta("nodes", std::to_string(r.node_count));
  csv.line("x,value_re,value_im,est_error");
  for (std::size_t j = 0; j < xs.size(); ++j)
    csv.line(fmt(xs[j]) + "," + fmt(r.values[j]) + "," + fmt(r.est[j]));
}

void run_deviation(const Config& cfg, std::uint64_t seed, Csv& csv) {
  PolynomialFamily fam = parse_family(cfg.raw("family"));
  const auto n = static_cast<std::size_t>(cfg.get_long("n"));
  Slots slots = load_slots(cfg, n, seed, 1, fam.k());
  auto xs = unit_grid(static_cast<std::size_t>(cfg.get_long("x_count")));
  DeviationTable table =
      lacunary_sweep(fam, slots.ptrs, cfg.get_double("tau"),
                     cfg.get_long("l_lo"), cfg.get_long("l_hi"), xs,
                     quad_options(cfg));
  DeviationSet dset =
      deviation_set(table, cfg.get_double("delta"), cfg.get_long("l0"));
  csv.meta("partial", table.partial ? "1" : "0");
  csv.meta("limit_re", table.limit.real());
  csv.meta("limit_im", table.limit.imag());
  csv.meta("deviation_points", std::to_string(dset.points.size()));
  csv.meta("empirical_measure", dset.empirical_measure);
  csv.meta("boxdim", dset.boxdim);
  csv.line("l,N,max_dev,max_est");
  for (std::size_t row = 0; row < table.N_list.size(); ++row) {
    double dev = 0.0, est = 0.0;
    for (std::size_t col = 0; col < table.x_grid.size(); ++col) {
      dev = std::max(dev, table.dev[row][col]);
      est = std::max(est, table.est[row][col]);
    }
    csv.line(std::to_string(table.l_list[row]) + "," + fmt(table.N_list[row]) +
             "," + fmt(dev) + "," + fmt(est));
  }
}

}  // namespace

RunOutcome run_experiment(const Config& cfg) {
  RunOutcome out;
  try {
    validate_config(cfg);
    const std::string experiment = cfg.get_string("experiment");
    const auto seed = static_cast<std::uint64_t>(cfg.get_long_or("seed", 1));
    Csv csv(cfg, seed);
    if (experiment == "norms") {
      run_norms(cfg, seed, csv);
    } else if (experiment == "counting") {
      run_counting(cfg, seed, csv);
    } else if (experiment == "decay") {
      run_decay(cfg, seed, csv);
    } else if (experiment == "vdc") {
      run_vdc(cfg, csv);
    } else if (experiment == "fractal") {
      run_fractal(cfg, csv);
    } else if (experiment == "nu") {
      run_nu(cfg, seed, csv);
    } else if (experiment == "progression") {
      run_progression(cfg, csv);
    } else if (experiment == "ergodic") {
      run_ergodic(cfg, seed, csv);
    } else if (experiment == "deviation") {
      run_deviation(cfg, seed, csv);
    }
    out.csv = csv.str();
    out.message = "ok: experiment '" + experiment + "' completed";
  } catch (const BudgetError& e) {
    out.exit_code = 2;
    out.message = std::string("budget abort: ") + e.what();
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.message = std::string("invalid config: ") + e.what();
  }
  return out;
}

}  // namespace torus_lab::cli
