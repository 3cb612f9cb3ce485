// vexp: command-line front end. Every subcommand writes CSV headed by a
// comment line echoing its configuration.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vexp/vexp.hpp"

namespace {

using namespace vexp;

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitResource = 3;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open input file '" + path + "'");
  return in;
}

SampledFunction load_function(const std::string& path, std::size_t grid) {
  auto in = open_input(path);
  SampledFunction f = read_sampled_csv(in);
  return grid > 0 ? as_torus_grid(f, grid) : f;
}

ExponentFunction load_exponent(const std::string& path) {
  auto in = open_input(path);
  return read_exponent_csv(in, path);
}

// Moves an exponent read from CSV onto the cells of f; both files must
// describe the same cell measures in the same order.
ExponentFunction rehome(const ExponentFunction& p, const SampledFunction& f) {
  if (p.size() != f.size()) throw InvalidArgument("function and exponent have different cell counts");
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = f.log_measure(i);
    const double b = p.domain().log_measure(i);
    if (!(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)))) {
      throw InvalidArgument("function and exponent live on different cells (cell " + std::to_string(i) + ")");
    }
  }
  return {f.domain_ptr(), std::vector<double>(p.values().begin(), p.values().end()), p.name()};
}

// Builds the config echo from every option of a subcommand, defaults included.
ExperimentConfig config_of(const CLI::App& sub, std::uint64_t seed = 0) {
  ExperimentConfig cfg;
  cfg.command = sub.get_name();
  cfg.seed = seed;
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "output") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ";") + r;
      if (opt->get_type_size() == 0 && value.empty()) value = "true";
    } else {
      value = opt->get_default_str();
      if (value.empty() || value == "{}" || value == "[]") continue;
    }
    cfg.set(name, value);
  }
  return cfg;
}

// Output sink: --output path or stdout.
struct Sink {
  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &std::cout;

  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file = std::make_unique<std::ofstream>(path);
      if (!*file) throw InvalidArgument("cannot open output file '" + path + "'");
      os = file.get();
    }
  }
  std::ostream& operator*() { return *os; }
};

std::vector<double> lambda_grid(double hi, double lo, int per_decade) { return geometric_lambda_grid(hi, lo, per_decade); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-exponent Lebesgue space toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  std::string output;
  auto add_output = [&output](CLI::App* sub) { sub->add_option("-o,--output", output, "Write CSV here instead of stdout"); };

  // lambertw
  auto* lw = app.add_subcommand("lambertw", "Real branches of the Lambert W function");
  std::string lw_branch = "p";
  std::vector<double> lw_x;
  int lw_terms = 0;
  lw->add_option("--branch", lw_branch, "p (principal) or m (secondary)")->check(CLI::IsMember({"p", "m"}));
  lw->add_option("--x", lw_x, "Argument(s)")->required();
  lw->add_option("--terms", lw_terms, "Also print the asymptotic expansion with this many terms (1-5)")
      ->check(CLI::Range(0, 5));
  add_output(lw);

  // exponent
  auto* ex = app.add_subcommand("exponent", "Construct an exponent and write it as CSV");
  std::string ex_family = "embed";
  double ex_alpha = 1.0;
  std::optional<double> ex_x0;
  double ex_a = 1.0, ex_b = 0.0, ex_r0 = 0.05, ex_eps = 0.5, ex_lambda_max = 0.3, ex_xmin = 1e-60, ex_lmax = 1e7;
  std::size_t ex_cpd = 4000, ex_grid = 0;
  int ex_dim = 1;
  std::string ex_target = "nonembed";
  std::vector<double> ex_points;
  std::vector<std::string> ex_segments;
  bool ex_dual = false, ex_rearrange = false;
  ex->add_option("--family", ex_family, "lambda, nonembed, embed, levelset or compact")
      ->check(CLI::IsMember({"lambda", "nonembed", "embed", "levelset", "compact"}));
  ex->add_option("--alpha", ex_alpha, "alpha > 0");
  ex->add_option("--x0", ex_x0, "Right end of the interval (0, x0]");
  ex->add_option("--a", ex_a, "Lambda family: a > 0");
  ex->add_option("--b", ex_b, "Lambda family: b");
  ex->add_option("--r0", ex_r0, "Lambda family: plateau radius in (0, e^-e)");
  ex->add_option("--target", ex_target, "levelset: nonembed, example1 or example3")
      ->check(CLI::IsMember({"nonembed", "example1", "example3"}));
  ex->add_option("--eps", ex_eps, "levelset: epsilon of the example targets");
  ex->add_option("--lambda-max", ex_lambda_max, "levelset: largest lambda of the target");
  ex->add_option("--cells-per-decade", ex_cpd, "Cells per decade of the grid");
  ex->add_option("--lmax", ex_lmax, "Depth of the log-log grid, ln(1/x_min)");
  ex->add_option("--x-min", ex_xmin, "lambda/compact (1-D): smallest geometric edge");
  ex->add_option("--grid", ex_grid, "compact: uniform side length (0 = geometric 1-D grid)");
  ex->add_option("--dim", ex_dim, "compact: dimension 1 or 2")->check(CLI::IsMember({1, 2}));
  ex->add_option("--points", ex_points, "compact: point coordinates x (1-D) or x,y pairs (2-D)")->delimiter(',');
  ex->add_option("--segments", ex_segments, "compact: segments x0:y0:x1:y1 (1-D: x0:x1)");
  ex->add_flag("--dual", ex_dual, "Write the dual exponent p/(p-1)");
  ex->add_flag("--rearrange", ex_rearrange, "Write the decreasing rearrangement");
  add_output(ex);

  // norm
  auto* nm = app.add_subcommand("norm", "Luxemburg and Orlicz norms");
  std::string nm_space = "vlp", nm_input, nm_exponent;
  double nm_alpha = 1.0, nm_tol = 1e-8;
  std::size_t nm_grid = 0;
  nm->add_option("--space", nm_space, "vlp, llogl, expl, or expl-rearrangement")
      ->check(CLI::IsMember({"vlp", "llogl", "expl", "expl-rearrangement"}));
  nm->add_option("--alpha", nm_alpha, "alpha > 0 for the Zygmund spaces");
  nm->add_option("--input", nm_input, "Function CSV (cell_index,measure,value)")->required();
  nm->add_option("--exponent", nm_exponent, "Exponent CSV (x,p), required for vlp");
  nm->add_option("--grid", nm_grid, "Interpret the input as a side x side grid of (0,1)^2");
  nm->add_option("--tol", nm_tol, "Relative tolerance");
  add_output(nm);

  // embed-check
  auto* ec = app.add_subcommand("embed-check", "Level-set embedding conditions");
  std::string ec_condition = "a", ec_exponent, ec_theta = "log";
  double ec_alpha = 1.0, ec_eps = 0.5, ec_lmax = 0.1, ec_lmin = 1e-3;
  int ec_ppd = 10;
  ec->add_option("--condition", ec_condition, "a, b or exp")->check(CLI::IsMember({"a", "b", "exp"}));
  ec->add_option("--alpha", ec_alpha, "alpha > 0");
  ec->add_option("--exponent", ec_exponent, "Exponent CSV (x,p)")->required();
  ec->add_option("--theta", ec_theta, "b: theta(x) = (ln x)^(alpha-eps) [log] or x^(alpha-eps) [power]")
      ->check(CLI::IsMember({"log", "power"}));
  ec->add_option("--eps", ec_eps, "b: epsilon in theta");
  ec->add_option("--lambda-max", ec_lmax, "Largest lambda of the grid (exp: grid is 1 + 1/lambda)");
  ec->add_option("--lambda-min", ec_lmin, "Smallest lambda of the grid");
  ec->add_option("--per-decade", ec_ppd, "Grid points per decade");
  add_output(ec);

  // witness
  auto* wt = app.add_subcommand("witness", "Truncated witness integrals");
  std::string wt_exponent;
  double wt_alpha = 1.0, wt_c = 10.0;
  std::vector<double> wt_truncations = default_truncations();
  std::vector<double> wt_log_truncations;
  wt->add_option("--alpha", wt_alpha, "alpha > 0");
  wt->add_option("--c", wt_c, "c > 0");
  wt->add_option("--exponent", wt_exponent, "Exponent CSV (x,p) of q")->required();
  wt->add_option("--truncations", wt_truncations, "Truncation points t, decreasing")->delimiter(',');
  wt->add_option("--log-truncations", wt_log_truncations, "Truncations given as ln t, decreasing")->delimiter(',');
  add_output(wt);

  // maximal
  auto* mx = app.add_subcommand("maximal", "Maximal operators");
  std::string mx_op = "hl", mx_input, mx_exponent;
  std::size_t mx_grid = 0, mx_cap = kStrongMaximalCap;
  std::vector<std::size_t> mx_cell;
  std::vector<double> mx_scales;
  mx->add_option("--op", mx_op, "hl, strong, wiener or deriv")->check(CLI::IsMember({"hl", "strong", "wiener", "deriv"}));
  mx->add_option("--grid", mx_grid, "Interpret the input as a side x side grid of (0,1)^2");
  mx->add_option("--input", mx_input, "Function CSV (cell_index,measure,value)")->required();
  mx->add_option("--exponent", mx_exponent, "wiener: exponent CSV");
  mx->add_option("--cell", mx_cell, "deriv: grid cell ix,iy")->delimiter(',')->expected(2);
  mx->add_option("--scales", mx_scales, "deriv: decreasing rectangle diameters")->delimiter(',');
  mx->add_option("--cap", mx_cap, "strong: largest accepted grid side");
  add_output(mx);

  // selftest
  auto* st = app.add_subcommand("selftest", "Seeded property suite");
  std::uint64_t st_seed = 1;
  int st_trials = 25;
  st->add_option("--seed", st_seed, "Random seed");
  st->add_option("--trials", st_trials, "Trials per property")->check(CLI::Range(1, 100000));
  add_output(st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitPrecondition;
  }

  try {
    if (lw->parsed()) {
      Sink out(output);
      *out << config_of(*lw).echo() << '\n';
      *out << "x,branch,w,residual" << (lw_terms > 0 ? ",asymptotic" : "") << '\n';
      for (double x : lw_x) {
        const auto r = lambert_w(lw_branch == "p" ? Branch::principal : Branch::secondary, x);
        *out << csv::format_double(x) << ',' << lw_branch << ',' << csv::format_double(r.w) << ','
             << csv::format_double(r.residual);
        if (lw_terms > 0) {
          // Empty field where the expansion is undefined.
          std::string a;
          try {
            a = csv::format_double(lw_branch == "p" ? w_principal_asymptotic(x, lw_terms)
                                                    : w_secondary_asymptotic(x, lw_terms));
          } catch (const DomainError&) {
          }
          *out << ',' << a;
        }
        *out << '\n';
      }
    } else if (ex->parsed()) {
      std::optional<ExponentFunction> p;
      const LogLogGrid grid{ex_cpd, ex_lmax};
      if (ex_family == "nonembed") {
        p = nonembedding_example_exponent(ex_alpha, ex_x0, grid);
      } else if (ex_family == "embed") {
        p = embedding_example_exponent(ex_alpha, ex_x0, grid);
      } else if (ex_family == "levelset") {
        LevelSetTarget t = ex_target == "nonembed"   ? nonembedding_target(ex_alpha, ex_lambda_max)
                           : ex_target == "example1" ? example_one_target(ex_alpha, ex_eps, ex_lambda_max)
                                                     : example_three_target(ex_alpha, ex_eps, ex_lambda_max);
        p = levelset_prescribed_exponent(t, ex_x0, grid);
      } else if (ex_family == "lambda") {
        auto d = Domain::geometric(ex_x0.value_or(1.0), ex_xmin, ex_cpd);
        const double a = ex_a, b = ex_b, r0 = ex_r0;
        p = ExponentFunction::from_log_function(
            d, [=](double log_x) { return lambda_exponent_log(log_x, a, b, r0); }, "lambda");
      } else {
        CompactSet k;
        if (ex_dim == 1) {
          for (double x : ex_points) k.points.push_back({x, 0.0});
        } else {
          if (ex_points.size() % 2 != 0) throw InvalidArgument("--points needs x,y pairs in two dimensions");
          for (std::size_t i = 0; i < ex_points.size(); i += 2) k.points.push_back({ex_points[i], ex_points[i + 1]});
        }
        for (const auto& s : ex_segments) {
          std::vector<double> v;
          std::stringstream ss(s);
          std::string item;
          while (std::getline(ss, item, ':')) v.push_back(std::stod(item));
          if (ex_dim == 1 && v.size() == 2) {
            k.segments.push_back({{v[0], 0.0}, {v[1], 0.0}});
          } else if (ex_dim == 2 && v.size() == 4) {
            k.segments.push_back({{v[0], v[1]}, {v[2], v[3]}});
          } else {
            throw InvalidArgument("--segments: expected x0:x1 (1-D) or x0:y0:x1:y1 (2-D), got '" + s + "'");
          }
        }
        DomainPtr d;
        if (ex_dim == 2) {
          if (ex_grid == 0) throw InvalidArgument("--grid is required for two-dimensional compact sets");
          d = Domain::torus(ex_grid, 2);
        } else {
          d = ex_grid > 0 ? Domain::torus(ex_grid, 1) : Domain::geometric(1.0, ex_xmin, ex_cpd);
        }
        p = exponent_from_compact_set(k, ex_a, ex_b, ex_r0, d);
      }
      if (ex_dual) p = dual_exponent(*p);
      if (ex_rearrange) p = rearranged_exponent(*p);
      Sink out(output);
      *out << config_of(*ex).echo() << '\n';
      write_exponent_csv(*out, *p);
    } else if (nm->parsed()) {
      const SampledFunction f = load_function(nm_input, nm_grid);
      NormResult r;
      if (nm_space == "vlp") {
        if (nm_exponent.empty()) throw InvalidArgument("--exponent is required for --space vlp");
        const ExponentFunction p = rehome(load_exponent(nm_exponent), f);
        r = luxemburg_norm(f, p, nm_tol);
      } else if (nm_space == "llogl") {
        r = orlicz_norm(f, YoungFunction::llogl(nm_alpha), nm_tol);
      } else if (nm_space == "expl") {
        r = orlicz_norm(f, YoungFunction::expl(nm_alpha), nm_tol);
      } else {
        r.value = exp_zygmund_norm(f, nm_alpha);
      }
      Sink out(output);
      *out << config_of(*nm).echo() << '\n';
      *out << "space,value,modular_at_value,iterations,bracket_lo,bracket_hi\n";
      *out << nm_space << ',' << csv::format_double(r.value) << ',' << csv::format_double(r.modular_at_value) << ','
           << r.iterations << ',' << csv::format_double(r.bracket_lo) << ',' << csv::format_double(r.bracket_hi)
           << '\n';
    } else if (ec->parsed()) {
      const ExponentFunction p = load_exponent(ec_exponent);
      const auto grid = lambda_grid(ec_lmax, ec_lmin, ec_ppd);
      Sink out(output);
      *out << config_of(*ec).echo() << '\n';
      if (ec_condition == "b") {
        const ThetaSpec theta = ec_theta == "log" ? theta_log_power(ec_alpha - ec_eps) : theta_power(ec_alpha - ec_eps);
        const auto est = check_condition_b(p, ec_alpha, theta, grid);
        *out << "lambda,lambda_used,log_E\n";
        for (const auto& r : est.rows) {
          *out << csv::format_double(r.lambda) << ',' << csv::format_double(r.lambda_used) << ','
               << csv::format_double(r.log_e) << '\n';
        }
        *out << "# verdict: " << (est.positive && est.stable ? "positive" : "not-certified")
             << " estimate=" << csv::format_double(est.estimate())
             << " refined=" << csv::format_double(est.refined_estimate()) << " stable=" << (est.stable ? "yes" : "no")
             << " note=\"" << est.note << "\"\n";
      } else {
        const auto rep = ec_condition == "a" ? check_condition_a(p, ec_alpha, grid)
                                             : check_exp_embedding_condition(p, ec_alpha, dual_lambda_grid(grid));
        *out << (ec_condition == "a" ? "lambda" : "Lambda") << ",level_used,log_measure,log_C\n";
        for (const auto& r : rep.rows) {
          *out << csv::format_double(r.lambda) << ',' << csv::format_double(r.lambda_used) << ','
               << csv::format_double(r.log_measure) << ',' << csv::format_double(r.log_c) << '\n';
        }
        *out << "# verdict: " << to_string(rep.verdict) << " sup_C=" << csv::format_double(rep.needed_constant)
             << " refined_sup_C=" << csv::format_double(rep.refined_needed_constant)
             << " drift=" << csv::format_double(rep.drift);
        if (!rep.note.empty()) *out << " note=\"" << rep.note << '"';
        *out << '\n';
      }
    } else if (wt->parsed()) {
      const ExponentFunction q = load_exponent(wt_exponent);
      const WitnessTrace tr = wt_log_truncations.empty() ? divergence_witness(q, wt_alpha, wt_c, wt_truncations)
                                                         : divergence_witness_log(q, wt_alpha, wt_c, wt_log_truncations);
      Sink out(output);
      *out << config_of(*wt).echo() << '\n';
      *out << "t,log_I,I\n";
      for (std::size_t i = 0; i < tr.truncations.size(); ++i) {
        const double log_t = wt_log_truncations.empty() ? std::log(tr.truncations[i]) : wt_log_truncations[i];
        *out << csv::format_log_scalar(log_t) << ',' << csv::format_double(tr.log_values[i]) << ','
             << csv::format_double(tr.value(i)) << '\n';
      }
      *out << "# verdict: " << (tr.growth_flag ? "growth" : "bounded")
           << " ratio=" << csv::format_double(tr.growth_ratio);
      if (!tr.note.empty()) *out << " note=\"" << tr.note << '"';
      *out << '\n';
    } else if (mx->parsed()) {
      const SampledFunction f = load_function(mx_input, mx_grid);
      Sink out(output);
      *out << config_of(*mx).echo() << '\n';
      if (mx_op == "hl") {
        write_sampled_csv(*out, hl_maximal(f));
      } else if (mx_op == "strong") {
        write_sampled_csv(*out, strong_maximal(f, default_thread_count(), mx_cap));
      } else if (mx_op == "wiener") {
        if (mx_exponent.empty()) throw InvalidArgument("--exponent is required for --op wiener");
        const ExponentFunction p = rehome(load_exponent(mx_exponent), f);
        *out << "ratio\n" << csv::format_double(wiener_ratio(f, p)) << '\n';
      } else {
        if (mx_cell.size() != 2) throw InvalidArgument("--cell ix,iy is required for --op deriv");
        if (mx_scales.empty()) throw InvalidArgument("--scales is required for --op deriv");
        const auto est = upper_derivative_estimate(f, mx_cell[0], mx_cell[1], mx_scales);
        *out << "scale,estimate\n";
        for (std::size_t i = 0; i < est.size(); ++i) {
          *out << csv::format_double(mx_scales[i]) << ',' << csv::format_double(est[i]) << '\n';
        }
      }
    } else if (st->parsed()) {
      const auto results = run_property_suite(st_seed, st_trials);
      Sink out(output);
      *out << config_of(*st, st_seed).echo() << '\n';
      write_property_csv(*out, results);
      int failed = 0;
      for (const auto& r : results) failed += r.trials - r.passed;
      *out << "# verdict: " << (failed == 0 ? "pass" : "fail") << " failed=" << failed << '\n';
      return failed == 0 ? kExitOk : 1;
    }
  } catch (const ResourceError& e) {
    std::cerr << "vexp: resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const PreconditionViolation& e) {
    std::cerr << "vexp: precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const DomainError& e) {
    std::cerr << "vexp: domain error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const InvalidArgument& e) {
    std::cerr << "vexp: invalid argument: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "vexp: malformed number: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::out_of_range& e) {
    std::cerr << "vexp: number out of range: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "vexp: error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
