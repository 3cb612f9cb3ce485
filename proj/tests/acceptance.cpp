// Acceptance gate: one PASS/FAIL line per criterion. `--only N` runs a
// single criterion; the exit status is nonzero when any selected one fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vexp/vexp.hpp"

using namespace vexp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void info(const std::string& s) { std::printf("      info: %s\n", s.c_str()); }

double rel(double a, double b) { return std::abs(a / b - 1.0); }

Outcome lambert_identity() {
  const double inv_e = 1.0 / std::numbers::e;
  const std::vector<double> xs = {-inv_e + 1e-9, -0.2, -0.01, 0.0, 1.0, std::numbers::e, 1e3, 1e6};
  double worst = 0.0;
  for (double x : xs) {
    const double tol = 1e-10 * std::max(1.0, std::abs(x));
    const double w = w_principal(x);
    worst = std::max(worst, std::abs(w * std::exp(w) - x) / tol);
    if (x < 0.0) {
      const double m = w_secondary(x);
      worst = std::max(worst, std::abs(m * std::exp(m) - x) / tol);
    }
  }
  const bool exact = w_principal(-inv_e) == -1.0 && w_secondary(-inv_e) == -1.0;
  return {worst <= 1.0 && exact, "worst residual/tol=" + fmt("%.3g", worst) + (exact ? " W(-1/e)=-1" : " W(-1/e)!=-1")};
}

Outcome lambert_asymptotics() {
  const double xi = std::log(1e6);
  const double ep = std::abs(w_principal_asymptotic(1e6) - w_principal(1e6));
  const double bp = 3.0 * std::pow(std::log(xi) / xi, 3);
  const double mu = std::log(1e6);  // -ln(1e-6)
  const double em = std::abs(w_secondary_asymptotic(-1e-6) - w_secondary(-1e-6));
  const double bm = 3.0 * std::pow(std::log(mu) / mu, 3);
  return {ep <= bp && em <= bm, "principal err=" + fmt("%.3g", ep) + " bound=" + fmt("%.3g", bp) +
                                    "; secondary err=" + fmt("%.3g", em) + " bound=" + fmt("%.3g", bm)};
}

Outcome constant_norm_oracle() {
  auto d = Domain::uniform(1.0, 100000);
  const auto f = SampledFunction::sample(d, [](double x) { return x; });
  const double v = luxemburg_norm(f, ExponentFunction::constant(d, 2.0)).value;
  const double err = std::abs(v - 1.0 / std::sqrt(3.0));
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(u(rng) * 500);
    std::vector<double> lm(n), fv(n), pv(n);
    for (std::size_t i = 0; i < n; ++i) {
      lm[i] = std::log((0.05 + u(rng)) / static_cast<double>(n));
      fv[i] = std::exp(8.0 * u(rng) - 4.0) * (u(rng) < 0.5 ? -1.0 : 1.0);
      pv[i] = 1.0 + 9.0 * u(rng) * u(rng);
    }
    auto dom = Domain::from_log_measures(lm);
    const SampledFunction g(dom, fv);
    const ExponentFunction p(dom, pv, "random");
    worst = std::max(worst, std::abs(modular(g, p, luxemburg_norm(g, p).value) - 1.0));
  }
  return {err <= 1e-3 && worst <= 1e-6,
          "norm=" + fmt("%.9f", v) + " err=" + fmt("%.2g", err) + " worst |rho-1|=" + fmt("%.2g", worst)};
}

Outcome rearrangement_suite() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool equi = true;
  double worst_int = 0.0;
  double worst_bound = 0.0;  // max lhs/rhs
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(u(rng) * 300);
    std::vector<double> lm(n), fv(n), pv(n);
    for (std::size_t i = 0; i < n; ++i) {
      lm[i] = std::log((0.05 + u(rng)) / static_cast<double>(n));
      fv[i] = u(rng) < 0.25 ? 2.0 : 6.0 * u(rng) - 3.0;
      pv[i] = 1.0 + 5.0 * u(rng);
    }
    auto dom = Domain::from_log_measures(lm);
    const SampledFunction f(dom, fv);
    const auto fs = decreasing_rearrangement(f);
    equi = equi && equimeasurable(f, fs, 0.0);
    const double a = integrate(f.abs());
    worst_int = std::max(worst_int, std::abs(integrate(fs) - a) / a);
    const auto b = rearrangement_norm_bound_check(f, ExponentFunction(dom, pv, "random"));
    worst_bound = std::max(worst_bound, b.lhs / b.rhs);
  }
  return {equi && worst_int <= 1e-12 && worst_bound <= 1.0,
          std::string(equi ? "equimeasurable" : "NOT equimeasurable") + " integral rel=" + fmt("%.2g", worst_int) +
              " max lhs/rhs=" + fmt("%.4f", worst_bound)};
}

Outcome level_set_laws() {
  const auto ne = nonembedding_example_exponent(1.0, 0.25);
  double w_ne = 0.0;
  for (double l : {0.1, 0.2, 0.3, 0.5}) {
    w_ne = std::max(w_ne, std::abs(std::expm1(ne.log_level_measure(l) - nonembedding_log_level_measure(1.0, l))));
  }
  const auto em = embedding_example_exponent(1.0);
  double w_em = 0.0;
  for (double l : {0.1, 0.2, 0.3}) {
    w_em = std::max(w_em, std::abs(std::expm1(em.log_level_measure(l) - embedding_log_level_measure(1.0, l))));
  }
  return {w_ne <= 0.02 && w_em <= 0.02,
          "nonembedding worst rel=" + fmt("%.3g", w_ne) + " embedding worst rel=" + fmt("%.3g", w_em)};
}

Outcome condition_discrimination() {
  const auto grid = default_small_lambda_grid();
  const auto em = embedding_example_exponent(1.0);
  const auto ne = nonembedding_example_exponent(1.0, 0.25);
  const auto ra = check_condition_a(em, 1.0, grid);
  const auto rb = check_condition_a(ne, 1.0, grid);
  double worst = 0.0;
  for (const auto& r : rb.rows) worst = std::max(worst, rel(r.log_c, std::log(std::log(1.0 / r.lambda))));
  const auto dg = dual_lambda_grid(grid);
  const auto xa = check_exp_embedding_condition(dual_exponent(em), 1.0, dg);
  const auto xb = check_exp_embedding_condition(dual_exponent(ne), 1.0, dg);
  const bool ok = ra.verdict == Verdict::satisfied && ra.drift <= 0.05 && rb.verdict == Verdict::violated &&
                  worst <= 0.05 && xa.verdict == ra.verdict && xb.verdict == rb.verdict;
  return {ok, std::string("embed ") + to_string(ra.verdict) + " drift=" + fmt("%.3g", ra.drift) + "; nonembed " +
                  to_string(rb.verdict) + " worst rel vs lnln=" + fmt("%.3g", worst) + "; dual " +
                  to_string(xa.verdict) + "/" + to_string(xb.verdict)};
}

Outcome witness_divergence() {
  const auto ne = nonembedding_example_exponent(1.0, 0.25);
  const auto em = embedding_example_exponent(1.0);
  const auto tr = divergence_witness(dual_exponent(ne), 1.0, 10.0, default_truncations());
  bool increasing = true;
  for (std::size_t i = 1; i < tr.log_values.size(); ++i) increasing = increasing && tr.log_values[i] > tr.log_values[i - 1];
  const double ratio = tr.value(tr.log_values.size() - 1) / tr.value(0);
  for (std::size_t i = 0; i < tr.truncations.size(); ++i) {
    info("nonembed dual t=" + fmt("%.0e", tr.truncations[i]) + " I=" + fmt("%.6g", tr.value(i)));
  }
  // Same trace far below the required truncations.
  const std::vector<double> deep = {-1e4, -1e5, -1e6};
  const auto td = divergence_witness_log(dual_exponent(ne), 1.0, 10.0, deep);
  for (std::size_t i = 0; i < deep.size(); ++i) {
    info("nonembed dual ln t=" + fmt("%.0e", deep[i]) + " ln I=" + fmt("%.6g", td.log_values[i]));
  }
  const auto ce = embedding_constant_estimate(em, 1.0);
  const auto tb = divergence_witness(dual_exponent(em), 1.0, 10.0 * ce.max_ratio, default_truncations());
  info("embed constant estimate=" + fmt("%.4g", ce.max_ratio) + " (" + ce.argmax + ")");
  const bool part_a = increasing && ratio >= 1e3 && tr.growth_flag;
  const bool part_b = !tb.growth_flag;
  return {part_a && part_b, std::string("nonembed increasing=") + (increasing ? "yes" : "no") +
                                " I(1e-12)/I(1e-2)=" + fmt("%.3g", ratio) + " flag=" + (tr.growth_flag ? "set" : "unset") +
                                "; embed flag=" + (tb.growth_flag ? "set" : "unset")};
}

Outcome condition_b_liminf() {
  const auto grid = default_small_lambda_grid();
  const auto e1 = levelset_prescribed_exponent(example_one_target(1.0, 0.5));
  const auto b1 = check_condition_b(e1, 1.0, theta_log_power(0.5), grid);
  const auto e3 = levelset_prescribed_exponent(example_three_target(1.0, 0.5));
  const auto b3 = check_condition_b(e3, 1.0, theta_power(0.5), grid);
  const bool ok = b1.positive && b1.stable && b3.positive && b3.stable;
  return {ok, "example1 est=" + fmt("%.6g", b1.estimate()) + " refined=" + fmt("%.6g", b1.refined_estimate()) +
                  "; example3 est=" + fmt("%.6g", b3.estimate()) + " refined=" + fmt("%.6g", b3.refined_estimate())};
}

Outcome maximal_oracles() {
  auto d = Domain::uniform(1.0, 100000);
  double w1 = 0.0;
  for (double h : {1e-1, 1e-2, 1e-3}) {
    const auto g = SampledFunction::sample(d, [h](double x) { return x < h ? 1.0 : 0.0; });
    w1 = std::max(w1, rel(integrate(hl_maximal(g)), h * (1.0 + std::log(1.0 / h))));
  }
  auto t = Domain::torus(256, 2);
  double w2 = 0.0;
  for (double h : {1.0 / 8.0, 1.0 / 16.0}) {
    const auto g = SampledFunction::sample(t, [h](double x, double y) { return x < h && y < h ? 1.0 : 0.0; });
    const double l = 1.0 + std::log(1.0 / h);
    w2 = std::max(w2, rel(integrate(strong_maximal(g)), h * h * l * l));
  }
  return {w1 <= 0.10 && w2 <= 0.15, "1-D worst rel=" + fmt("%.3g", w1) + " 2-D worst rel=" + fmt("%.3g", w2)};
}

Outcome wiener_trend() {
  auto d = Domain::geometric(1.0, 1e-60, 100);
  CompactSet k;
  k.points.push_back({0.0, 0.0});
  const auto p = exponent_from_compact_set(k, 1.0, 0.0, 0.05, d);
  double lo = kInf, hi = 0.0;
  std::string trace;
  for (double cap = 2.0; cap <= 64.0; cap *= 2.0) {
    const auto g = SampledFunction::sample_log(d, [cap](double lx) { return std::min(1.0 - lx, cap); });
    const double r = wiener_ratio(g, p);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    trace += fmt(" %.3g", r);
  }
  return {hi / lo < 2.0, "ratios" + trace + " max/min=" + fmt("%.3g", hi / lo)};
}

Outcome selftest_determinism() {
  std::ostringstream a, b;
  write_property_csv(a, run_property_suite(12345, 10));
  write_property_csv(b, run_property_suite(12345, 10));
  return {a.str() == b.str() && !a.str().empty(), a.str() == b.str() ? "identical bytes" : "outputs differ"};
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> criteria = {
      {1, "Lambert W identity", 1.0, lambert_identity},
      {2, "Lambert W asymptotic agreement", 1.0, lambert_asymptotics},
      {3, "constant-exponent norm oracle", 10.0, constant_norm_oracle},
      {4, "rearrangement suite", 30.0, rearrangement_suite},
      {5, "level-set law reproduction", 10.0, level_set_laws},
      {6, "condition checker discrimination", 30.0, condition_discrimination},
      {7, "witness divergence", 60.0, witness_divergence},
      {8, "liminf condition", 30.0, condition_b_liminf},
      {9, "maximal operator oracles", 60.0, maximal_oracles},
      {10, "Wiener ratio trend", 60.0, wiener_trend},
      {11, "selftest determinism", 60.0, selftest_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.time_limit;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("AC%-2d %s  %s: %s [%.2fs / %.0fs%s]\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(),
                o.detail.c_str(), secs, c.time_limit, in_time ? "" : " exceeded");
  }
  return failed == 0 ? 0 : 1;
}
