#pragma once

// Level-set conditions for L^{p(.)} ⊂ L(log L)^α and L^{p(.)} ⊂ exp(L^α),
// evaluated on λ-grids in log space, plus integral witnesses.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vexp/errors.hpp"
#include "vexp/exponent.hpp"
#include "vexp/grid_function.hpp"
#include "vexp/norms.hpp"
#include "vexp/numeric.hpp"

namespace vexp {

enum class Verdict { satisfied, violated, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct ConditionRow {
  double lambda = 0.0;       // grid value
  double lambda_used = 0.0;  // attained level the constant is evaluated at
  double log_measure = kNegInf;
  double log_c = kNegInf;    // -inf: level set empty, condition vacuous
};

struct EmbeddingReport {
  std::string condition;
  double alpha = 0.0;
  std::vector<ConditionRow> rows;
  std::vector<ConditionRow> refined_rows;
  double sup_log_c = kNegInf;
  double refined_sup_log_c = kNegInf;
  double needed_constant = 1.0;  // max(1, sup C)
  double refined_needed_constant = 1.0;
  double drift = 0.0;            // relative change of the needed constant under refinement
  std::vector<double> trend;     // ln C at decade marks, shallow to deep
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

namespace detail {

inline constexpr double kStableDrift = 0.05;

inline double infer_per_decade(std::span<const double> grid) {
  const double lo = *std::min_element(grid.begin(), grid.end());
  const double hi = *std::max_element(grid.begin(), grid.end());
  const double decades = std::log10(hi / lo);
  if (!(decades > 0.0)) return 1.0;
  return std::max(1.0, std::round(static_cast<double>(grid.size() - 1) / decades));
}

template <class Row>
EmbeddingReport assemble_report(std::string condition, double alpha, std::span<const double> grid,
                                std::span<const double> refined, std::span<const double> marks, const Row& row) {
  EmbeddingReport rep;
  rep.condition = std::move(condition);
  rep.alpha = alpha;
  for (double g : grid) rep.rows.push_back(row(g));
  for (double g : refined) rep.refined_rows.push_back(row(g));
  for (const auto& r : rep.rows) rep.sup_log_c = std::max(rep.sup_log_c, r.log_c);
  for (const auto& r : rep.refined_rows) rep.refined_sup_log_c = std::max(rep.refined_sup_log_c, r.log_c);
  const double log_needed = std::max(0.0, rep.sup_log_c);
  const double log_needed_ref = std::max(0.0, rep.refined_sup_log_c);
  rep.needed_constant = std::exp(log_needed);
  rep.refined_needed_constant = std::exp(log_needed_ref);
  rep.drift = std::isfinite(log_needed) && std::isfinite(log_needed_ref)
                  ? std::expm1(std::abs(log_needed_ref - log_needed))
                  : kInf;
  for (double m : marks) rep.trend.push_back(row(m).log_c);
  bool increasing = rep.trend.size() >= 2;
  for (std::size_t k = 1; k < rep.trend.size(); ++k) {
    if (!(rep.trend[k] > rep.trend[k - 1])) increasing = false;
  }
  if (rep.sup_log_c == kInf || rep.refined_sup_log_c == kInf) {
    rep.verdict = Verdict::violated;
  } else if (rep.drift <= kStableDrift) {
    rep.verdict = Verdict::satisfied;
  } else if (increasing) {
    rep.verdict = Verdict::violated;
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

inline void append_note(std::string& note, const std::string& text) {
  if (!note.empty()) note += "; ";
  note += text;
}

}  // namespace detail

/// Refinement used by the checkers: twice the points per decade and twice
/// the log-depth toward λ -> 0 (λ_min -> λ_min^2 / λ_max).
inline std::vector<double> refine_small_grid(std::span<const double> grid) {
  const double lo = *std::min_element(grid.begin(), grid.end());
  const double hi = *std::max_element(grid.begin(), grid.end());
  const int ppd = static_cast<int>(2.0 * detail::infer_per_decade(grid));
  return geometric_lambda_grid(hi, lo * lo / hi, ppd);
}

/// Same refinement for grids growing toward +inf (Λ_max -> Λ_max^2 / Λ_min).
inline std::vector<double> refine_large_grid(std::span<const double> grid) {
  const double lo = *std::min_element(grid.begin(), grid.end());
  const double hi = *std::max_element(grid.begin(), grid.end());
  const int ppd = static_cast<int>(2.0 * detail::infer_per_decade(grid));
  auto g = geometric_lambda_grid(hi * hi / lo, lo, ppd);
  std::reverse(g.begin(), g.end());
  return g;
}

/// Default λ-grid: 0.1 down to 1e-3, ten points per decade.
inline std::vector<double> default_small_lambda_grid() { return geometric_lambda_grid(0.1, 1e-3, 10); }

/// Grid Λ = 1 + 1/λ corresponding to a λ-grid under p -> p'.
inline std::vector<double> dual_lambda_grid(std::span<const double> lambdas) {
  std::vector<double> out;
  out.reserve(lambdas.size());
  for (double l : lambdas) out.push_back(1.0 + 1.0 / l);
  return out;
}

/// ln C(λ) = λ ln m(λ) - α ln λ + α lnln(1/λ) at the largest attained
/// level p - 1 <= λ, where C is largest on the flat piece of m containing λ.
inline ConditionRow condition_a_row(const ExponentFunction& p, double alpha, double lambda) {
  ConditionRow r;
  r.lambda = lambda;
  const auto floor = p.level_sets().floor_value(1.0 + lambda);
  if (!floor) {
    r.lambda_used = lambda;
    return r;
  }
  const double l = *floor - 1.0;
  r.lambda_used = l;
  r.log_measure = p.level_sets().log_at_most(*floor);
  if (!(l > 0.0)) {
    r.log_c = kInf;  // p = 1 on a set of positive measure
    return r;
  }
  r.log_c = l * r.log_measure - alpha * std::log(l) + alpha * std::log(-std::log(l));
  return r;
}

/// Condition m(λ) <= C^{1/λ} λ^{α/λ} ln^{-α/λ}(1/λ) for small λ.
inline EmbeddingReport check_condition_a(const ExponentFunction& p, double alpha,
                                         std::span<const double> lambdas) {
  if (!(alpha > 0.0)) throw InvalidArgument("condition a: alpha must be > 0");
  if (lambdas.size() < 2) throw InvalidArgument("condition a: need at least two grid points");
  for (double l : lambdas) {
    if (!(l > 0.0 && l < 1.0 / std::numbers::e)) throw InvalidArgument("condition a: grid must lie in (0, 1/e)");
  }
  const auto refined = refine_small_grid(lambdas);
  const double lo = *std::min_element(lambdas.begin(), lambdas.end());
  const double hi = *std::max_element(lambdas.begin(), lambdas.end());
  std::vector<double> marks;
  for (int k = 2; k >= 0; --k) {
    const double m = lo * std::pow(10.0, k);
    if (m <= hi * (1.0 + 1e-12)) marks.push_back(m);
  }
  auto rep = detail::assemble_report("a", alpha, lambdas, refined, marks,
                                     [&](double l) { return condition_a_row(p, alpha, l); });
  const double resolution = p.p_minus() - 1.0;
  if (refined.back() < resolution) {
    detail::append_note(rep.note, "grid reaches below the exponent resolution p_minus - 1 = " +
                                      csv::format_double(resolution));
  }
  return rep;
}

inline ConditionRow exp_condition_row(const ExponentFunction& p, double alpha, double big_lambda) {
  ConditionRow r;
  r.lambda = big_lambda;
  const auto ceil = p.level_sets().ceil_value(big_lambda);
  if (!ceil) {
    r.lambda_used = big_lambda;
    return r;
  }
  const double l = *ceil;
  r.lambda_used = l;
  r.log_measure = p.level_sets().log_at_least(l);
  r.log_c = r.log_measure / l + (std::log(l) + std::log(std::log(l))) / alpha;
  return r;
}

/// Condition |{p >= Λ}| <= C^Λ Λ^{-Λ/α} (ln Λ)^{-Λ/α} for large Λ, evaluated at
/// the smallest attained value >= Λ.
inline EmbeddingReport check_exp_embedding_condition(const ExponentFunction& p, double alpha,
                                                     std::span<const double> big_lambdas) {
  if (!(alpha > 0.0)) throw InvalidArgument("exp condition: alpha must be > 0");
  if (big_lambdas.size() < 2) throw InvalidArgument("exp condition: need at least two grid points");
  for (double l : big_lambdas) {
    if (!(l > std::numbers::e) || !std::isfinite(l)) throw InvalidArgument("exp condition: grid must lie in (e, inf)");
  }
  const auto refined = refine_large_grid(big_lambdas);
  const double lo = *std::min_element(big_lambdas.begin(), big_lambdas.end());
  const double hi = *std::max_element(big_lambdas.begin(), big_lambdas.end());
  std::vector<double> marks;
  for (int k = 2; k >= 0; --k) {
    const double m = hi / std::pow(10.0, k);
    if (m >= lo * (1.0 - 1e-12)) marks.push_back(m);
  }
  auto rep = detail::assemble_report("exp", alpha, big_lambdas, refined, marks,
                                     [&](double l) { return exp_condition_row(p, alpha, l); });
  if (refined.back() > p.p_plus()) {
    detail::append_note(rep.note, "grid reaches above p_plus = " + csv::format_double(p.p_plus()));
  }
  return rep;
}

// --- condition (b) ------------------------------------------------------------

struct LiminfRow {
  double lambda = 0.0;
  double lambda_used = 0.0;
  double log_e = kNegInf;  // ln of m θ(1/λ)^{-1/λ} λ^{-α/λ} ln^{α/λ}(1/λ)
};

struct LiminfEstimate {
  std::vector<LiminfRow> rows;
  std::vector<LiminfRow> refined_rows;
  double log_estimate = kNegInf;          // min ln E over the smallest decade
  double refined_log_estimate = kNegInf;
  bool stable = false;    // |refined - original| <= ln 1.05
  bool positive = false;  // estimate finite, hence > 0
  std::string note;

  [[nodiscard]] double estimate() const { return std::exp(log_estimate); }
  [[nodiscard]] double refined_estimate() const { return std::exp(refined_log_estimate); }
};

inline LiminfRow condition_b_row(const ExponentFunction& p, double alpha, const ThetaSpec& theta, double lambda) {
  LiminfRow r;
  r.lambda = lambda;
  const auto floor = p.level_sets().floor_value(1.0 + lambda);
  if (!floor || !(*floor > 1.0)) {
    r.lambda_used = lambda;
    return r;
  }
  const double l = *floor - 1.0;
  r.lambda_used = l;
  const double log_m = p.level_sets().log_at_most(*floor);
  r.log_e = log_m - theta.log_theta(1.0 / l) / l - alpha / l * std::log(l) + alpha / l * std::log(-std::log(l));
  return r;
}

namespace detail {

inline void check_theta(const ThetaSpec& theta, double alpha, std::span<const double> lambdas) {
  std::vector<double> g(lambdas.begin(), lambdas.end());
  std::sort(g.begin(), g.end());
  for (std::size_t k = 1; k < g.size(); ++k) {
    // θ increasing in t = 1/λ.
    const double t_small = theta.log_theta(1.0 / g[k]);
    const double t_large = theta.log_theta(1.0 / g[k - 1]);
    if (std::isnan(t_small) || std::isnan(t_large) || !(t_large > t_small)) {
      throw PreconditionViolation("condition b: theta is not increasing near t = " + csv::format_double(1.0 / g[k]));
    }
    // θ(1/λ) λ^α ln^{-α}(1/λ) increasing in λ.
    auto h = [&](double l) { return theta.log_theta(1.0 / l) + alpha * std::log(l) - alpha * std::log(-std::log(l)); };
    if (!(h(g[k]) > h(g[k - 1]))) {
      throw PreconditionViolation("condition b: theta(1/l) l^alpha ln^-alpha(1/l) is not increasing near l = " +
                                  csv::format_double(g[k]));
    }
  }
}

inline double smallest_decade_min(std::span<const LiminfRow> rows) {
  double lo = kInf;
  for (const auto& r : rows) lo = std::min(lo, r.lambda);
  double best = kInf;
  for (const auto& r : rows) {
    if (r.lambda <= 10.0 * lo * (1.0 + 1e-12)) best = std::min(best, r.log_e);
  }
  return best;
}

}  // namespace detail

/// Estimate of liminf_{λ->0} m(λ) θ(1/λ)^{-1/λ} λ^{-α/λ} ln^{α/λ}(1/λ).
inline LiminfEstimate check_condition_b(const ExponentFunction& p, double alpha, const ThetaSpec& theta,
                                        std::span<const double> lambdas) {
  if (!(alpha > 0.0)) throw InvalidArgument("condition b: alpha must be > 0");
  if (!theta.log_theta) throw InvalidArgument("condition b: empty theta");
  if (lambdas.size() < 2) throw InvalidArgument("condition b: need at least two grid points");
  for (double l : lambdas) {
    if (!(l > 0.0 && l < 1.0 / std::numbers::e)) throw InvalidArgument("condition b: grid must lie in (0, 1/e)");
  }
  const auto refined = refine_small_grid(lambdas);
  detail::check_theta(theta, alpha, refined);
  LiminfEstimate est;
  for (double l : lambdas) est.rows.push_back(condition_b_row(p, alpha, theta, l));
  for (double l : refined) est.refined_rows.push_back(condition_b_row(p, alpha, theta, l));
  est.log_estimate = detail::smallest_decade_min(est.rows);
  est.refined_log_estimate = detail::smallest_decade_min(est.refined_rows);
  est.positive = std::isfinite(est.log_estimate) && std::isfinite(est.refined_log_estimate);
  est.stable = est.positive && std::abs(est.refined_log_estimate - est.log_estimate) <= std::log(1.05);
  if (est.positive && est.stable) {
    est.note = "non-embedding certified for the rearranged exponent class";
  } else if (!est.positive) {
    est.note = "estimate vanishes on the grid";
  } else {
    est.note = "estimate not stable under refinement";
  }
  if (refined.back() < p.p_minus() - 1.0) {
    detail::append_note(est.note, "grid reaches below the exponent resolution");
  }
  return est;
}

// --- I_λ ----------------------------------------------------------------------

/// Inverse of F(x) = C1^x (x ln x)^{-αx} on [x0, inf) where F is decreasing.
class FInverse {
 public:
  explicit FInverse(double alpha, double c1 = std::numbers::e, std::optional<double> x0 = std::nullopt)
      : alpha_(alpha), log_c1_(std::log(c1)) {
    if (!(alpha > 0.0)) throw InvalidArgument("F inverse: alpha must be > 0");
    if (!(c1 > 0.0)) throw InvalidArgument("F inverse: C1 must be > 0");
    x0_ = x0 ? *x0 : default_x0();
    if (!(x0_ > 1.0)) throw InvalidArgument("F inverse: x0 must be > 1");
    // F must be decreasing past x0.
    for (double x = x0_; x < 1e12; x *= 1.5) {
      if (log_f(x * 1.5) > log_f(x)) throw InvalidArgument("F inverse: F is not decreasing on [x0, inf)");
    }
  }

  [[nodiscard]] double log_f(double x) const { return x * log_c1_ - alpha_ * x * std::log(x * std::log(x)); }
  [[nodiscard]] double x0() const noexcept { return x0_; }
  /// min(F(x0), 1).
  [[nodiscard]] double t0() const { return std::exp(std::min(0.0, log_f(x0_))); }

  /// l(t) = F^{-1}(t) given u = ln(1/t), for t <= F(x0).
  [[nodiscard]] double at_log_inverse(double u) const {
    const double target = -u;
    if (target > log_f(x0_)) throw InvalidArgument("F inverse: t above F(x0)");
    double lo = x0_;
    double hi = 2.0 * x0_;
    while (log_f(hi) > target) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (log_f(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

 private:
  // Largest zero of (ln F)'(x) = ln C1 - α(ln x + 1 + lnln x + 1/ln x), plus 1;
  // 2 when (ln F)' < 0 on all of (1, inf).
  [[nodiscard]] double default_x0() const {
    auto d = [this](double x) {
      const double s = std::log(x);
      return log_c1_ - alpha_ * (s + 1.0 + std::log(s) + 1.0 / s);
    };
    // On s = ln x the bracket term is minimal at s = (sqrt 5 - 1)/2; d is
    // decreasing beyond it.
    const double s_star = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = std::exp(s_star);
    if (d(lo) <= 0.0) return 2.0;
    double hi = 2.0 * lo;
    while (d(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (d(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) + 1.0;
  }

  double alpha_;
  double log_c1_;
  double x0_ = 2.0;
};

/// I_λ = ∫_0^{t0} (ln^α(e/t)/λ)^{l(t)} dt with l supplied as u ↦ l(e^{-u}).
/// Computed as ∫_{ln(1/t0)}^∞ exp(l(u)(α ln(1+u) - ln λ) - u) du.
inline LogIntegral i_lambda_integral(const std::function<double(double)>& l_of_u, double alpha, double lambda,
                                     double t0) {
  if (!(lambda > 0.0)) throw InvalidArgument("I_lambda: lambda must be > 0");
  if (!(alpha > 0.0)) throw InvalidArgument("I_lambda: alpha must be > 0");
  if (!(t0 > 0.0 && t0 <= 1.0)) throw InvalidArgument("I_lambda: t0 must lie in (0, 1]");
  const double log_lambda = std::log(lambda);
  auto phi = [&](double u) { return l_of_u(u) * (alpha * std::log1p(u) - log_lambda) - u; };
  return log_integrate_exp_to_infinity(phi, -std::log(t0), 1e-10);
}

/// I_λ with l = F^{-1} and t0 = min(F(x0), 1).
inline LogIntegral i_lambda_integral(const FInverse& f, double alpha, double lambda) {
  return i_lambda_integral([&f](double u) { return f.at_log_inverse(u); }, alpha, lambda, f.t0());
}

// --- divergence witness -------------------------------------------------------

struct WitnessTrace {
  std::vector<double> truncations;  // strictly decreasing
  std::vector<double> log_values;   // ln I(t)
  bool growth_flag = false;
  double growth_ratio = 0.0;        // I(t_min) / baseline
  std::string note;

  [[nodiscard]] double value(std::size_t i) const { return std::exp(log_values.at(i)); }
};

inline constexpr double kWitnessGrowthRatio = 1e3;
inline constexpr double kWitnessCap = 1e300;

/// Default truncations 1e-2, 1e-4, ..., 1e-12.
inline std::vector<double> default_truncations() {
  std::vector<double> t;
  for (int k = 2; k <= 12; k += 2) t.push_back(std::pow(10.0, -k));
  return t;
}

/// I(t) = ∫_t^{|Ω|} (c^{-1} ln^α(|Ω| e/s))^{q*(s)} ds per truncation t, with q*
/// the decreasing rearrangement of q. Truncations may be given as ln t so
/// that t far below the double range is expressible.
inline WitnessTrace divergence_witness_log(const ExponentFunction& q, double alpha, double c,
                                          std::span<const double> log_truncations) {
  if (!(alpha > 0.0)) throw InvalidArgument("witness: alpha must be > 0");
  if (!(c > 0.0)) throw InvalidArgument("witness: c must be > 0");
  if (log_truncations.empty()) throw InvalidArgument("witness: need at least one truncation");
  const ExponentFunction qs = rearranged_exponent(q);
  const Domain& d = qs.domain();
  const double log_total = d.log_total_measure();
  for (std::size_t i = 0; i < log_truncations.size(); ++i) {
    if (!(log_truncations[i] <= log_total) || std::isnan(log_truncations[i])) {
      throw InvalidArgument("witness: truncations must lie in (0, |Omega|]");
    }
    if (i > 0 && !(log_truncations[i] < log_truncations[i - 1])) {
      throw InvalidArgument("witness: truncations must be strictly decreasing");
    }
  }
  const double log_c = std::log(c);
  auto cell_integral = [&](std::size_t k, double u_lo, double u_hi) {
    const double qk = qs.value(k);
    auto phi = [&](double u) { return qk * (alpha * std::log(log_total + 1.0 + u) - log_c) - u; };
    return log_integrate_exp(phi, u_lo, u_hi, 1e-10);
  };
  WitnessTrace tr;
  LogSumExp full;  // cells lying entirely in [t, |Ω|]
  std::size_t next = d.size();  // cells processed from the top (largest s) down
  for (double log_t : log_truncations) {
    const double u_t = -log_t;
    while (next > 0 && -d.log_lower(next - 1) <= u_t) {
      --next;
      full.add(cell_integral(next, -d.log_upper(next), -d.log_lower(next)));
    }
    LogSumExp total = full;
    if (next > 0) total.add(cell_integral(next - 1, -d.log_upper(next - 1), u_t));
    tr.truncations.push_back(std::exp(log_t));
    tr.log_values.push_back(total.log_value());
  }
  // Growth relative to the first truncation with a positive value.
  double base = kNegInf;
  for (double v : tr.log_values) {
    if (v > kNegInf) {
      base = v;
      break;
    }
  }
  const double last = tr.log_values.back();
  const bool capped = last > std::log(kWitnessCap);
  if (base > kNegInf) {
    tr.growth_ratio = std::exp(last - base);
    tr.growth_flag = capped || last - base > std::log(kWitnessGrowthRatio);
  }
  if (base != tr.log_values.front()) detail::append_note(tr.note, "I vanishes at the first truncations");
  if (capped) detail::append_note(tr.note, "I exceeds the absolute cap");
  return tr;
}

inline WitnessTrace divergence_witness(const ExponentFunction& q, double alpha, double c,
                                      std::span<const double> truncations) {
  std::vector<double> logs;
  logs.reserve(truncations.size());
  for (double t : truncations) {
    if (!(t > 0.0)) throw InvalidArgument("witness: truncations must be > 0");
    logs.push_back(std::log(t));
  }
  return divergence_witness_log(q, alpha, c, logs);
}

// --- embedding constant ---------------------------------------------------------

struct FamilyMember {
  std::string name;
  SampledFunction f;
};

struct ConstantEstimate {
  double max_ratio = 0.0;
  std::string argmax;
  std::vector<std::pair<std::string, double>> ratios;
};

namespace detail {
// Uniform [0,1) from the raw 64-bit engine output; identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
}  // namespace detail

/// g_k = min(ln^α(|Ω| e/x), k), indicators of (0, s], and seeded random
/// piecewise-constant functions.
inline std::vector<FamilyMember> default_test_family(const DomainPtr& domain, double alpha,
                                                     std::span<const double> ks, int random_members,
                                                     std::uint64_t seed) {
  std::vector<FamilyMember> fam;
  const double log_total = domain->log_total_measure();
  for (double k : ks) {
    fam.push_back({"g_" + csv::format_double(k), SampledFunction::sample_log(domain, [&](double log_x) {
                     return std::min(std::pow(log_total + 1.0 - log_x, alpha), k);
                   })});
  }
  const std::size_t n = domain->size();
  for (std::size_t frac : {2u, 8u, 32u, 128u}) {
    const std::size_t cells = std::max<std::size_t>(1, n / frac);
    std::vector<double> v(n, 0.0);
    std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(cells), 1.0);
    fam.push_back({"indicator_" + std::to_string(cells), SampledFunction(domain, std::move(v))});
  }
  std::mt19937_64 rng(seed);
  for (int r = 0; r < random_members; ++r) {
    std::vector<double> v(n);
    const std::size_t pieces = 1 + static_cast<std::size_t>(detail::uniform01(rng) * 16.0);
    std::size_t start = 0;
    for (std::size_t j = 0; j < pieces; ++j) {
      const std::size_t end = j + 1 == pieces ? n : start + static_cast<std::size_t>(detail::uniform01(rng) * static_cast<double>(n - start));
      const double val = std::exp(8.0 * detail::uniform01(rng) - 2.0);
      for (std::size_t i = start; i < end; ++i) v[i] = val;
      start = end;
    }
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[0] = 1.0;
    fam.push_back({"random_" + std::to_string(r), SampledFunction(domain, std::move(v))});
  }
  return fam;
}

/// max over the family of ‖f‖_{L(log L)^α} / ‖f‖_{p(.)}; zero members skipped.
inline ConstantEstimate embedding_constant_estimate(const ExponentFunction& p, double alpha,
                                                    std::span<const FamilyMember> family) {
  if (family.empty()) throw InvalidArgument("embedding constant: empty family");
  const YoungFunction m = YoungFunction::llogl(alpha);
  ConstantEstimate est;
  for (const auto& member : family) {
    if (member.f.is_zero()) continue;
    const double den = luxemburg_norm(member.f, p).value;
    const double num = orlicz_norm(member.f, m).value;
    const double ratio = num / den;
    est.ratios.emplace_back(member.name, ratio);
    if (ratio > est.max_ratio) {
      est.max_ratio = ratio;
      est.argmax = member.name;
    }
  }
  if (est.ratios.empty()) throw InvalidArgument("embedding constant: family has only zero functions");
  return est;
}

inline ConstantEstimate embedding_constant_estimate(const ExponentFunction& p, double alpha,
                                                    std::uint64_t seed = 1) {
  const std::vector<double> ks = {2, 4, 8, 16, 32, 64};
  const auto fam = default_test_family(p.domain_ptr(), alpha, ks, 8, seed);
  return embedding_constant_estimate(p, alpha, fam);
}

}  // namespace vexp
