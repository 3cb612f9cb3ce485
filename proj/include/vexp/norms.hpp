#pragma once

// Variable-exponent modulars and Luxemburg norms, Orlicz norms for the two
// Zygmund generators, and the rearrangement form of the exp(L^α) norm.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "vexp/errors.hpp"
#include "vexp/exponent.hpp"
#include "vexp/grid_function.hpp"
#include "vexp/numeric.hpp"

namespace vexp {

struct NormResult {
  double value = 0.0;
  double log_value = kNegInf;
  double modular_at_value = 0.0;
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

// --- Young functions --------------------------------------------------------

enum class YoungKind { loglog_power, exp_power };

/// M(t) = t (log(e+t))^α  or  M(t) = exp(t^α) - 1.
class YoungFunction {
 public:
  YoungFunction(YoungKind kind, double alpha) : kind_(kind), alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("YoungFunction: alpha must be > 0");
  }

  static YoungFunction llogl(double alpha) { return {YoungKind::loglog_power, alpha}; }
  static YoungFunction expl(double alpha) { return {YoungKind::exp_power, alpha}; }

  [[nodiscard]] YoungKind kind() const noexcept { return kind_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }

  [[nodiscard]] double operator()(double t) const {
    if (t < 0.0) throw InvalidArgument("YoungFunction: t must be >= 0");
    if (t == 0.0) return 0.0;
    return std::exp(log_eval(std::log(t)));
  }

  /// ln M(e^{log_t}).
  [[nodiscard]] double log_eval(double log_t) const {
    if (log_t == kNegInf) return kNegInf;
    if (kind_ == YoungKind::loglog_power) {
      // ln(e + t) without overflow for huge t.
      const double log_e_plus_t = log_add_exp(1.0, log_t);
      return log_t + alpha_ * std::log(log_e_plus_t);
    }
    const double log_s = alpha_ * log_t;  // s = t^α
    if (log_s > 700.0) return kInf;       // exp(s) overflows every double
    const double s = std::exp(log_s);
    return s > 1.0 ? s + std::log1p(-std::exp(-s)) : std::log(std::expm1(s));
  }

  /// M^{-1}(s) for s >= 0, by bisection in ln t.
  [[nodiscard]] double inverse(double s) const {
    if (s < 0.0 || std::isnan(s)) throw InvalidArgument("YoungFunction::inverse: s must be >= 0");
    if (s == 0.0) return 0.0;
    const double target = std::log(s);
    double lo = -1.0;
    double hi = 1.0;
    while (log_eval(lo) > target) lo *= 2.0;
    while (log_eval(hi) < target) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      (log_eval(mid) < target ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
  }

  /// Largest negative relative second difference of M on a geometric sample
  /// of [t_lo, t_hi]; 0 when every sampled triple is convex.
  [[nodiscard]] double convexity_violation(double t_lo = 1e-8, double t_hi = 1e3, int samples = 2000) const {
    double worst = 0.0;
    const double r = std::log(t_hi / t_lo);
    for (int k = 0; k < samples; ++k) {
      const double t = t_lo * std::exp(r * k / samples);
      const double h = 1e-3 * t;
      const double m0 = (*this)(t - h);
      const double m1 = (*this)(t);
      const double m2 = (*this)(t + h);
      const double second = m0 - 2.0 * m1 + m2;
      const double scale = std::max({std::abs(m0), std::abs(m1), std::abs(m2), 1e-300});
      // Second differences below rounding noise are not counted.
      if (second < -64.0 * std::numeric_limits<double>::epsilon() * scale) worst = std::max(worst, -second / scale);
    }
    return worst;
  }

  [[nodiscard]] std::string label() const {
    return kind_ == YoungKind::loglog_power ? "llogl" : "expl";
  }

 private:
  YoungKind kind_;
  double alpha_;
};

namespace detail {

// Smallest λ with rho(ln λ) <= 1 for a continuous nonincreasing rho, by
// bisection in ln λ starting from the guess hi.
template <class Rho>
NormResult solve_unit_modular(const Rho& rho, double log_hi, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("norm: tol must be > 0");
  NormResult r;
  int iterations = 0;
  double rho_hi = rho(log_hi);
  for (double step = std::numbers::ln2; rho_hi > 1.0; step *= 2.0) {
    log_hi += step;
    rho_hi = rho(log_hi);
    if (++iterations > 200) throw ResourceError("norm: no upper bracket found in 200 steps");
  }
  double log_lo = log_hi - std::numbers::ln2;
  for (double step = std::numbers::ln2; rho(log_lo) <= 1.0; step *= 2.0) {
    log_hi = log_lo;
    log_lo -= step;
    if (++iterations > 200) throw ResourceError("norm: no lower bracket found in 200 steps");
  }
  rho_hi = rho(log_hi);
  const double log1p_tol = std::log1p(tol);
  for (;;) {
    const double width = log_hi - log_lo;
    const double mid = 0.5 * (log_lo + log_hi);
    const bool at_precision = !(mid > log_lo && mid < log_hi);
    if ((width <= log1p_tol && std::abs(rho_hi - 1.0) <= tol) || at_precision) break;
    if (++iterations > 200) {
      throw ResourceError("norm: bisection did not converge in 200 iterations (bracket [" +
                          csv::format_double(std::exp(log_lo)) + ", " + csv::format_double(std::exp(log_hi)) +
                          "], modular " + csv::format_double(rho_hi) + ")");
    }
    const double v = rho(mid);
    if (v > 1.0) {
      log_lo = mid;
    } else {
      log_hi = mid;
      rho_hi = v;
    }
  }
  r.log_value = log_hi;
  r.value = std::exp(log_hi);
  r.modular_at_value = rho_hi;
  r.iterations = iterations;
  r.bracket_lo = std::exp(log_lo);
  r.bracket_hi = std::exp(log_hi);
  return r;
}

inline void require_same_cells(const Domain& a, const Domain& b) {
  if (!a.same_cells(b)) throw InvalidArgument("function and exponent live on different cells");
}

}  // namespace detail

/// ρ_λ(f) as a function of ln λ, with per-cell ln|f| and ln|cell| cached.
class ModularEvaluator {
 public:
  ModularEvaluator(const SampledFunction& f, const ExponentFunction& p) {
    detail::require_same_cells(f.domain(), p.domain());
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double v = std::abs(f.value(i));
      if (v == 0.0) continue;
      cells_.push_back({std::log(v), f.log_measure(i), p.value(i)});
    }
  }

  [[nodiscard]] bool zero() const noexcept { return cells_.empty(); }

  [[nodiscard]] double operator()(double log_lambda) const {
    CompensatedSum s;
    for (const auto& c : cells_) {
      const double log_term = c.log_measure + c.p * (c.log_value - log_lambda);
      s.add(std::exp(log_term));  // underflow flushes to 0
    }
    return s.value();
  }

  /// ln of the largest |f| value times max(1, |Ω|) scale: a safe first guess.
  [[nodiscard]] double log_guess() const {
    double m = kNegInf;
    for (const auto& c : cells_) m = std::max(m, c.log_value);
    return m;
  }

 private:
  struct Cell {
    double log_value, log_measure, p;
  };
  std::vector<Cell> cells_;
};

/// ρ_λ(f) = Σ |cell| (|f|/λ)^p.
inline double modular(const SampledFunction& f, const ExponentFunction& p, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("modular: lambda must be > 0");
  return ModularEvaluator(f, p)(std::log(lambda));
}

/// inf{λ > 0 : ρ_λ(f) <= 1}.
inline NormResult luxemburg_norm(const SampledFunction& f, const ExponentFunction& p, double tol = 1e-8) {
  const ModularEvaluator rho(f, p);
  if (rho.zero()) return {};
  const double log_hi = rho.log_guess() + std::max(0.0, f.domain().log_total_measure()) + std::numbers::ln2;
  return detail::solve_unit_modular(rho, log_hi, tol);
}

/// inf{λ > 0 : Σ |cell| M(|f|/λ) <= 1}.
inline NormResult orlicz_norm(const SampledFunction& f, const YoungFunction& m, double tol = 1e-8) {
  struct Cell {
    double log_value, log_measure;
  };
  std::vector<Cell> cells;
  double log_max = kNegInf;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = std::abs(f.value(i));
    if (v == 0.0) continue;
    cells.push_back({std::log(v), f.log_measure(i)});
    log_max = std::max(log_max, std::log(v));
  }
  if (cells.empty()) return {};
  auto rho = [&](double log_lambda) {
    CompensatedSum s;
    for (const auto& c : cells) s.add(std::exp(c.log_measure + m.log_eval(c.log_value - log_lambda)));
    return s.value();
  };
  return detail::solve_unit_modular(rho, log_max + std::max(0.0, f.domain().log_total_measure()) + 1.0, tol);
}

/// sup_t (ln(|Ω| e / t))^{-1/α} f*(t), taken at the right edge of every cell
/// of f* where the weight is largest.
inline double exp_zygmund_norm(const SampledFunction& f, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("exp_zygmund_norm: alpha must be > 0");
  const SampledFunction r = decreasing_rearrangement(f);
  const Domain& d = r.domain();
  const double log_total = d.log_total_measure();
  double best = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double v = r.value(k);
    if (v == 0.0) break;
    const double w = log_total + 1.0 - d.log_upper(k);
    best = std::max(best, v * std::pow(w, -1.0 / alpha));
  }
  return best;
}

namespace detail {

// Common refinement of two partitions of (0, T], given their log edges.
inline std::vector<double> merge_log_edges(std::span<const double> a, std::span<const double> b) {
  std::vector<double> all;
  all.reserve(a.size() + b.size());
  all.insert(all.end(), a.begin() + 1, a.end());
  all.insert(all.end(), b.begin() + 1, b.end());
  std::sort(all.begin(), all.end());
  const double top = all.back();
  std::vector<double> out{kNegInf};
  for (double e : all) {
    const double tol = 1e-13 * std::max(1.0, std::abs(e));
    if (e >= top - tol) break;
    if (e - out.back() > tol) out.push_back(e);
  }
  out.push_back(top);
  return out;
}

inline std::vector<double> resample(const Domain& src, std::span<const double> values, const Domain& dst) {
  std::vector<double> out(dst.size());
  const double src_top = src.log_edges().back();
  for (std::size_t j = 0; j < dst.size(); ++j) {
    const double mid = std::min(dst.log_midpoint(j), src_top);
    out[j] = values[src.locate_log(mid)];
  }
  return out;
}

}  // namespace detail

struct BoundCheck {
  double lhs = 0.0;  // ‖f‖_{p(.)}
  double rhs = 0.0;  // (1 + |Ω|) ‖f*‖_{p*(.)}
};

/// Both sides of ‖f‖_{p(.)} <= (1 + |Ω|) ‖f*‖_{p*(.)}, the right side on the
/// common refinement of the f* and p* partitions.
inline BoundCheck rearrangement_norm_bound_check(const SampledFunction& f, const ExponentFunction& p) {
  detail::require_same_cells(f.domain(), p.domain());
  BoundCheck out;
  out.lhs = luxemburg_norm(f, p).value;
  const SampledFunction fs = decreasing_rearrangement(f);
  const ExponentFunction ps = rearranged_exponent(p);
  auto common = Domain::from_log_edges(detail::merge_log_edges(fs.domain().log_edges(), ps.domain().log_edges()));
  const SampledFunction f_on(common, detail::resample(fs.domain(), fs.values(), *common));
  const ExponentFunction p_on(common, detail::resample(ps.domain(), ps.values(), *common), ps.name());
  out.rhs = (1.0 + f.domain().total_measure()) * luxemburg_norm(f_on, p_on).value;
  return out;
}

}  // namespace vexp
