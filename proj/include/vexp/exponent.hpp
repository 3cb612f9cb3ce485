#pragma once

// Variable exponents p(.) >= 1 sampled cellwise on a Domain, their near-1
// level sets, and the constructors used by the embedding experiments.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vexp/csv_io.hpp"
#include "vexp/errors.hpp"
#include "vexp/grid_function.hpp"
#include "vexp/lambert_w.hpp"
#include "vexp/numeric.hpp"

namespace vexp {

/// Value assigned to q = p/(p-1) where p = 1.
inline constexpr double kDualSentinel = 1e16;

/// Level-set measures of a cellwise exponent, kept in log form.
class LevelSets {
 public:
  LevelSets() = default;

  LevelSets(std::span<const double> p, std::span<const double> log_measures) {
    std::vector<std::size_t> order(p.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    // Group equal values; cumulative sums always run from the smallest p.
    LogSumExp below;
    std::vector<double> group_log;
    for (std::size_t k = 0; k < order.size();) {
      const double v = p[order[k]];
      LogSumExp group;
      while (k < order.size() && p[order[k]] == v) group.add(log_measures[order[k++]]);
      values_.push_back(v);
      group_log.push_back(group.log_value());
      below.add(group.log_value());
      log_at_most_.push_back(below.log_value());
    }
    log_at_least_.assign(values_.size(), kNegInf);
    LogSumExp above;
    for (std::size_t k = values_.size(); k-- > 0;) {
      above.add(group_log[k]);
      log_at_least_[k] = above.log_value();
    }
  }

  /// ln |{p <= level}|; -inf when empty.
  [[nodiscard]] double log_at_most(double level) const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), level);
    if (it == values_.begin()) return kNegInf;
    return log_at_most_[static_cast<std::size_t>(it - values_.begin()) - 1];
  }

  /// ln |{p >= level}|; -inf when empty.
  [[nodiscard]] double log_at_least(double level) const {
    const auto it = std::lower_bound(values_.begin(), values_.end(), level);
    if (it == values_.end()) return kNegInf;
    return log_at_least_[static_cast<std::size_t>(it - values_.begin())];
  }

  /// Largest attained value <= level, if any.
  [[nodiscard]] std::optional<double> floor_value(double level) const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), level);
    if (it == values_.begin()) return std::nullopt;
    return *(it - 1);
  }

  /// Smallest attained value >= level, if any.
  [[nodiscard]] std::optional<double> ceil_value(double level) const {
    const auto it = std::lower_bound(values_.begin(), values_.end(), level);
    if (it == values_.end()) return std::nullopt;
    return *it;
  }

  /// Distinct values, ascending.
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
  std::vector<double> log_at_most_;
  std::vector<double> log_at_least_;
};

/// p(.) constant on each cell of a domain, 1 <= p < inf.
class ExponentFunction {
 public:
  ExponentFunction(DomainPtr domain, std::vector<double> p, std::string name = "custom")
      : domain_(std::move(domain)), p_(std::move(p)), name_(std::move(name)) {
    if (!domain_) throw InvalidArgument("ExponentFunction: null domain");
    if (p_.size() != domain_->size()) throw InvalidArgument("ExponentFunction: one value per cell required");
    for (double v : p_) {
      if (!std::isfinite(v)) throw InvalidArgument("ExponentFunction: p must be finite");
      if (!(v >= 1.0)) throw InvalidArgument("ExponentFunction: p must be >= 1");
    }
    p_minus_ = *std::min_element(p_.begin(), p_.end());
    p_plus_ = *std::max_element(p_.begin(), p_.end());
    levels_ = LevelSets(p_, domain_->log_measures());
  }

  /// Samples g(ln x) at the right edge of every cell of a one-dimensional
  /// domain: for p increasing in x this is the supremum over the cell.
  template <class G>
  static ExponentFunction from_log_function(DomainPtr domain, G&& g, std::string name) {
    std::vector<double> p(domain->size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = g(domain->log_upper(i));
    return {std::move(domain), std::move(p), std::move(name)};
  }

  static ExponentFunction constant(DomainPtr domain, double q) {
    const std::size_t n = domain->size();
    return {std::move(domain), std::vector<double>(n, q), "constant"};
  }

  [[nodiscard]] const Domain& domain() const noexcept { return *domain_; }
  [[nodiscard]] const DomainPtr& domain_ptr() const noexcept { return domain_; }
  [[nodiscard]] std::size_t size() const noexcept { return p_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return p_; }
  [[nodiscard]] double value(std::size_t i) const { return p_.at(i); }
  [[nodiscard]] double p_minus() const noexcept { return p_minus_; }
  [[nodiscard]] double p_plus() const noexcept { return p_plus_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const LevelSets& level_sets() const noexcept { return levels_; }

  /// p(x) on a one-dimensional domain.
  [[nodiscard]] double eval(double x) const {
    if (!(x > 0.0)) throw InvalidArgument("ExponentFunction::eval: x must be > 0");
    return p_[domain_->locate_log(std::log(x))];
  }

  /// p(x, y) on the two-dimensional grid; points on shared edges go to the
  /// lower-index cell.
  [[nodiscard]] double eval(double x, double y) const {
    if (domain_->dimension() != 2) throw InvalidArgument("ExponentFunction::eval: domain is not two-dimensional");
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) throw InvalidArgument("ExponentFunction::eval: point outside (0,1)^2");
    const auto n = domain_->side();
    auto idx = [n](double t) {
      const auto k = static_cast<std::size_t>(std::ceil(t * static_cast<double>(n)));
      return k == 0 ? std::size_t{0} : std::min(k - 1, n - 1);
    };
    return p_[idx(x) * n + idx(y)];
  }

  [[nodiscard]] SampledFunction sampled() const { return {domain_, p_}; }

  /// ln m(λ) = ln |{p <= 1 + λ}|.
  [[nodiscard]] double log_level_measure(double lambda) const { return levels_.log_at_most(1.0 + lambda); }
  [[nodiscard]] double level_measure(double lambda) const { return std::exp(log_level_measure(lambda)); }

 private:
  DomainPtr domain_;
  std::vector<double> p_;
  std::string name_;
  double p_minus_ = 1.0;
  double p_plus_ = 1.0;
  LevelSets levels_;
};

/// Grid resolution for exponents on (0, x0] near x = 0: cells geometric in
/// ln(1/x) up to ln(1/x) = l_max.
struct LogLogGrid {
  std::size_t cells_per_decade = 4000;
  double l_max = 1e7;
};

// --- Λ(r, a, b) family ----------------------------------------------------

namespace detail {
inline void check_lambda_params(double a, double r0) {
  if (!(a > 0.0)) throw InvalidArgument("lambda exponent: a must be > 0");
  if (!(r0 > 0.0 && r0 < std::exp(-std::numbers::e))) throw InvalidArgument("lambda exponent: r0 must lie in (0, e^-e)");
}
}  // namespace detail

/// Λ(r) from ln r, so radii far below the double range are usable.
inline double lambda_exponent_log(double log_r, double a, double b, double r0) {
  detail::check_lambda_params(a, r0);
  if (std::isnan(log_r) || log_r == kNegInf) throw DomainError("lambda exponent: r must be > 0");
  const double lr = std::min(log_r, std::log(r0));
  const double big_l = -lr;  // ln(1/r)
  return 1.0 + a * std::log(big_l) / big_l + b / big_l;
}

/// Λ(r, a, b) = 1 + a lnln(1/r)/ln(1/r) + b/ln(1/r) for r <= r0, Λ(r0) beyond.
inline double lambda_exponent(double r, double a, double b, double r0) {
  if (!(r > 0.0)) throw DomainError("lambda exponent: r must be > 0");
  return lambda_exponent_log(std::log(r), a, b, r0);
}

/// ln r of the small-r solution of Λ(r, a, b) - 1 = x.
inline double lambda_level_set_log_radius(double x, double a, double b) {
  if (!(a > 0.0)) throw InvalidArgument("lambda level-set radius: a must be > 0");
  if (!(x > 0.0)) throw DomainError("lambda level-set radius: x must be > 0");
  const double k = std::exp(b / a);
  const double arg = -x / (a * k);
  if (!(arg > -1.0 / std::numbers::e && arg < 0.0)) {
    throw DomainError("lambda level-set radius: -x/(a k) must lie in (-1/e, 0)");
  }
  return a / x * w_secondary(arg);
}

inline double lambda_level_set_radius(double x, double a, double b) {
  return std::exp(lambda_level_set_log_radius(x, a, b));
}

// --- explicit examples ----------------------------------------------------

/// p = 1 + α W_p(L/α)/L with L = ln(1/x) on (0, x0]; {p <= 1+λ} = (0, λ^{α/λ}].
inline ExponentFunction nonembedding_example_exponent(double alpha, std::optional<double> x0 = std::nullopt,
                                                      LogLogGrid grid = {}) {
  if (!(alpha > 0.0)) throw InvalidArgument("nonembedding exponent: alpha must be > 0");
  const double top = x0.value_or(std::pow(0.2, alpha / 0.2));
  if (!(top > 0.0 && top < 1.0)) throw InvalidArgument("nonembedding exponent: x0 must lie in (0, 1)");
  auto domain = Domain::loglog(top, grid.l_max, grid.cells_per_decade);
  return ExponentFunction::from_log_function(
      std::move(domain),
      [alpha](double log_x) {
        const double big_l = -log_x;
        return 1.0 + alpha * w_principal(big_l / alpha) / big_l;
      },
      "nonembed");
}

/// p = 1 + α ln(L/α)/L with L = ln(1/x) on (0, x0], x0 < e^{-eα}.
inline ExponentFunction embedding_example_exponent(double alpha, std::optional<double> x0 = std::nullopt,
                                                   LogLogGrid grid = {}) {
  if (!(alpha > 0.0)) throw InvalidArgument("embedding exponent: alpha must be > 0");
  const double top = x0.value_or(std::exp(-alpha * (std::numbers::e + 1.0)));
  if (!(top > 0.0 && top < std::exp(-std::numbers::e * alpha))) {
    throw InvalidArgument("embedding exponent: x0 must lie in (0, e^{-e alpha})");
  }
  auto domain = Domain::loglog(top, grid.l_max, grid.cells_per_decade);
  return ExponentFunction::from_log_function(
      std::move(domain),
      [alpha](double log_x) {
        const double big_l = -log_x;
        return 1.0 + alpha * std::log(big_l / alpha) / big_l;
      },
      "embed");
}

/// ln of the closed-form level-set measure of the nonembedding example.
inline double nonembedding_log_level_measure(double alpha, double lambda) { return alpha / lambda * std::log(lambda); }

/// ln of the closed-form level-set measure of the embedding example (λ < 1/e).
inline double embedding_log_level_measure(double alpha, double lambda) {
  return alpha / lambda * w_secondary(-lambda);
}

// --- prescribed level sets --------------------------------------------------

/// A target profile λ ↦ ln m(λ), nondecreasing on (0, lambda_max].
struct LevelSetTarget {
  std::function<double(double)> log_measure;
  double lambda_max = 0.3;
  std::string name = "custom";
};

/// m(λ) = λ^{α/λ}.
inline LevelSetTarget nonembedding_target(double alpha, double lambda_max = 0.5) {
  return {[alpha](double l) { return alpha / l * std::log(l); }, lambda_max, "nonembed"};
}

/// m(λ) = λ^{α/λ} ln^{-ε/λ}(1/λ).
inline LevelSetTarget example_one_target(double alpha, double eps, double lambda_max = 0.3) {
  return {[alpha, eps](double l) { return (alpha * std::log(l) - eps * std::log(-std::log(l))) / l; }, lambda_max,
          "example1"};
}

/// m(λ) = λ^{ε/λ} ln^{-α/λ}(1/λ).
inline LevelSetTarget example_three_target(double alpha, double eps, double lambda_max = 0.3) {
  return {[alpha, eps](double l) { return (eps * std::log(l) - alpha * std::log(-std::log(l))) / l; }, lambda_max,
          "example3"};
}

/// Decreasing-rearranged exponent on (0, x0] with p(x) = 1 + inf{λ : m(λ) >= x}.
/// x0 defaults to m(lambda_max).
inline ExponentFunction levelset_prescribed_exponent(const LevelSetTarget& target,
                                                     std::optional<double> x0 = std::nullopt, LogLogGrid grid = {}) {
  if (!target.log_measure) throw InvalidArgument("levelset exponent: empty target");
  if (!(target.lambda_max > 0.0)) throw InvalidArgument("levelset exponent: lambda_max must be > 0");
  constexpr double kLambdaFloor = 1e-12;
  // Monotonicity on a geometric probe grid.
  constexpr int kProbe = 400;
  const double ratio = std::log(target.lambda_max / kLambdaFloor);
  double prev = kNegInf;
  for (int k = 0; k <= kProbe; ++k) {
    const double l = kLambdaFloor * std::exp(ratio * k / kProbe);
    const double v = target.log_measure(l);
    if (std::isnan(v)) throw InvalidArgument("levelset exponent: target is NaN at lambda = " + csv::format_double(l));
    if (v < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
      throw InvalidArgument("levelset exponent: target is not monotone near lambda = " + csv::format_double(l));
    }
    prev = std::max(prev, v);
  }
  const double log_top_target = target.log_measure(target.lambda_max);
  const double log_x0 = x0 ? std::log(*x0) : log_top_target;
  if (!(log_x0 < 0.0)) throw InvalidArgument("levelset exponent: x0 must lie in (0, 1)");
  if (log_x0 > log_top_target + 1e-12) throw InvalidArgument("levelset exponent: x0 exceeds m(lambda_max)");
  auto domain = Domain::loglog(std::exp(log_x0), grid.l_max, grid.cells_per_decade);
  const auto& f = target.log_measure;
  const double lambda_max = target.lambda_max;
  return ExponentFunction::from_log_function(
      std::move(domain),
      [&f, lambda_max](double log_x) {
        if (f(kLambdaFloor) >= log_x) return 1.0 + kLambdaFloor;
        double lo = kLambdaFloor;
        double hi = lambda_max;
        // Bisection in log λ down to relative width 1e-14.
        for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
          const double mid = std::sqrt(lo * hi);
          (f(mid) >= log_x ? hi : lo) = mid;
        }
        return 1.0 + hi;
      },
      target.name);
}

// --- compact sets -----------------------------------------------------------

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Segment2 {
  Point2 a, b;
};

/// Finite union of points and segments. One-dimensional sets use y = 0.
struct CompactSet {
  std::vector<Point2> points;
  std::vector<Segment2> segments;

  [[nodiscard]] bool empty() const noexcept { return points.empty() && segments.empty(); }
};

namespace detail {

inline double point_box_distance(Point2 p, const CellBox& b) {
  const double dx = std::max({b.x0 - p.x, 0.0, p.x - b.x1});
  const double dy = std::max({b.y0 - p.y, 0.0, p.y - b.y1});
  return std::hypot(dx, dy);
}

inline double point_segment_distance(Point2 p, const Segment2& s) {
  const double vx = s.b.x - s.a.x;
  const double vy = s.b.y - s.a.y;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((p.x - s.a.x) * vx + (p.y - s.a.y) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (s.a.x + t * vx), p.y - (s.a.y + t * vy));
}

// Liang-Barsky clip of the segment against the closed box.
inline bool segment_meets_box(const Segment2& s, const CellBox& b) {
  double t0 = 0.0;
  double t1 = 1.0;
  const double dx = s.b.x - s.a.x;
  const double dy = s.b.y - s.a.y;
  const double pq[4][2] = {{-dx, s.a.x - b.x0}, {dx, b.x1 - s.a.x}, {-dy, s.a.y - b.y0}, {dy, b.y1 - s.a.y}};
  for (const auto& e : pq) {
    if (e[0] == 0.0) {
      if (e[1] < 0.0) return false;
      continue;
    }
    const double r = e[1] / e[0];
    if (e[0] < 0.0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
    if (t0 > t1) return false;
  }
  return true;
}

inline double segment_box_distance(const Segment2& s, const CellBox& b) {
  if (segment_meets_box(s, b)) return 0.0;
  double d = std::min(point_box_distance(s.a, b), point_box_distance(s.b, b));
  for (Point2 c : {Point2{b.x0, b.y0}, Point2{b.x0, b.y1}, Point2{b.x1, b.y0}, Point2{b.x1, b.y1}}) {
    d = std::min(d, point_segment_distance(c, s));
  }
  return d;
}

}  // namespace detail

/// Distance from each cell of the domain to K (0 for cells meeting K).
inline std::vector<double> cell_distances(const Domain& domain, const CompactSet& k) {
  if (k.empty()) throw InvalidArgument("compact set: K must be nonempty");
  const bool flat = domain.dimension() == 1;
  auto flatten = [flat](const CellBox& b) { return flat ? CellBox{b.x0, b.x1, 0.0, 0.0} : b; };
  // Containment in the closure of the domain.
  const double x_hi = domain.kind() == DomainKind::torus ? 1.0 : std::exp(domain.log_upper(domain.size() - 1));
  auto inside = [&](Point2 p) {
    return p.x >= 0.0 && p.x <= x_hi && (flat ? p.y == 0.0 : (p.y >= 0.0 && p.y <= 1.0));
  };
  for (const auto& p : k.points) {
    if (!inside(p)) throw InvalidArgument("compact set: K must lie in the closure of the domain");
  }
  for (const auto& s : k.segments) {
    if (!inside(s.a) || !inside(s.b)) throw InvalidArgument("compact set: K must lie in the closure of the domain");
  }
  std::vector<double> d(domain.size(), kInf);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const CellBox b = flatten(domain.cell_box(i));
    for (const auto& p : k.points) d[i] = std::min(d[i], detail::point_box_distance(p, b));
    for (const auto& s : k.segments) d[i] = std::min(d[i], detail::segment_box_distance(s, b));
  }
  return d;
}

/// p = Λ(dist(cell, K), a, b) with p = 1 on cells meeting K.
inline ExponentFunction exponent_from_compact_set(const CompactSet& k, double a, double b, double r0,
                                                  DomainPtr domain) {
  detail::check_lambda_params(a, r0);
  const auto dist = cell_distances(*domain, k);
  std::vector<double> p(dist.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = dist[i] == 0.0 ? 1.0 : lambda_exponent(dist[i], a, b, r0);
  return {std::move(domain), std::move(p), "compact"};
}

// --- derived exponents --------------------------------------------------------

/// q = p/(p-1), with kDualSentinel where p = 1.
inline ExponentFunction dual_exponent(const ExponentFunction& p) {
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double v = p.value(i);
    q[i] = v == 1.0 ? kDualSentinel : 1.0 + 1.0 / (v - 1.0);
  }
  return {p.domain_ptr(), std::move(q), "dual-" + p.name()};
}

/// p* on (0, |Ω|]: decreasing rearrangement of the cell values.
inline ExponentFunction rearranged_exponent(const ExponentFunction& p) {
  const SampledFunction r = decreasing_rearrangement(p.sampled());
  return {r.domain_ptr(), std::vector<double>(r.values().begin(), r.values().end()), p.name() + "*"};
}

// --- level-set profiles ---------------------------------------------------

struct LevelSetProfile {
  std::vector<double> lambdas;
  std::vector<double> log_m;  // ln m(λ), -inf where empty

  [[nodiscard]] double m(std::size_t i) const { return std::exp(log_m.at(i)); }
};

inline LevelSetProfile level_set_profile(const ExponentFunction& p, std::span<const double> lambdas) {
  LevelSetProfile out;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw InvalidArgument("level_set_profile: lambdas must be > 0");
    if (i > 0 && lambdas[i] == lambdas[i - 1]) throw InvalidArgument("level_set_profile: duplicate lambda");
  }
  const bool up = std::is_sorted(lambdas.begin(), lambdas.end());
  const bool down = std::is_sorted(lambdas.rbegin(), lambdas.rend());
  if (!up && !down) throw InvalidArgument("level_set_profile: lambda grid must be sorted");
  out.lambdas.assign(lambdas.begin(), lambdas.end());
  out.log_m.reserve(lambdas.size());
  for (double l : lambdas) out.log_m.push_back(p.log_level_measure(l));
  return out;
}

/// Geometric grid from hi down to lo with `per_decade` points per decade.
inline std::vector<double> geometric_lambda_grid(double hi, double lo, int per_decade) {
  if (!(hi > lo && lo > 0.0) || per_decade < 1) throw InvalidArgument("lambda grid: need hi > lo > 0");
  const auto n = static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade - 1e-9));
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) g[static_cast<std::size_t>(k)] = hi * std::pow(10.0, -static_cast<double>(k) / per_decade);
  g.back() = lo;
  return g;
}

// --- θ for condition (b) ----------------------------------------------------

/// θ given through ln θ(t).
struct ThetaSpec {
  std::function<double(double)> log_theta;
  std::string name = "custom";
};

/// θ(t) = (ln t)^power.
inline ThetaSpec theta_log_power(double power) {
  return {[power](double t) { return power * std::log(std::log(t)); }, "log"};
}

/// θ(t) = t^power.
inline ThetaSpec theta_power(double power) {
  return {[power](double t) { return power * std::log(t); }, "power"};
}

// --- CSV: `x,p` (right cell edges) or `x,y,p` (two-dimensional centers) -----

inline void write_exponent_csv(std::ostream& out, const ExponentFunction& p) {
  const Domain& d = p.domain();
  if (d.dimension() == 2) {
    out << "x,y,p\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
      const CellBox b = d.cell_box(i);
      out << csv::format_double(0.5 * (b.x0 + b.x1)) << ',' << csv::format_double(0.5 * (b.y0 + b.y1)) << ','
          << csv::format_double(p.value(i)) << '\n';
    }
    return;
  }
  out << "x,p\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << csv::format_log_scalar(d.log_upper(i)) << ',' << csv::format_double(p.value(i)) << '\n';
  }
}

inline ExponentFunction read_exponent_csv(std::istream& in, std::string name = "csv") {
  const csv::Table t = csv::read_table(in);
  if (t.rows.empty()) throw InvalidArgument("exponent CSV: no rows");
  const std::size_t cp = t.column("p");
  std::vector<double> p;
  p.reserve(t.rows.size());
  for (const auto& row : t.rows) p.push_back(std::stod(row[cp]));
  const bool planar = std::find(t.header.begin(), t.header.end(), "y") != t.header.end();
  if (planar) {
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(p.size()))));
    if (side * side != p.size()) throw InvalidArgument("exponent CSV: x,y,p needs side^2 rows");
    return {Domain::torus(side, 2), std::move(p), std::move(name)};
  }
  const std::size_t cx = t.column("x");
  std::vector<double> edges{kNegInf};
  for (const auto& row : t.rows) edges.push_back(csv::parse_log_scalar(row[cx]));
  return {Domain::from_log_edges(std::move(edges)), std::move(p), std::move(name)};
}

}  // namespace vexp
