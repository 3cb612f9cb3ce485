#pragma once

// Piecewise-constant functions on finite-measure domains: the interval
// (0, x0] with an arbitrary partition, or the uniform grid on (0,1)^n,
// n in {1, 2}. Cell measures are stored as logarithms so that partitions
// reaching down to x ~ e^{-10^7} stay exact; `measure(i)` may underflow to 0
// for such cells while `log_measure(i)` stays finite.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "vexp/csv_io.hpp"
#include "vexp/errors.hpp"
#include "vexp/numeric.hpp"

namespace vexp {

enum class DomainKind { interval, torus };

class Domain;
using DomainPtr = std::shared_ptr<const Domain>;

/// Axis-parallel cell of a torus grid, [x0,x1] x [y0,y1]. For n = 1 the y
/// extent is [0,1].
struct CellBox {
  double x0, x1, y0, y1;
};

class Domain {
 public:
  /// Interval (0, e^{log_edges.back()}] split at the given edges. The first
  /// edge must be -inf (x = 0); the rest strictly increasing and finite.
  static DomainPtr from_log_edges(std::vector<double> log_edges) {
    if (log_edges.size() < 2) throw InvalidArgument("Domain: need at least one cell");
    if (log_edges.front() != kNegInf) throw InvalidArgument("Domain: first edge must be 0");
    for (std::size_t i = 1; i < log_edges.size(); ++i) {
      if (!std::isfinite(log_edges[i])) throw InvalidArgument("Domain: non-finite edge");
      if (!(log_edges[i] > log_edges[i - 1])) throw InvalidArgument("Domain: edges must increase");
    }
    auto d = std::shared_ptr<Domain>(new Domain);
    d->kind_ = DomainKind::interval;
    d->dim_ = 1;
    d->log_measures_.resize(log_edges.size() - 1);
    for (std::size_t i = 0; i + 1 < log_edges.size(); ++i) {
      d->log_measures_[i] = log_diff_exp(log_edges[i + 1], log_edges[i]);
      if (d->log_measures_[i] == kNegInf) throw InvalidArgument("Domain: empty cell");
    }
    d->log_edges_ = std::move(log_edges);
    d->finish();
    return d;
  }

  /// Interval (0, sum] whose consecutive cells carry the given measures
  /// exactly. Edges are the running log-sums.
  static DomainPtr from_log_measures(std::vector<double> log_measures) {
    if (log_measures.empty()) throw InvalidArgument("Domain: need at least one cell");
    std::vector<double> edges(log_measures.size() + 1);
    edges[0] = kNegInf;
    LogSumExp running;
    for (std::size_t i = 0; i < log_measures.size(); ++i) {
      if (!std::isfinite(log_measures[i])) throw InvalidArgument("Domain: cell measures must be positive and finite");
      running.add(log_measures[i]);
      edges[i + 1] = running.log_value();
    }
    auto d = std::shared_ptr<Domain>(new Domain);
    d->kind_ = DomainKind::interval;
    d->dim_ = 1;
    d->log_measures_ = std::move(log_measures);
    d->log_edges_ = std::move(edges);
    d->finish();
    return d;
  }

  /// (0, x0] with `cells` equal cells.
  static DomainPtr uniform(double x0, std::size_t cells) {
    if (!(x0 > 0.0) || !std::isfinite(x0)) throw InvalidArgument("Domain: interval requires x0 > 0");
    if (cells == 0) throw InvalidArgument("Domain: need at least one cell");
    std::vector<double> edges(cells + 1);
    edges[0] = kNegInf;
    for (std::size_t i = 1; i <= cells; ++i) {
      edges[i] = std::log(x0 * static_cast<double>(i) / static_cast<double>(cells));
    }
    return from_log_edges(std::move(edges));
  }

  /// (0, x0] with one cell (0, x_min] followed by cells geometric in x.
  static DomainPtr geometric(double x0, double x_min, std::size_t cells_per_decade) {
    if (!(x0 > 0.0) || !(x_min > 0.0) || !(x_min < x0)) throw InvalidArgument("Domain: need 0 < x_min < x0");
    if (cells_per_decade == 0) throw InvalidArgument("Domain: cells_per_decade must be positive");
    const double lo = std::log(x_min);
    const double hi = std::log(x0);
    const auto n = static_cast<std::size_t>(
        std::ceil((hi - lo) / std::log(10.0) * static_cast<double>(cells_per_decade)));
    std::vector<double> edges{kNegInf};
    edges.reserve(n + 2);
    for (std::size_t k = 0; k <= n; ++k) {
      edges.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n));
    }
    edges.back() = hi;
    return from_log_edges(std::move(edges));
  }

  /// (0, x0], x0 < 1, resolved near 0 on a grid geometric in ln(1/x): edges
  /// x_k = exp(-L_k) with L_k geometric from l_max down to ln(1/x0), plus the
  /// innermost cell (0, exp(-l_max)].
  static DomainPtr loglog(double x0, double l_max, std::size_t cells_per_decade) {
    if (!(x0 > 0.0 && x0 < 1.0)) throw InvalidArgument("Domain: log-log grid requires 0 < x0 < 1");
    const double l0 = -std::log(x0);
    if (!(l_max > l0)) throw InvalidArgument("Domain: l_max must exceed ln(1/x0)");
    if (cells_per_decade == 0) throw InvalidArgument("Domain: cells_per_decade must be positive");
    const double decades = std::log10(l_max / l0);
    const auto n = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(cells_per_decade)));
    std::vector<double> edges{kNegInf};
    edges.reserve(n + 2);
    const double ratio = std::log(l_max / l0);
    for (std::size_t k = 0; k <= n; ++k) {
      // k = 0 is the deepest edge.
      const double frac = 1.0 - static_cast<double>(k) / static_cast<double>(n);
      edges.push_back(-l0 * std::exp(ratio * frac));
    }
    edges[1] = -l_max;
    edges.back() = -l0;
    return from_log_edges(std::move(edges));
  }

  /// Uniform grid on (0,1)^dim with `side` cells per axis, row-major with the
  /// x index major: cell = ix * side + iy.
  static DomainPtr torus(std::size_t side, int dim) {
    if (dim != 1 && dim != 2) throw InvalidArgument("Domain: torus dimension must be 1 or 2");
    if (side == 0) throw InvalidArgument("Domain: torus needs at least one cell per axis");
    auto d = std::shared_ptr<Domain>(new Domain);
    d->kind_ = DomainKind::torus;
    d->dim_ = dim;
    d->side_ = side;
    const std::size_t n = dim == 1 ? side : side * side;
    const double log_cell = -static_cast<double>(dim) * std::log(static_cast<double>(side));
    d->log_measures_.assign(n, log_cell);
    if (dim == 1) {
      d->log_edges_.resize(side + 1);
      d->log_edges_[0] = kNegInf;
      for (std::size_t i = 1; i <= side; ++i) {
        d->log_edges_[i] = std::log(static_cast<double>(i) / static_cast<double>(side));
      }
    }
    d->finish();
    return d;
  }

  [[nodiscard]] DomainKind kind() const noexcept { return kind_; }
  [[nodiscard]] int dimension() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return log_measures_.size(); }
  [[nodiscard]] std::size_t side() const noexcept { return side_; }
  [[nodiscard]] bool is_one_dimensional() const noexcept { return dim_ == 1; }

  [[nodiscard]] double total_measure() const noexcept { return total_; }
  [[nodiscard]] double log_total_measure() const noexcept { return log_total_; }

  [[nodiscard]] double log_measure(std::size_t i) const { return log_measures_.at(i); }
  [[nodiscard]] double measure(std::size_t i) const { return measures_.at(i); }
  [[nodiscard]] std::span<const double> log_measures() const noexcept { return log_measures_; }
  [[nodiscard]] std::span<const double> measures() const noexcept { return measures_; }

  /// Cell edges of a one-dimensional domain, ln x; the first is -inf.
  [[nodiscard]] std::span<const double> log_edges() const {
    require_1d();
    return log_edges_;
  }
  [[nodiscard]] double log_lower(std::size_t i) const {
    require_1d();
    return log_edges_.at(i);
  }
  [[nodiscard]] double log_upper(std::size_t i) const {
    require_1d();
    return log_edges_.at(i + 1);
  }
  [[nodiscard]] double lower(std::size_t i) const { return std::exp(log_lower(i)); }
  [[nodiscard]] double upper(std::size_t i) const { return std::exp(log_upper(i)); }

  /// ln of the arithmetic midpoint of a one-dimensional cell.
  [[nodiscard]] double log_midpoint(std::size_t i) const {
    const double hi = log_upper(i);
    const double lo = log_lower(i);
    return hi + std::log(0.5 * (1.0 + std::exp(lo - hi)));
  }

  [[nodiscard]] CellBox cell_box(std::size_t i) const {
    if (kind_ != DomainKind::torus) {
      return {lower(i), upper(i), 0.0, 1.0};
    }
    const double h = 1.0 / static_cast<double>(side_);
    if (dim_ == 1) return {h * static_cast<double>(i), h * static_cast<double>(i + 1), 0.0, 1.0};
    const std::size_t ix = i / side_;
    const std::size_t iy = i % side_;
    return {h * static_cast<double>(ix), h * static_cast<double>(ix + 1), h * static_cast<double>(iy),
            h * static_cast<double>(iy + 1)};
  }

  /// Index of the cell containing ln x (one-dimensional domains). Points on
  /// an edge belong to the cell on their left, matching (a, b] cells.
  [[nodiscard]] std::size_t locate_log(double log_x) const {
    require_1d();
    if (log_x > log_edges_.back()) throw InvalidArgument("Domain: point outside the domain");
    const auto it = std::lower_bound(log_edges_.begin() + 1, log_edges_.end(), log_x);
    return static_cast<std::size_t>(it - (log_edges_.begin() + 1));
  }

  /// Same kind, same cell count and matching cell measures.
  [[nodiscard]] bool same_cells(const Domain& other, double rel_tol = 1e-9) const {
    if (this == &other) return true;
    if (kind_ != other.kind_ || dim_ != other.dim_ || size() != other.size() || side_ != other.side_) {
      return false;
    }
    for (std::size_t i = 0; i < size(); ++i) {
      if (std::abs(log_measures_[i] - other.log_measures_[i]) > rel_tol) return false;
    }
    return true;
  }

 private:
  Domain() = default;

  void require_1d() const {
    if (dim_ != 1) throw InvalidArgument("Domain: operation requires a one-dimensional domain");
  }

  void finish() {
    measures_.resize(log_measures_.size());
    LogSumExp total;
    for (std::size_t i = 0; i < log_measures_.size(); ++i) {
      measures_[i] = std::exp(log_measures_[i]);
      total.add(log_measures_[i]);
    }
    log_total_ = total.log_value();
    total_ = std::exp(log_total_);
    if (!(total_ > 0.0) || !std::isfinite(total_)) throw InvalidArgument("Domain: total measure must be positive and finite");
  }

  DomainKind kind_ = DomainKind::interval;
  int dim_ = 1;
  std::size_t side_ = 0;
  std::vector<double> log_edges_;
  std::vector<double> log_measures_;
  std::vector<double> measures_;
  double total_ = 0.0;
  double log_total_ = kNegInf;
};

/// A function constant on each cell of a domain. Values must be finite.
class SampledFunction {
 public:
  SampledFunction(DomainPtr domain, std::vector<double> values) : domain_(std::move(domain)), values_(std::move(values)) {
    if (!domain_) throw InvalidArgument("SampledFunction: null domain");
    if (values_.size() != domain_->size()) throw InvalidArgument("SampledFunction: one value per cell required");
    for (double v : values_) {
      if (!std::isfinite(v)) throw InvalidArgument("SampledFunction: values must be finite");
    }
  }

  /// Samples f at cell midpoints: f(x) on one-dimensional domains, f(x, y)
  /// on the two-dimensional grid.
  template <class F>
  static SampledFunction sample(DomainPtr domain, F&& f) {
    std::vector<double> v(domain->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if constexpr (std::is_invocable_r_v<double, F, double, double>) {
        const CellBox b = domain->cell_box(i);
        v[i] = f(0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1));
      } else {
        v[i] = f(std::exp(domain->log_midpoint(i)));
      }
    }
    return {std::move(domain), std::move(v)};
  }

  /// Samples g(ln x) at the log of each cell midpoint (one-dimensional).
  template <class G>
  static SampledFunction sample_log(DomainPtr domain, G&& g) {
    std::vector<double> v(domain->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(domain->log_midpoint(i));
    return {std::move(domain), std::move(v)};
  }

  static SampledFunction constant(DomainPtr domain, double c) {
    const std::size_t n = domain->size();
    return {std::move(domain), std::vector<double>(n, c)};
  }

  [[nodiscard]] const Domain& domain() const noexcept { return *domain_; }
  [[nodiscard]] const DomainPtr& domain_ptr() const noexcept { return domain_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double value(std::size_t i) const { return values_.at(i); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double measure(std::size_t i) const { return domain_->measure(i); }
  [[nodiscard]] double log_measure(std::size_t i) const { return domain_->log_measure(i); }

  [[nodiscard]] double sup_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  [[nodiscard]] bool is_zero() const noexcept { return sup_abs() == 0.0; }

  [[nodiscard]] SampledFunction abs() const {
    std::vector<double> v(values_);
    for (double& x : v) x = std::abs(x);
    return {domain_, std::move(v)};
  }

  [[nodiscard]] SampledFunction scaled(double c) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= c;
    return {domain_, std::move(v)};
  }

  template <class Op>
  [[nodiscard]] SampledFunction map(Op&& op) const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(values_[i]);
    return {domain_, std::move(v)};
  }

 private:
  DomainPtr domain_;
  std::vector<double> values_;
};

/// λ ↦ |{|f| > λ}| as a right-continuous step function. Level-set measures
/// are summed in a canonical order of (|value|, measure) pairs, so
/// equimeasurable sampled functions yield bit-identical distributions.
class DistributionFunction {
 public:
  explicit DistributionFunction(const SampledFunction& f) : total_(f.domain().total_measure()) {
    std::vector<std::pair<double, double>> cells(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) cells[i] = {std::abs(f.value(i)), f.measure(i)};
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second > b.second;
    });
    CompensatedSum running;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      running.add(cells[i].second);
      const bool last_of_level = i + 1 == cells.size() || cells[i + 1].first != cells[i].first;
      if (last_of_level) {
        levels_.push_back(cells[i].first);
        cumulative_.push_back(running.value());
      }
    }
  }

  /// d_f(λ) for λ >= 0.
  [[nodiscard]] double operator()(double lambda) const {
    if (lambda < 0.0 || std::isnan(lambda)) throw InvalidArgument("distribution: level must be >= 0");
    // levels_ is strictly decreasing; count levels strictly above lambda.
    const auto it = std::partition_point(levels_.begin(), levels_.end(), [&](double v) { return v > lambda; });
    const auto k = static_cast<std::size_t>(it - levels_.begin());
    return k == 0 ? 0.0 : cumulative_[k - 1];
  }

  /// Distinct values of |f| in decreasing order.
  [[nodiscard]] std::span<const double> breakpoints() const noexcept { return levels_; }
  [[nodiscard]] double total_measure() const noexcept { return total_; }

 private:
  std::vector<double> levels_;
  std::vector<double> cumulative_;
  double total_;
};

/// d_f(λ) = |{t : |f(t)| > λ}|.
inline double distribution(const SampledFunction& f, double lambda) {
  if (lambda < 0.0 || std::isnan(lambda)) throw InvalidArgument("distribution: level must be >= 0");
  return DistributionFunction(f)(lambda);
}

/// f* on (0, |Ω|]: cells reordered by nonincreasing |value|, ties by
/// nonincreasing measure, so the result does not depend on cell order; each
/// output cell keeps its input measure.
inline SampledFunction decreasing_rearrangement(const SampledFunction& f) {
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double va = std::abs(f.value(a));
    const double vb = std::abs(f.value(b));
    if (va != vb) return va > vb;
    return f.log_measure(a) > f.log_measure(b);
  });
  std::vector<double> log_measures(f.size());
  std::vector<double> values(f.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    log_measures[k] = f.log_measure(order[k]);
    values[k] = std::abs(f.value(order[k]));
  }
  return {Domain::from_log_measures(std::move(log_measures)), std::move(values)};
}

/// Whether sup_λ |d_f(λ) - d_g(λ)| <= tol over the merged breakpoints.
inline bool equimeasurable(const SampledFunction& f, const SampledFunction& g, double tol) {
  const double mf = f.domain().total_measure();
  const double mg = g.domain().total_measure();
  if (std::abs(mf - mg) > 1e-12 * std::max(mf, mg)) {
    throw InvalidArgument("equimeasurable: total measures differ");
  }
  const DistributionFunction df(f);
  const DistributionFunction dg(g);
  double worst = std::abs(df(0.0) - dg(0.0));
  for (const auto* d : {&df, &dg}) {
    for (double level : d->breakpoints()) worst = std::max(worst, std::abs(df(level) - dg(level)));
  }
  return worst <= tol;
}

/// Σ measure_i · value_i. Terms are summed in a canonical order, so any
/// permutation of the same (measure, value) cells gives the same result.
inline double integrate(const SampledFunction& f) {
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = f.value(i);
    terms[i] = v == 0.0 ? 0.0 : std::copysign(std::exp(f.log_measure(i) + std::log(std::abs(v))), v);
  }
  std::sort(terms.begin(), terms.end(), [](double a, double b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });
  CompensatedSum s;
  for (double t : terms) s.add(t);
  return s.value();
}

// --- CSV: rows `cell_index,measure,value` --------------------------------

inline void write_sampled_csv(std::ostream& out, const SampledFunction& f) {
  out << "cell_index,measure,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << i << ',' << csv::format_log_scalar(f.log_measure(i)) << ',' << csv::format_double(f.value(i)) << '\n';
  }
}

/// Reads an interval-domain function; cells are laid out in cell_index order.
inline SampledFunction read_sampled_csv(std::istream& in) {
  const csv::Table t = csv::read_table(in);
  const std::size_t ci = t.column("cell_index");
  const std::size_t cm = t.column("measure");
  const std::size_t cv = t.column("value");
  const std::size_t n = t.rows.size();
  if (n == 0) throw InvalidArgument("CSV: no cells");
  std::vector<double> log_measures(n);
  std::vector<double> values(n);
  std::vector<bool> seen(n, false);
  for (const auto& row : t.rows) {
    const long long idx = std::stoll(row[ci]);
    if (idx < 0 || static_cast<std::size_t>(idx) >= n || seen[static_cast<std::size_t>(idx)]) {
      throw InvalidArgument("CSV: cell_index values must be a permutation of 0..n-1");
    }
    const auto k = static_cast<std::size_t>(idx);
    seen[k] = true;
    log_measures[k] = csv::parse_log_scalar(row[cm]);
    values[k] = std::stod(row[cv]);
  }
  return {Domain::from_log_measures(std::move(log_measures)), std::move(values)};
}

/// Reinterprets a function read from CSV as living on the side x side grid of
/// (0,1)^2 (row-major, x index major). Cell measures must equal 1/side^2.
inline SampledFunction as_torus_grid(const SampledFunction& f, std::size_t side) {
  if (side * side != f.size()) throw InvalidArgument("grid: cell count is not side^2");
  auto grid = Domain::torus(side, 2);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::abs(f.log_measure(i) - grid->log_measure(i)) > 1e-9) {
      throw InvalidArgument("grid: cell measures must equal 1/side^2");
    }
  }
  return {grid, std::vector<double>(f.values().begin(), f.values().end())};
}

}  // namespace vexp
