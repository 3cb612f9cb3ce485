#pragma once

// Small numerical kernels shared by the toolkit: compensated summation,
// log-space accumulation and adaptive Gauss-Kronrod quadrature of exp(phi).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "vexp/errors.hpp"

namespace vexp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Neumaier compensated sum. Once the running sum leaves the finite range it
/// stays there; the compensation term is dropped.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    if (!std::isfinite(sum_)) {
      sum_ += x;
      return;
    }
    const double t = sum_ + x;
    if (!std::isfinite(t)) {
      sum_ = t;
      comp_ = 0.0;
      return;
    }
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  void scale(double factor) noexcept {
    sum_ *= factor;
    comp_ *= factor;
  }

  [[nodiscard]] double value() const noexcept {
    return std::isfinite(sum_) ? sum_ + comp_ : sum_;
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// ln(e^a + e^b).
inline double log_add_exp(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

/// ln(e^hi - e^lo) for hi >= lo; -inf when they coincide.
inline double log_diff_exp(double hi, double lo) {
  if (lo == kNegInf) return hi;
  if (lo > hi) throw InvalidArgument("log_diff_exp: lo > hi");
  if (lo == hi) return kNegInf;
  const double d = lo - hi;
  // Two branches keep full relative accuracy for both near and far operands.
  return d > -std::numbers::ln2 ? hi + std::log(-std::expm1(d)) : hi + std::log1p(-std::exp(d));
}

/// Streaming ln(sum_i e^{x_i}) with compensated summation of the scaled terms.
class LogSumExp {
 public:
  void add(double log_term) noexcept {
    if (log_term == kNegInf || std::isnan(log_term)) return;
    if (log_term == kInf) {
      max_ = kInf;
      return;
    }
    if (max_ == kInf) return;
    if (log_term <= max_) {
      scaled_.add(std::exp(log_term - max_));
    } else {
      if (max_ != kNegInf) scaled_.scale(std::exp(max_ - log_term));
      scaled_.add(1.0);
      max_ = log_term;
    }
  }

  [[nodiscard]] double log_value() const noexcept {
    if (max_ == kNegInf || max_ == kInf) return max_;
    return max_ + std::log(scaled_.value());
  }

  [[nodiscard]] double value() const noexcept { return std::exp(log_value()); }

 private:
  double max_ = kNegInf;
  CompensatedSum scaled_;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct KronrodLogEstimate {
  double log_kronrod;
  double log_error;  // ln |K - G|
};

template <class Phi>
KronrodLogEstimate kronrod_log(const Phi& phi, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::array<double, 15> vals{};
  double vmax = kNegInf;
  for (int k = 0; k < 7; ++k) {
    const double dx = half * kKronrodNodes[static_cast<std::size_t>(k)];
    vals[static_cast<std::size_t>(2 * k)] = phi(mid - dx);
    vals[static_cast<std::size_t>(2 * k + 1)] = phi(mid + dx);
  }
  vals[14] = phi(mid);
  for (double v : vals) vmax = std::max(vmax, v);
  if (vmax == kNegInf) return {kNegInf, kNegInf};
  if (vmax == kInf || std::isnan(vmax)) return {kInf, kInf};
  double kron = 0.0;
  double gauss = 0.0;
  for (int k = 0; k < 7; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const double pair = std::exp(vals[2 * ku] - vmax) + std::exp(vals[2 * ku + 1] - vmax);
    kron += kKronrodWeights[ku] * pair;
    if (k % 2 == 1) gauss += kGaussWeights[ku / 2] * pair;
  }
  const double center = std::exp(vals[14] - vmax);
  kron += kKronrodWeights[7] * center;
  gauss += kGaussWeights[3] * center;
  const double scale = std::log(half) + vmax;
  const double err = std::abs(kron - gauss);
  return {std::log(kron) + scale, err > 0.0 ? std::log(err) + scale : kNegInf};
}

}  // namespace detail

/// ln ∫_a^b exp(phi(u)) du for finite a < b by adaptive G7/K15 bisection.
/// The integrand is handled in log form, so values far outside the double
/// range are fine as long as phi itself is finite.
template <class Phi>
double log_integrate_exp(const Phi& phi, double a, double b, double rel_tol = 1e-10,
                         int max_intervals = 4000) {
  if (!(b > a)) return kNegInf;
  struct Piece {
    double a, b;
    detail::KronrodLogEstimate est;
  };
  // Max-heap on the error estimate.
  auto less_err = [](const Piece& x, const Piece& y) { return x.est.log_error < y.est.log_error; };
  std::vector<Piece> heap;
  heap.push_back({a, b, detail::kronrod_log(phi, a, b)});
  const double log_tol = std::log(rel_tol);
  auto totals = [&heap] {
    LogSumExp value;
    LogSumExp error;
    for (const auto& p : heap) {
      value.add(p.est.log_kronrod);
      error.add(p.est.log_error);
    }
    return std::pair{value.log_value(), error.log_value()};
  };
  // Totals are rescanned when the piece count has grown by 1/8 since the
  // last scan, keeping the work O(n log n).
  std::size_t next_scan = 0;
  for (int iter = 0; iter < max_intervals; ++iter) {
    if (heap.size() >= next_scan) {
      const auto [log_total, log_err] = totals();
      if (log_total == kNegInf || log_total == kInf || std::isnan(log_total)) return log_total;
      if (log_err <= log_total + log_tol) return log_total;
      next_scan = heap.size() + heap.size() / 8 + 1;
    }
    std::pop_heap(heap.begin(), heap.end(), less_err);
    const Piece w = heap.back();
    heap.pop_back();
    const double m = 0.5 * (w.a + w.b);
    if (!(m > w.a && m < w.b)) {
      heap.push_back(w);
      std::push_heap(heap.begin(), heap.end(), less_err);
      break;
    }
    heap.push_back({w.a, m, detail::kronrod_log(phi, w.a, m)});
    std::push_heap(heap.begin(), heap.end(), less_err);
    heap.push_back({m, w.b, detail::kronrod_log(phi, m, w.b)});
    std::push_heap(heap.begin(), heap.end(), less_err);
  }
  return totals().first;
}

/// Result of a log-space integral over a half-line.
struct LogIntegral {
  double log_value = kNegInf;
  bool overflow = false;
};

/// ln ∫_a^∞ exp(phi(u)) du, marching over geometrically growing blocks.
/// Reports overflow when the accumulated value leaves the double range or
/// the tail has not decayed by u_cap.
template <class Phi>
LogIntegral log_integrate_exp_to_infinity(const Phi& phi, double a, double rel_tol = 1e-10,
                                          double u_cap = 1e9) {
  LogSumExp total;
  double lo = a;
  double width = std::max(1.0, 0.25 * std::abs(a));
  constexpr double kOverflowLog = 709.0;
  for (int block = 0; block < 400; ++block) {
    const double hi = lo + width;
    const double part = log_integrate_exp(phi, lo, hi, rel_tol);
    total.add(part);
    const double log_total = total.log_value();
    if (log_total > kOverflowLog || std::isnan(log_total)) return {kInf, true};
    const bool decaying = phi(hi) < phi(lo);
    if (decaying && part != kInf && (part < log_total + std::log(rel_tol) * 1.5 || part == kNegInf)) {
      return {log_total, false};
    }
    if (hi > u_cap) return {decaying ? log_total : kInf, !decaying};
    lo = hi;
    width *= 2.0;
  }
  return {kInf, true};
}

}  // namespace vexp
