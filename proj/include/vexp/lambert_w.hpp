#pragma once

// Real branches of the Lambert W function, w e^w = x, and their leading
// asymptotic expansions.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vexp/errors.hpp"

namespace vexp {

enum class Branch { principal, secondary };

struct BranchValue {
  double x = 0.0;
  double w = 0.0;
  Branch branch = Branch::principal;
  double residual = 0.0;  // |w e^w - x|
};

namespace detail {

inline constexpr double kInvE = 1.0 / std::numbers::e;
inline constexpr double kBranchClamp = 1e-15;    // tolerated distance below -1/e
inline constexpr double kBranchSnap = 1e-12;     // |x + 1/e| below this gives -1

struct Eval3 {
  double f, d1, d2;
};

// Root of an increasing f on [lo, hi] with f(lo) <= 0 <= f(hi). A few
// bisection steps locate the root, then Halley steps that stay inside the
// shrinking bracket; any step leaving it is replaced by bisection.
template <class F>
double bracketed_halley(const F& f, double lo, double hi) {
  for (int i = 0; i < 12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid).f < 0.0 ? lo : hi) = mid;
  }
  double w = 0.5 * (lo + hi);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < 200; ++it) {
    const Eval3 e = f(w);
    if (e.f == 0.0) return w;
    (e.f < 0.0 ? lo : hi) = w;
    double next = w;
    if (e.d1 != 0.0 && std::isfinite(e.d1)) {
      const double newton = e.f / e.d1;
      const double denom = 1.0 - 0.5 * newton * e.d2 / e.d1;
      next = w - (denom > 0.1 ? newton / denom : newton);
    }
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double scale = std::max(1.0, std::abs(next));
    if (std::abs(next - w) <= 2.0 * eps * scale || hi - lo <= 2.0 * eps * scale) return next;
    w = next;
  }
  return w;
}

inline void require_terms(int terms) {
  if (terms < 1 || terms > 5) throw InvalidArgument("Lambert W expansion: terms must be in 1..5");
}

}  // namespace detail

/// W_p(x), the branch with w >= -1, for x >= -1/e.
inline double w_principal(double x) {
  using detail::Eval3;
  if (std::isnan(x) || x < -detail::kInvE - detail::kBranchClamp) {
    throw DomainError("w_principal: x must be >= -1/e");
  }
  if (std::abs(x + detail::kInvE) <= detail::kBranchSnap) return -1.0;
  if (x == 0.0) return 0.0;
  if (x == std::numeric_limits<double>::infinity()) return x;
  if (x <= std::numbers::e) {
    auto f = [x](double w) {
      const double ew = std::exp(w);
      return Eval3{w * ew - x, ew * (w + 1.0), ew * (w + 2.0)};
    };
    return detail::bracketed_halley(f, -1.0, 1.0);
  }
  // w + ln w = ln x keeps the equation well scaled for huge x.
  const double lx = std::log(x);
  auto g = [lx](double w) { return Eval3{w + std::log(w) - lx, 1.0 + 1.0 / w, -1.0 / (w * w)}; };
  return detail::bracketed_halley(g, std::max(1.0, lx - std::log(lx)), lx);
}

/// W_m(x), the branch with w <= -1, for -1/e <= x < 0.
inline double w_secondary(double x) {
  using detail::Eval3;
  if (std::isnan(x) || x >= 0.0 || x < -detail::kInvE - detail::kBranchClamp) {
    throw DomainError("w_secondary: x must lie in [-1/e, 0)");
  }
  if (std::abs(x + detail::kInvE) <= detail::kBranchSnap) return -1.0;
  // With v = -w: v - ln v = ln(-1/x) = mu. Solved as w + ln(-w) - ln(-x) = 0,
  // increasing in w on (-inf, -1].
  const double lnx = std::log(-x);
  const double mu = -lnx;
  auto g = [lnx](double w) { return Eval3{w + std::log(-w) - lnx, 1.0 + 1.0 / w, -1.0 / (w * w)}; };
  return detail::bracketed_halley(g, -2.0 * mu - 2.0, -1.0);
}

inline BranchValue lambert_w(Branch branch, double x) {
  BranchValue r;
  r.x = x;
  r.branch = branch;
  r.w = branch == Branch::principal ? w_principal(x) : w_secondary(x);
  r.residual = std::abs(r.w * std::exp(r.w) - x);
  return r;
}

/// Partial sum of the large-x expansion of W_p with xi = ln x:
/// xi - ln xi + ln xi/xi + (ln xi)^2/(2 xi^2) - ln xi/xi^2.
inline double w_principal_asymptotic(double x, int terms = 5) {
  detail::require_terms(terms);
  if (!(x > 0.0)) throw DomainError("w_principal_asymptotic: requires ln x > 1");
  const double xi = std::log(x);
  if (!(xi > 1.0)) throw DomainError("w_principal_asymptotic: requires ln x > 1");
  const double l = std::log(xi);
  const std::array<double, 5> t = {xi, -l, l / xi, l * l / (2.0 * xi * xi), -l / (xi * xi)};
  double s = 0.0;
  for (int k = 0; k < terms; ++k) s += t[static_cast<std::size_t>(k)];
  return s;
}

/// Partial sum of the x -> 0- expansion of W_m with mu = ln(-1/x):
/// -mu - ln mu - ln mu/mu + (ln mu)^2/(2 mu^2) - ln mu/mu^2.
inline double w_secondary_asymptotic(double x, int terms = 5) {
  detail::require_terms(terms);
  if (!(x < 0.0 && x > -detail::kInvE)) throw DomainError("w_secondary_asymptotic: x must lie in (-1/e, 0)");
  const double mu = -std::log(-x);
  if (!(mu > 1.0)) throw DomainError("w_secondary_asymptotic: requires ln(-1/x) > 1");
  const double l = std::log(mu);
  const std::array<double, 5> t = {-mu, -l, -l / mu, l * l / (2.0 * mu * mu), -l / (mu * mu)};
  double s = 0.0;
  for (int k = 0; k < terms; ++k) s += t[static_cast<std::size_t>(k)];
  return s;
}

/// Leading remainder (ln z)^3 / z^3 of either expansion, z = xi or mu.
inline double lambert_expansion_remainder(double z) {
  const double l = std::log(z);
  return l * l * l / (z * z * z);
}

}  // namespace vexp
