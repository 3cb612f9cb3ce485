#pragma once

// Discrete maximal operators: the uncentered Hardy-Littlewood operator on
// one-dimensional partitions (exact, via convex hulls of the prefix-sum
// polygon), discrete disks on the n x n grid of (0,1)^2, and the strong
// maximal operator over all grid rectangles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vexp/errors.hpp"
#include "vexp/exponent.hpp"
#include "vexp/grid_function.hpp"
#include "vexp/norms.hpp"
#include "vexp/parallel.hpp"

namespace vexp {

inline constexpr std::size_t kStrongMaximalCap = 256;
inline constexpr std::size_t kDiskMaximalCap = 64;

namespace detail {

struct Pt {
  double x, s;
};

inline double slope(const Pt& a, const Pt& b) { return (b.s - a.s) / (b.x - a.x); }

// Max of (S_b - S_a)/(X_b - X_a) over a <= i < b for every i, where
// P_k = (X_k, S_k), k = 0..n, has strictly increasing X. The answer for i is
// the largest slope between the lower hull of P_0..P_i and the upper hull of
// P_{i+1}..P_n.
inline std::vector<double> max_slopes_across(std::span<const double> xs, std::span<const double> ss) {
  const std::size_t n = xs.size() - 1;
  std::vector<Pt> p(n + 1);
  for (std::size_t k = 0; k <= n; ++k) p[k] = {xs[k], ss[k]};

  // Upper hull of the suffix, built right to left. hull[0] = P_n; the last
  // entry is the leftmost point. Each insertion overwrites one slot and
  // truncates; the undo log restores it.
  struct Undo {
    std::size_t pos;
    Pt old;
    std::size_t old_size;
  };
  std::vector<Pt> hull(n + 1);
  std::size_t size = 0;
  std::vector<Undo> log;
  log.reserve(n);
  auto push_left = [&](const Pt& q) {
    // Keep hull[j] iff j == 0 or slope(q, hull[j]) > slope(hull[j], hull[j-1]).
    std::size_t lo = 0;  // known kept
    std::size_t hi = size;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (slope(q, hull[mid]) > slope(hull[mid], hull[mid - 1])) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const std::size_t pos = size == 0 ? 0 : lo + 1;
    log.push_back({pos, hull[pos], size});
    hull[pos] = q;
    size = pos + 1;
  };
  for (std::size_t k = n + 1; k-- > 1;) push_left(p[k]);  // suffix P_1..P_n

  std::vector<Pt> lower;  // lower hull of the prefix, left to right
  lower.reserve(n + 1);
  std::vector<double> out(n);

  // Largest slope from a point of `lower` to b (b right of all of them).
  auto tangent = [&](const Pt& b) {
    std::size_t lo = 0;
    std::size_t hi = lower.size();
    // Q(j): slope(lower[j-1], lower[j]) < slope(lower[j], b); true on a prefix.
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (slope(lower[mid - 1], lower[mid]) < slope(lower[mid], b)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return slope(lower[lo], b);
  };

  for (std::size_t i = 0; i < n; ++i) {
    // Prefix hull gains P_i.
    while (lower.size() >= 2 && slope(lower[lower.size() - 2], lower.back()) >= slope(lower.back(), p[i])) {
      lower.pop_back();
    }
    lower.push_back(p[i]);
    // Suffix hull holds P_{i+1}..P_n: the state right after P_{i+1} was added.
    // Walk the hull left to right: index size-1 is the leftmost point.
    // g increases along an edge iff the edge slope exceeds g at its left end.
    std::size_t lo = 0;         // position along the hull from the left
    std::size_t hi = size - 1;  // argmax lies in [lo, hi]
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const Pt& b = hull[size - 1 - mid];
      const Pt& b_next = hull[size - 2 - mid];
      if (slope(b, b_next) > tangent(b)) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    out[i] = tangent(hull[size - 1 - lo]);
    // Remove P_{i+1} from the suffix hull.
    const Undo u = log.back();
    log.pop_back();
    hull[u.pos] = u.old;
    size = u.old_size;
  }
  return out;
}

}  // namespace detail

/// Uncentered maximal function on a one-dimensional partition: for each cell,
/// the largest mean of |f| over runs of consecutive cells containing it.
inline SampledFunction hl_maximal_1d(const SampledFunction& f) {
  const Domain& d = f.domain();
  if (d.dimension() != 1) throw InvalidArgument("hl_maximal_1d: domain is not one-dimensional");
  const std::size_t n = f.size();
  std::vector<double> xs(n + 1, 0.0);
  std::vector<double> ss(n + 1, 0.0);
  CompensatedSum cx;
  CompensatedSum cs;
  for (std::size_t k = 0; k < n; ++k) {
    const double m = d.measure(k);
    if (!(m > 0.0)) throw InvalidArgument("hl_maximal_1d: cell measure underflows to 0");
    cx.add(m);
    cs.add(m * std::abs(f.value(k)));
    xs[k + 1] = cx.value();
    ss[k + 1] = cs.value();
  }
  auto out = detail::max_slopes_across(xs, ss);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::max(out[k], std::abs(f.value(k)));
  return {f.domain_ptr(), std::move(out)};
}

/// Summed-area table of |f| on the side x side grid.
class PrefixSums2D {
 public:
  explicit PrefixSums2D(const SampledFunction& f) : n_(f.domain().side()) {
    if (f.domain().dimension() != 2) throw InvalidArgument("PrefixSums2D: domain is not two-dimensional");
    if (n_ < 2) throw InvalidArgument("PrefixSums2D: grid needs n >= 2");
    t_.assign((n_ + 1) * (n_ + 1), 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        row += std::abs(f.value(i * n_ + j));
        at(i + 1, j + 1) = at(i, j + 1) + row;
      }
    }
  }

  /// Σ |f| over cells [i0, i1) x [j0, j1).
  [[nodiscard]] double sum(std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) const {
    return get(i1, j1) - get(i0, j1) - get(i1, j0) + get(i0, j0);
  }
  [[nodiscard]] double mean(std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) const {
    return sum(i0, i1, j0, j1) / static_cast<double>((i1 - i0) * (j1 - j0));
  }
  [[nodiscard]] std::size_t side() const noexcept { return n_; }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  [[nodiscard]] double get(std::size_t i, std::size_t j) const { return t_[i * (n_ + 1) + j]; }
  std::size_t n_;
  std::vector<double> t_;
};

/// Maximal function over discrete disks on the grid of (0,1)^2: disks are
/// the cells whose centers lie within k h of a cell center, k = 0, 1, ...;
/// the mean divides the sum over the disk ∩ Ω by the full lattice count.
inline SampledFunction hl_maximal_2d(const SampledFunction& f) {
  const Domain& d = f.domain();
  if (d.dimension() != 2) throw InvalidArgument("hl_maximal_2d: domain is not two-dimensional");
  const std::size_t n = d.side();
  if (n > kDiskMaximalCap) throw ResourceError("hl_maximal_2d: grid side exceeds the cap of 64");
  const auto ni = static_cast<long>(n);
  const long kmax = static_cast<long>(std::ceil(std::sqrt(2.0) * static_cast<double>(n)));
  // Lattice count of each disk, and half-widths per row offset.
  std::vector<double> count(static_cast<std::size_t>(kmax) + 1);
  std::vector<std::vector<long>> half(static_cast<std::size_t>(kmax) + 1);
  for (long k = 0; k <= kmax; ++k) {
    long c = 0;
    auto& h = half[static_cast<std::size_t>(k)];
    h.resize(static_cast<std::size_t>(k) + 1);
    for (long dy = 0; dy <= k; ++dy) {
      const auto w = static_cast<long>(std::floor(std::sqrt(static_cast<double>(k * k - dy * dy)) + 1e-9));
      h[static_cast<std::size_t>(dy)] = w;
      c += (dy == 0 ? 1 : 2) * (2 * w + 1);
    }
    count[static_cast<std::size_t>(k)] = static_cast<double>(c);
  }
  // Row prefix sums of |f| along y for each x index.
  std::vector<double> rp(n * (n + 1), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rp[i * (n + 1) + j + 1] = rp[i * (n + 1) + j] + std::abs(f.value(i * n + j));
  }
  auto row_sum = [&](long i, long j0, long j1) {  // cells j0..j1 inclusive, clipped
    if (i < 0 || i >= ni) return 0.0;
    j0 = std::max(j0, 0L);
    j1 = std::min(j1, ni - 1);
    if (j1 < j0) return 0.0;
    const auto base = static_cast<std::size_t>(i) * (n + 1);
    return rp[base + static_cast<std::size_t>(j1) + 1] - rp[base + static_cast<std::size_t>(j0)];
  };
  std::vector<double> out(n * n);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::abs(f.value(k));
  std::vector<double> suffix(static_cast<std::size_t>(kmax) + 2);
  for (long ci = 0; ci < ni; ++ci) {
    for (long cj = 0; cj < ni; ++cj) {
      suffix[static_cast<std::size_t>(kmax) + 1] = 0.0;
      for (long k = kmax; k >= 0; --k) {
        // Disk sum: rows ci - dx over the half-width at that offset.
        double s = 0.0;
        const auto& h = half[static_cast<std::size_t>(k)];
        for (long dx = -k; dx <= k; ++dx) {
          const long w = h[static_cast<std::size_t>(std::abs(dx))];
          s += row_sum(ci + dx, cj - w, cj + w);
        }
        const double mean = s / count[static_cast<std::size_t>(k)];
        suffix[static_cast<std::size_t>(k)] = std::max(mean, suffix[static_cast<std::size_t>(k) + 1]);
      }
      for (long i = 0; i < ni; ++i) {
        for (long j = 0; j < ni; ++j) {
          const double dist = std::sqrt(static_cast<double>((i - ci) * (i - ci) + (j - cj) * (j - cj)));
          const auto k = static_cast<std::size_t>(std::ceil(dist - 1e-9));
          auto& o = out[static_cast<std::size_t>(i * ni + j)];
          o = std::max(o, suffix[k]);
        }
      }
    }
  }
  return {f.domain_ptr(), std::move(out)};
}

/// Hardy-Littlewood maximal function: runs of cells in one dimension, discrete
/// disks on the two-dimensional grid.
inline SampledFunction hl_maximal(const SampledFunction& f) {
  return f.domain().dimension() == 1 ? hl_maximal_1d(f) : hl_maximal_2d(f);
}

/// Strong maximal function over all grid rectangles containing each cell.
/// For every x-run [i0, i1) the column means form a one-dimensional profile
/// whose exact maximal function gives the best y-run.
inline SampledFunction strong_maximal(const SampledFunction& f, unsigned threads = default_thread_count(),
                                      std::size_t cap = kStrongMaximalCap) {
  const Domain& d = f.domain();
  if (d.dimension() != 2) throw InvalidArgument("strong_maximal: domain is not two-dimensional");
  const std::size_t n = d.side();
  if (n > cap) throw ResourceError("strong_maximal: grid side " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));
  if (n < 2) throw InvalidArgument("strong_maximal: grid needs n >= 2");
  // col[i][j] = Σ_{i' < i} |f(i', j)|
  std::vector<double> col((n + 1) * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) col[(i + 1) * n + j] = col[i * n + j] + std::abs(f.value(i * n + j));
  }
  std::vector<double> xs(n + 1);
  for (std::size_t k = 0; k <= n; ++k) xs[k] = static_cast<double>(k);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::vector<double>> partial(workers, std::vector<double>(n * n, 0.0));
  parallel_chunks(workers, workers, [&](unsigned, std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      auto& out = partial[w];
      std::vector<double> ss(n + 1);
      std::vector<double> running(n);
      for (std::size_t i0 = w; i0 < n; i0 += workers) {
        std::fill(running.begin(), running.end(), 0.0);
        for (std::size_t i1 = n; i1 > i0; --i1) {
          const double width = static_cast<double>(i1 - i0);
          ss[0] = 0.0;
          for (std::size_t j = 0; j < n; ++j) ss[j + 1] = ss[j] + (col[i1 * n + j] - col[i0 * n + j]) / width;
          const auto m = detail::max_slopes_across(xs, ss);
          for (std::size_t j = 0; j < n; ++j) {
            running[j] = std::max(running[j], m[j]);
            double& o = out[(i1 - 1) * n + j];
            o = std::max(o, running[j]);
          }
        }
      }
    }
  });
  // For fixed i0, `running` after step i1 is the max over runs [i0, i1'),
  // i1' >= i1: exactly the runs from i0 that contain ix = i1 - 1.
  std::vector<double> out(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    double v = std::abs(f.value(k));
    for (const auto& pw : partial) v = std::max(v, pw[k]);
    out[k] = v;
  }
  return {f.domain_ptr(), std::move(out)};
}

/// A region B of the domain: cells whose centers lie in [x_lo, x_hi] x [y_lo, y_hi].
struct SubDomain {
  double x_lo = -kInf;
  double x_hi = kInf;
  double y_lo = -kInf;
  double y_hi = kInf;

  [[nodiscard]] bool contains(const CellBox& b, bool planar) const {
    const double cx = 0.5 * (b.x0 + b.x1);
    const double cy = 0.5 * (b.y0 + b.y1);
    return cx >= x_lo && cx <= x_hi && (!planar || (cy >= y_lo && cy <= y_hi));
  }
};

/// ‖Mf‖_{L^1(B)} / ‖f‖_{p(.)}.
inline double wiener_ratio(const SampledFunction& f, const ExponentFunction& p, const SubDomain& b = {}) {
  const double den = luxemburg_norm(f, p).value;
  if (!(den > 0.0)) throw InvalidArgument("wiener_ratio: ‖f‖ must be > 0");
  const SampledFunction mf = hl_maximal(f);
  const Domain& d = f.domain();
  const bool planar = d.dimension() == 2;
  CompensatedSum s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (b.contains(d.cell_box(i), planar)) s.add(mf.value(i) * d.measure(i));
  }
  return s.value() / den;
}

/// For each scale, the largest mean of f over grid rectangles containing the
/// cell (ix, iy) whose diameter is at most the scale.
inline std::vector<double> upper_derivative_estimate(const SampledFunction& f, std::size_t ix, std::size_t iy,
                                                     std::span<const double> scales) {
  const PrefixSums2D ps(f);
  const std::size_t n = ps.side();
  if (ix >= n || iy >= n) throw InvalidArgument("upper_derivative_estimate: cell outside the grid");
  const double h = 1.0 / static_cast<double>(n);
  // Means of f itself, not |f|.
  std::vector<double> t((n + 1) * (n + 1), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += f.value(i * n + j);
      t[(i + 1) * (n + 1) + j + 1] = t[i * (n + 1) + j + 1] + row;
    }
  }
  auto mean = [&](std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) {
    const double s = t[i1 * (n + 1) + j1] - t[i0 * (n + 1) + j1] - t[i1 * (n + 1) + j0] + t[i0 * (n + 1) + j0];
    return s / static_cast<double>((i1 - i0) * (j1 - j0));
  };
  std::vector<double> out;
  for (std::size_t s = 0; s < scales.size(); ++s) {
    if (s > 0 && !(scales[s] < scales[s - 1])) throw InvalidArgument("upper_derivative_estimate: scales must decrease");
    const double lim = scales[s] / h;  // diameter in cell units
    if (lim * lim < 2.0 * (1.0 - 1e-12)) throw InvalidArgument("upper_derivative_estimate: scale below the cell diameter");
    double best = -kInf;
    const auto wmax = std::min(n, static_cast<std::size_t>(std::floor(lim)));
    for (std::size_t w = 1; w <= wmax; ++w) {
      const double rem = lim * lim - static_cast<double>(w * w);
      if (rem < 1.0 - 1e-12) break;
      const auto hmax = std::min(n, static_cast<std::size_t>(std::floor(std::sqrt(rem) + 1e-12)));
      for (std::size_t i0 = ix + 1 >= w ? ix + 1 - w : 0; i0 <= ix && i0 + w <= n; ++i0) {
        for (std::size_t ht = 1; ht <= hmax; ++ht) {
          for (std::size_t j0 = iy + 1 >= ht ? iy + 1 - ht : 0; j0 <= iy && j0 + ht <= n; ++j0) {
            best = std::max(best, mean(i0, i0 + w, j0, j0 + ht));
          }
        }
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace vexp
