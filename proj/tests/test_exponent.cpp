#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "generators.hpp"

using namespace vexp;

namespace {

// Coarse grid keeps the constructions fast in unit tests.
const LogLogGrid kCoarse{400, 1e5};

// Oracle for the nonembedding exponent: bisection of 1 + α W(L/α)/L = 1 + λ
// in L, then m = e^{-L}.
double nonembed_log_m_oracle(double alpha, double lambda) {
  auto g = [alpha](double big_l) {
    // W via bisection on w e^w = z.
    const double z = big_l / alpha;
    double lo = 0.0, hi = std::max(1.0, std::log(z) + 1.0);
    for (int i = 0; i < 200; ++i) {
      const double m = 0.5 * (lo + hi);
      (m * std::exp(m) < z ? lo : hi) = m;
    }
    return alpha * 0.5 * (lo + hi) / big_l;
  };
  double lo = 1e-6, hi = 1e6;
  for (int i = 0; i < 300; ++i) {
    const double m = std::sqrt(lo * hi);
    (g(m) > lambda ? lo : hi) = m;
  }
  return -std::sqrt(lo * hi);
}

}  // namespace

TEST(LambdaFamily, ValuesAndPlateau) {
  const double r0 = 0.05;
  const double r = 1e-10;
  const double big_l = std::log(1e10);
  EXPECT_NEAR(lambda_exponent(r, 1.0, 0.5, r0), 1.0 + std::log(big_l) / big_l + 0.5 / big_l, 1e-15);
  EXPECT_EQ(lambda_exponent(0.5, 1.0, 0.0, r0), lambda_exponent(r0, 1.0, 0.0, r0));
  EXPECT_NEAR(lambda_exponent_log(-1e6, 2.0, 0.0, r0), 1.0 + 2.0 * std::log(1e6) / 1e6, 1e-15);
}

TEST(LambdaFamily, Preconditions) {
  EXPECT_THROW(lambda_exponent(0.01, 0.0, 0.0, 0.05), InvalidArgument);
  EXPECT_THROW(lambda_exponent(0.01, 1.0, 0.0, 0.1), InvalidArgument);  // r0 >= e^-e
  EXPECT_THROW(lambda_exponent(0.0, 1.0, 0.0, 0.05), DomainError);
  EXPECT_THROW(lambda_level_set_radius(0.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(lambda_level_set_radius(1.0, 1.0, 0.0), DomainError);  // -x/a <= -1/e
}

TEST(LambdaFamily, InverseFormulaProperty) {
  gen::Gen g(21);
  for (int t = 0; t < 200; ++t) {
    const double a = g.uniform(0.2, 3.0);
    const double b = g.uniform(-1.0, 1.0);
    const double x = a * std::exp(b / a) * g.uniform(1e-4, 1.0 / std::numbers::e - 1e-3);
    const double lr = lambda_level_set_log_radius(x, a, b);
    const double big_l = -lr;
    EXPECT_NEAR(a * std::log(big_l) / big_l + b / big_l, x, 1e-10 * x) << a << ' ' << b << ' ' << x;
  }
}

TEST(Examples, NonembeddingLevelSetsMatchOracle) {
  const auto p = nonembedding_example_exponent(1.0, 0.25, kCoarse);
  for (double l : {0.02, 0.05, 0.1, 0.3, 0.5}) {
    const double oracle = nonembed_log_m_oracle(1.0, l);
    EXPECT_NEAR(oracle, nonembedding_log_level_measure(1.0, l), 1e-8 * std::abs(oracle));
    // Right-edge sampling: measured set is within one cell of the truth.
    EXPECT_NEAR(p.log_level_measure(l), oracle, 0.02 * std::abs(oracle) + 0.02) << l;
  }
}

TEST(Examples, EmbeddingLevelSetsMatchClosedForm) {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const auto p = embedding_example_exponent(alpha, std::nullopt, kCoarse);
    for (double l : {0.05, 0.1, 0.2, 0.3}) {
      const double expect = embedding_log_level_measure(alpha, l);
      if (expect > std::log(p.domain().total_measure())) continue;
      EXPECT_NEAR(p.log_level_measure(l), expect, 0.02 * std::abs(expect) + 0.02) << alpha << ' ' << l;
    }
  }
}

TEST(Examples, ExponentIncreasingAndAboveOne) {
  const auto p = embedding_example_exponent(1.0, std::nullopt, kCoarse);
  for (std::size_t i = 1; i < p.size(); ++i) EXPECT_GE(p.value(i), p.value(i - 1));
  EXPECT_GT(p.p_minus(), 1.0);
}

TEST(Examples, Preconditions) {
  EXPECT_THROW(nonembedding_example_exponent(0.0), InvalidArgument);
  EXPECT_THROW(nonembedding_example_exponent(1.0, 1.5), InvalidArgument);
  EXPECT_THROW(embedding_example_exponent(1.0, 0.1), InvalidArgument);  // above e^{-e}
}

TEST(LevelSetPrescribed, ReproducesTarget) {
  const auto target = example_one_target(1.0, 0.5);
  const auto p = levelset_prescribed_exponent(target, std::nullopt, kCoarse);
  for (double l : {0.01, 0.05, 0.1, 0.2}) {
    const double expect = target.log_measure(l);
    EXPECT_NEAR(p.log_level_measure(l), expect, 0.01 * std::abs(expect) + 0.01) << l;
  }
}

TEST(LevelSetPrescribed, RejectsNonMonotoneTarget) {
  LevelSetTarget bad{[](double l) { return -std::abs(std::log(l / 0.01)); }, 0.3, "bad"};
  EXPECT_THROW(levelset_prescribed_exponent(bad, std::nullopt, kCoarse), InvalidArgument);
  EXPECT_THROW(levelset_prescribed_exponent(nonembedding_target(1.0), 0.9, kCoarse), InvalidArgument);
}

TEST(CompactSet, DistancesOneDimensional) {
  auto d = Domain::torus(10, 1);
  CompactSet k;
  k.points.push_back({0.55, 0.0});
  const auto dist = cell_distances(*d, k);
  EXPECT_EQ(dist[5], 0.0);
  EXPECT_NEAR(dist[7], 0.15, 1e-12);
  EXPECT_NEAR(dist[2], 0.25, 1e-12);
}

TEST(CompactSet, DistancesTwoDimensionalSegment) {
  auto d = Domain::torus(8, 2);
  CompactSet k;
  k.segments.push_back({{0.0, 0.0}, {1.0, 1.0}});
  const auto dist = cell_distances(*d, k);
  gen::Gen g(2);
  for (std::size_t i = 0; i < d->size(); ++i) {
    const auto b = d->cell_box(i);
    // Oracle: dense sampling of the box.
    double best = kInf;
    for (int s = 0; s <= 20; ++s)
      for (int t = 0; t <= 20; ++t) {
        const double x = b.x0 + (b.x1 - b.x0) * s / 20.0;
        const double y = b.y0 + (b.y1 - b.y0) * t / 20.0;
        best = std::min(best, std::abs(x - y) / std::sqrt(2.0));
      }
    EXPECT_NEAR(dist[i], best, 1e-12) << i;
  }
}

TEST(CompactSet, ExponentIsOneOnK) {
  auto d = Domain::torus(16, 2);
  CompactSet k;
  k.points.push_back({0.5, 0.5});
  const auto p = exponent_from_compact_set(k, 1.0, 0.0, 0.05, d);
  EXPECT_EQ(p.p_minus(), 1.0);
  EXPECT_EQ(p.eval(0.49, 0.49), 1.0);
  EXPECT_GT(p.eval(0.1, 0.9), 1.0);
  CompactSet outside;
  outside.points.push_back({1.5, 0.5});
  EXPECT_THROW(exponent_from_compact_set(outside, 1.0, 0.0, 0.05, d), InvalidArgument);
  EXPECT_THROW(exponent_from_compact_set(CompactSet{}, 1.0, 0.0, 0.05, d), InvalidArgument);
}

TEST(Dual, ConjugateIdentityAndLevelSets) {
  gen::Gen g(9);
  for (int t = 0; t < 100; ++t) {
    auto d = g.domain(g.size(2, 80));
    const auto p = g.exponent(d);
    const auto q = dual_exponent(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.value(i) == 1.0) {
        EXPECT_EQ(q.value(i), kDualSentinel);
      } else {
        EXPECT_NEAR(1.0 / p.value(i) + 1.0 / q.value(i), 1.0, 1e-12);
      }
    }
    // {p <= 1 + λ} = {q >= 1 + 1/λ}.
    const double lambda = g.uniform(0.05, 4.0);
    double direct = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (q.value(i) >= 1.0 + 1.0 / lambda) direct += p.domain().measure(i);
    }
    EXPECT_NEAR(std::exp(q.level_sets().log_at_least(1.0 + 1.0 / lambda)), direct, 1e-12);
  }
}

TEST(Rearranged, LevelSetsPreserved) {
  gen::Gen g(31);
  for (int t = 0; t < 50; ++t) {
    auto d = g.domain(g.size(2, 80));
    const auto p = g.exponent(d);
    const auto ps = rearranged_exponent(p);
    for (std::size_t i = 1; i < ps.size(); ++i) EXPECT_GE(ps.value(i - 1), ps.value(i));
    for (double l : {0.5, 1.0, 2.5}) EXPECT_NEAR(ps.level_measure(l), p.level_measure(l), 1e-12);
  }
}

TEST(ExponentFunction, Validation) {
  auto d = Domain::uniform(1.0, 2);
  EXPECT_THROW(ExponentFunction(d, {1.0, 0.5}), InvalidArgument);
  EXPECT_THROW(ExponentFunction(d, {1.0, INFINITY}), InvalidArgument);
  EXPECT_THROW(ExponentFunction(d, {1.0}), InvalidArgument);
  const ExponentFunction p(d, {1.5, 3.0});
  EXPECT_EQ(p.eval(0.2), 1.5);
  EXPECT_EQ(p.eval(0.8), 3.0);
  EXPECT_THROW((void)p.eval(0.0), InvalidArgument);
  EXPECT_THROW((void)p.eval(0.2, 0.2), InvalidArgument);
}

TEST(LevelSetProfile, GridChecks) {
  const auto g = geometric_lambda_grid(0.1, 1e-3, 10);
  EXPECT_EQ(g.size(), 21u);
  EXPECT_DOUBLE_EQ(g.front(), 0.1);
  EXPECT_DOUBLE_EQ(g.back(), 1e-3);
  EXPECT_THROW(geometric_lambda_grid(1e-3, 0.1, 10), InvalidArgument);
  const auto p = embedding_example_exponent(1.0, std::nullopt, kCoarse);
  const std::vector<double> unsorted = {0.1, 0.01, 0.05};
  EXPECT_THROW(level_set_profile(p, unsorted), InvalidArgument);
  const auto prof = level_set_profile(p, g);
  for (std::size_t i = 1; i < prof.log_m.size(); ++i) EXPECT_LE(prof.log_m[i], prof.log_m[i - 1]);
}

TEST(ExponentCsv, RoundTripOneAndTwoDimensional) {
  const auto p = embedding_example_exponent(1.0, std::nullopt, kCoarse);
  std::stringstream ss;
  write_exponent_csv(ss, p);
  const auto q = read_exponent_csv(ss);
  ASSERT_EQ(q.size(), p.size());
  for (std::size_t i = 0; i < p.size(); i += 97) {
    EXPECT_EQ(q.value(i), p.value(i));
    EXPECT_NEAR(q.domain().log_measure(i), p.domain().log_measure(i), 1e-9 * std::abs(p.domain().log_measure(i)));
  }
  CompactSet k;
  k.points.push_back({0.25, 0.75});
  const auto p2 = exponent_from_compact_set(k, 1.0, 0.0, 0.05, Domain::torus(8, 2));
  std::stringstream s2;
  write_exponent_csv(s2, p2);
  const auto q2 = read_exponent_csv(s2);
  for (std::size_t i = 0; i < p2.size(); ++i) EXPECT_EQ(q2.value(i), p2.value(i));
}
