#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"

using namespace vexp;

namespace {

// Independent oracle: plain bisection of w e^w = x on a bracket.
double bisect_w(double x, double lo, double hi) {
  auto f = [x](double w) { return w * std::exp(w) - x; };
  const bool inc = f(hi) > f(lo);
  for (int i = 0; i < 400; ++i) {
    const double m = 0.5 * (lo + hi);
    ((f(m) < 0.0) == inc ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

const double kInvE = 1.0 / std::numbers::e;

}  // namespace

TEST(LambertW, KnownValues) {
  EXPECT_NEAR(w_principal(1.0), 0.5671432904097838, 1e-15);
  EXPECT_NEAR(w_principal(std::numbers::e), 1.0, 1e-15);
  EXPECT_EQ(w_principal(0.0), 0.0);
  EXPECT_NEAR(w_secondary(-0.2), -2.5426413577735265, 1e-12);
  EXPECT_NEAR(w_principal(-0.2), -0.2591711018190738, 1e-14);
}

TEST(LambertW, BranchPointExact) {
  EXPECT_EQ(w_principal(-kInvE), -1.0);
  EXPECT_EQ(w_secondary(-kInvE), -1.0);
}

TEST(LambertW, MatchesBisectionOracle) {
  gen::Gen g(11);
  for (int t = 0; t < 300; ++t) {
    const double x = -kInvE + std::exp(g.uniform(-25.0, std::log(kInvE)));
    if (x >= 0.0) continue;
    EXPECT_NEAR(w_principal(x), bisect_w(x, -1.0, 0.0), 1e-10) << x;
    EXPECT_NEAR(w_secondary(x), bisect_w(x, -800.0, -1.0), 1e-9 * std::max(1.0, -w_secondary(x))) << x;
  }
  for (int t = 0; t < 200; ++t) {
    const double x = std::exp(g.uniform(-20.0, 60.0));
    const double w = w_principal(x);
    EXPECT_NEAR(w, bisect_w(x, 0.0, 200.0), 1e-10 * std::max(1.0, w)) << x;
  }
}

TEST(LambertW, BranchOrdering) {
  gen::Gen g(5);
  for (int t = 0; t < 200; ++t) {
    const double x = g.uniform(-kInvE + 1e-12, -1e-300);
    EXPECT_GE(w_principal(x), -1.0);
    EXPECT_LE(w_secondary(x), -1.0);
  }
}

TEST(LambertW, ResidualReported) {
  const auto r = lambert_w(Branch::secondary, -0.1);
  EXPECT_EQ(r.branch, Branch::secondary);
  EXPECT_LE(r.residual, 1e-15);
}

TEST(LambertW, DomainErrors) {
  EXPECT_THROW(w_principal(-0.5), DomainError);
  EXPECT_THROW(w_secondary(0.0), DomainError);
  EXPECT_THROW(w_secondary(0.5), DomainError);
  EXPECT_THROW(w_secondary(-0.5), DomainError);
  EXPECT_THROW(w_principal(std::nan("")), DomainError);
}

TEST(LambertW, NearBranchPointTolerance) {
  // Slightly below -1/e by rounding is accepted; far below is not.
  EXPECT_EQ(w_principal(-kInvE - 1e-16), -1.0);
  EXPECT_THROW(w_principal(-kInvE - 1e-10), DomainError);
}

TEST(LambertW, ExpansionTermsValidated) {
  EXPECT_THROW(w_principal_asymptotic(1e6, 0), InvalidArgument);
  EXPECT_THROW(w_principal_asymptotic(1e6, 6), InvalidArgument);
  EXPECT_THROW(w_principal_asymptotic(2.0), DomainError);  // ln x < 1
  EXPECT_THROW(w_secondary_asymptotic(-0.5), DomainError);
  EXPECT_THROW(w_secondary_asymptotic(0.1), DomainError);
}

TEST(LambertW, ExpansionWithinRemainder) {
  for (double x : {1e4, 1e6, 1e10, 1e20}) {
    const double xi = std::log(x);
    EXPECT_LE(std::abs(w_principal_asymptotic(x) - w_principal(x)), 3.0 * lambert_expansion_remainder(xi)) << x;
    const double mu = std::log(x);
    EXPECT_LE(std::abs(w_secondary_asymptotic(-1.0 / x) - w_secondary(-1.0 / x)),
              3.0 * lambert_expansion_remainder(mu))
        << x;
  }
}

TEST(LambertW, MoreTermsHelpFarOut) {
  const double x = 1e30;
  const double w = w_principal(x);
  EXPECT_LT(std::abs(w_principal_asymptotic(x, 5) - w), std::abs(w_principal_asymptotic(x, 2) - w));
  const double m = w_secondary(-1.0 / x);
  EXPECT_LT(std::abs(w_secondary_asymptotic(-1.0 / x, 5) - m), std::abs(w_secondary_asymptotic(-1.0 / x, 2) - m));
}
