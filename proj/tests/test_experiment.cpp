#include <gtest/gtest.h>

#include <sstream>

#include "vexp/vexp.hpp"

using namespace vexp;

TEST(Experiment, ConfigEcho) {
  ExperimentConfig c;
  c.command = "witness";
  c.seed = 9;
  c.set("alpha", "1");
  c.set("c", "10");
  c.set("alpha", "2");
  EXPECT_EQ(c.echo(), "# vexp witness alpha=2 c=10 seed=9");
}

TEST(Experiment, PropertySuiteAllPass) {
  const auto results = run_property_suite(42, 20);
  EXPECT_GE(results.size(), 13u);
  for (const auto& r : results) {
    EXPECT_EQ(r.trials, 20) << r.check;
    EXPECT_EQ(r.passed, r.trials) << r.check << " max violation " << r.max_violation;
  }
}

TEST(Experiment, SuiteDeterministicAndSeedSensitive) {
  std::ostringstream a, b;
  write_property_csv(a, run_property_suite(3, 5));
  write_property_csv(b, run_property_suite(3, 5));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().rfind("check,trials,passed,max_violation\n", 0), 0u);
}

TEST(Csv, FormatRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17}) EXPECT_EQ(std::stod(csv::format_double(v)), v);
  // Log scalars below the double range keep their exponent.
  const double lx = -1e7;
  EXPECT_NEAR(csv::parse_log_scalar(csv::format_log_scalar(lx)), lx, 1e-9 * 1e7);
  EXPECT_EQ(csv::parse_log_scalar(csv::format_log_scalar(kNegInf)), kNegInf);
}
