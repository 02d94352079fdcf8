#include <gtest/gtest.h>

#include <boost/math/distributions/students_t.hpp>

#include "bubblelab/ols.hpp"
#include "bubblelab/student_t.hpp"
#include "oracles/t_oracle.hpp"

namespace {

using namespace bubblelab;

TEST(TQuantile, Median) {
  for (double df : {1.0, 2.0, 7.0, 1000.0}) EXPECT_EQ(t_quantile(0.5, df), 0.0);
}

TEST(TQuantile, AgainstQuadratureOracle) {
  const double q2 = oracle::t_quantile(0.975, 2);
  EXPECT_NEAR(q2, 4.30265273, 1e-6);
  EXPECT_NEAR(t_quantile(0.975, 2), q2, 1e-7);
  const double q1000 = oracle::t_quantile(0.975, 1000);
  EXPECT_NEAR(q1000, 1.96233908, 1e-6);
  EXPECT_NEAR(t_quantile(0.975, 1000), q1000, 1e-7);
  for (double df : {1.0, 3.0, 5.0, 12.0}) {
    EXPECT_NEAR(t_quantile(0.95, df), oracle::t_quantile(0.95, df), 1e-7) << df;
  }
}

TEST(TQuantile, CdfInvertsQuantile) {
  std::vector<double> dfs;
  for (int d = 1; d <= 30; ++d) dfs.push_back(d);
  dfs.push_back(100);
  dfs.push_back(1000);
  for (double p : {0.9, 0.95, 0.975, 0.99}) {
    for (double df : dfs) {
      const double q = t_quantile(p, df);
      EXPECT_NEAR(t_cdf(q, df), p, 1e-8) << p << ' ' << df;
      const boost::math::students_t dist(df);
      EXPECT_NEAR(boost::math::cdf(dist, q), p, 1e-8) << p << ' ' << df;
      EXPECT_NEAR(t_quantile(1 - p, df), -q, 1e-8);
    }
  }
}

TEST(TQuantile, DomainErrors) {
  EXPECT_THROW(t_quantile(0.0, 3), Error);
  EXPECT_THROW(t_quantile(1.0, 3), Error);
  EXPECT_THROW(t_quantile(0.9, 0.5), Error);
}

TEST(TCdf, KnownValues) {
  EXPECT_DOUBLE_EQ(t_cdf(0.0, 4), 0.5);
  // df = 1 is Cauchy.
  EXPECT_NEAR(t_cdf(1.0, 1), 0.75, 1e-14);
  EXPECT_NEAR(t_cdf(-2.0, 1), 0.5 + std::atan(-2.0) / M_PI, 1e-14);
  EXPECT_NEAR(incomplete_beta(2, 3, 0.4), 0.5248, 1e-12);
}

TEST(CriticalT, Modes) {
  EXPECT_NEAR(critical_t(ConfidenceMode::TwoSided, 2), 4.302652729696142, 1e-9);
  EXPECT_NEAR(critical_t(ConfidenceMode::OneSided, 2), 2.919985580355516, 1e-9);
  EXPECT_EQ(critical_t(ConfidenceMode::TwoSided, 400), t_quantile(0.975, 400));
  EXPECT_THROW(critical_t(ConfidenceMode::TwoSided, 0), Error);
  EXPECT_EQ(parse_confidence_mode("one-sided"), ConfidenceMode::OneSided);
  EXPECT_THROW(parse_confidence_mode("both"), Error);
}

}  // namespace
