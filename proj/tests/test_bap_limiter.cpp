#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "stochhyp/bap_limiter.hpp"
#include "stochhyp/errors.hpp"

using namespace stochhyp;

namespace {
constexpr LimiterMap kMaps[] = {LimiterMap::arctan, LimiterMap::tanh, LimiterMap::sqrt_rational};
}

TEST(Bap, ClosedFormArctan) {
  EXPECT_NEAR(bap_slope(1.0, 0.0, LimiterMap::arctan), std::tan(M_PI / 8), 1e-15);
  EXPECT_NEAR(bap_slope(1.0, 0.0, LimiterMap::arctan), 0.4142136, 1e-7);
}

TEST(Bap, ClosedFormOtherMaps) {
  EXPECT_NEAR(bap_slope(1.0, 0.0, LimiterMap::tanh), std::atanh(0.5 * std::tanh(1.0)), 1e-15);
  const double y = 0.5 / std::sqrt(2.0);
  EXPECT_NEAR(bap_slope(1.0, 0.0, LimiterMap::sqrt_rational), y / std::sqrt(1 - y * y), 1e-15);
}

TEST(Bap, EqualAndOpposite) {
  for (auto map : kMaps) {
    EXPECT_EQ(bap_slope(2.5, 2.5, map), 2.5);
    EXPECT_EQ(bap_slope(-0.3, 0.3, map), 0.0);
    EXPECT_EQ(bap_slope(0.0, 0.0, map), 0.0);
  }
}

TEST(Bap, NonFinite) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(bap_slope(std::nan(""), 0.0, LimiterMap::arctan), DomainError);
  EXPECT_THROW(bap_slope(0.0, inf, LimiterMap::tanh), DomainError);
}

TEST(Bap, RandomProperties) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mag(-6.0, 3.0);
  std::bernoulli_distribution neg(0.5);
  auto draw = [&] { return (neg(rng) ? -1.0 : 1.0) * std::pow(10.0, mag(rng)); };
  for (auto map : kMaps) {
    for (int n = 0; n < 20000; ++n) {
      const double a = draw();
      const double b = draw();
      const double s = bap_slope(a, b, map);
      ASSERT_GE(s, std::min(a, b));
      ASSERT_LE(s, std::max(a, b));
      ASSERT_EQ(bap_slope(-a, -b, map), -s);
      ASSERT_EQ(bap_slope(b, a, map), s);
    }
  }
}

TEST(Bap, MonotoneInEachArgument) {
  for (auto map : kMaps) {
    double prev = -1e300;
    for (double a = -5.0; a <= 5.0; a += 0.01) {
      const double s = bap_slope(a, 0.7, map);
      EXPECT_GE(s, prev);
      prev = s;
    }
  }
}

TEST(Bap, Names) {
  for (auto map : kMaps) EXPECT_EQ(limiter_from_string(to_string(map)), map);
  EXPECT_THROW(limiter_from_string("minmod"), ConfigError);
}
