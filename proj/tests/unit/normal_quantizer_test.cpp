#include "rmq/normal_quantizer.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace {

TEST(NormalQuantizer, OnePointIsTheMean) {
  const auto q = rmq::std_normal_quantizer(1);
  EXPECT_EQ(q.points[0], 0.0);
  EXPECT_NEAR(q.distortion, 1.0, 1e-15);
}

TEST(NormalQuantizer, TwoPoints) {
  const auto q = rmq::std_normal_quantizer(2);
  const double x = std::sqrt(2.0 / std::numbers::pi);
  EXPECT_NEAR(q.points[0], -x, 1e-14);
  EXPECT_NEAR(q.points[1], x, 1e-14);
  EXPECT_NEAR(q.distortion, 1.0 - 2.0 / std::numbers::pi, 1e-14);
}

TEST(NormalQuantizer, FivePointsMatchLloydOracle) {
  const auto q = rmq::std_normal_quantizer(5);
  const double pts[] = {-1.724147407161151, -0.76456757116981927, 0.0, 0.76456757116981927,
                        1.724147407161151};
  const double w[] = {0.10668401065264817, 0.24444142947923606, 0.29774911973623155,
                      0.24444142947923606, 0.10668401065264817};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(q.points[i], pts[i], 1e-12);
    EXPECT_NEAR(q.weights[i], w[i], 1e-12);
  }
  EXPECT_NEAR(q.distortion, 0.079941127088277439, 1e-14);
}

TEST(NormalQuantizer, TenPointsMatchLloydOracle) {
  const auto q = rmq::std_normal_quantizer(10);
  const double pts[] = {-2.3450958856680397, -1.5913404419162647, -1.057825045298147,
                        -0.6098575088712472, -0.19962285164508492};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(q.points[i], pts[i], 1e-11);
    EXPECT_NEAR(q.points[9 - i], -pts[i], 1e-11);
  }
  EXPECT_NEAR(q.distortion, 0.02293705290450153, 1e-14);
}

TEST(NormalQuantizer, StationaryAndSymmetricForLargeN) {
  double previous = 0.0;
  for (std::size_t n : {50u, 200u, 400u}) {
    const auto q = rmq::std_normal_quantizer(n);
    EXPECT_LE(q.residual, 1e-12);
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(q.points[i], -q.points[n - 1 - i], 1e-9);
      mass += q.weights[i];
    }
    EXPECT_NEAR(mass, 1.0, 1e-13);
    // Zador: N^2 D increases to sqrt(3) pi / 2
    const double scaled = n * n * q.distortion;
    EXPECT_GT(scaled, previous);
    EXPECT_LT(scaled, std::sqrt(3.0) * std::numbers::pi / 2.0);
    previous = scaled;
  }
  EXPECT_NEAR(previous, std::sqrt(3.0) * std::numbers::pi / 2.0, 0.05);
}

TEST(NormalQuantizer, DistortionDecreasesWithN) {
  double prev = 2.0;
  for (std::size_t n = 1; n <= 30; ++n) {
    const double d = rmq::cached_std_normal_quantizer(n).distortion;
    EXPECT_LT(d, prev);
    prev = d;
  }
}

TEST(NormalQuantizer, CacheReturnsSameObject) {
  EXPECT_EQ(&rmq::cached_std_normal_quantizer(17), &rmq::cached_std_normal_quantizer(17));
}

}  // namespace
