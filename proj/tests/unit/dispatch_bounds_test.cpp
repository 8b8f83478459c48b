#include "rmq/bounds.hpp"
#include "rmq/diffusion.hpp"
#include "rmq/dispatch.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

namespace {

std::vector<double> brownian_coefficients(std::size_t n) {
  std::vector<double> a(n + 1);
  for (std::size_t l = 0; l <= n; ++l) a[l] = rmq::brownian_a(l, 1.0 / n);
  return a;
}

TEST(DispatchEqual, Examples) {
  const auto s250 = rmq::dispatch_equal(250, 50);
  ASSERT_EQ(s250.size(), 51u);
  EXPECT_EQ(s250[0], 1u);
  for (std::size_t k = 1; k <= 50; ++k) EXPECT_EQ(s250[k], 5u);
  EXPECT_EQ(rmq::dispatch_equal(5000, 50)[50], 100u);
  EXPECT_EQ(rmq::dispatch_equal(7, 3), (std::vector<std::size_t>{1, 2, 2, 3}));
  EXPECT_THROW(rmq::dispatch_equal(2, 3), std::invalid_argument);
}

TEST(DispatchOptimal, BrownianTerminalSizes) {
  const auto a = brownian_coefficients(50);
  EXPECT_EQ(rmq::dispatch_optimal(a, 250).back(), 6u);
  EXPECT_EQ(rmq::dispatch_optimal(a, 300).back(), 8u);
  EXPECT_EQ(rmq::dispatch_optimal(a, 5000).back(), 127u);
  std::vector<std::size_t> head;
  for (std::size_t n = 250; n <= 500; n += 50) head.push_back(rmq::dispatch_optimal(a, n).back());
  EXPECT_EQ(head, (std::vector<std::size_t>{6, 8, 9, 10, 11, 13}));
  std::vector<std::size_t> tail;
  for (std::size_t n = 4850; n <= 5000; n += 50) tail.push_back(rmq::dispatch_optimal(a, n).back());
  EXPECT_EQ(tail, (std::vector<std::size_t>{123, 124, 126, 127}));
  // The truncated formula lands one short at both ends.
  EXPECT_EQ(rmq::dispatch_optimal(a, 250, 1, rmq::Rounding::Floor).back(), 6u);
  EXPECT_EQ(rmq::dispatch_optimal(a, 5000, 1, rmq::Rounding::Floor).back(), 126u);
}

TEST(DispatchOptimal, ConstantCoefficientsAreUniform) {
  const std::vector<double> a(11, 2.0);
  const auto s = rmq::dispatch_optimal(a, 110, 1, rmq::Rounding::Floor);
  EXPECT_EQ(s[0], 1u);
  for (std::size_t l = 1; l <= 10; ++l) EXPECT_EQ(s[l], 10u);
  const std::vector<double> tiny{1.0, 1e-9, 1.0};
  EXPECT_EQ(rmq::dispatch_optimal(tiny, 10)[1], 1u);
  EXPECT_THROW(rmq::dispatch_optimal(std::vector<double>{1.0, 0.0}, 10), std::invalid_argument);
}

TEST(Bounds, Constants) {
  rmq::BoundParams p;
  p.p = 3.0;
  p.L = 1.0;
  EXPECT_DOUBLE_EQ(rmq::kappa_p(p), 8.0);
  p.L = 0.0;
  EXPECT_DOUBLE_EQ(rmq::kappa_p(p), 2.0);
  EXPECT_EQ(rmq::big_k_p(p), 0.0);
  p.p = 2.5;
  p.L = 2.0;
  EXPECT_DOUBLE_EQ(rmq::kappa_p(p), 10.875);
  p.p = 3.0;
  p.L = 1.0;
  p.dt = 1.0;
  EXPECT_NEAR(rmq::big_k_p(p), 31.915382432114614, 1e-12);
  p.dt = 0.01;
  EXPECT_NEAR(rmq::big_k_p(p), 26.170613594333984, 1e-12);
  p.lip_b = 0.0;
  p.lip_sigma = 1.0;
  EXPECT_DOUBLE_EQ(rmq::c_b_sigma(p), 0.5);
  p.lip_b = 0.15;
  p.lip_sigma = 0.4;
  EXPECT_DOUBLE_EQ(rmq::c_b_sigma(p), 0.23);
  p.p = 2.0;
  EXPECT_THROW(rmq::kappa_p(p), std::invalid_argument);
}

TEST(Bounds, ACoefficient) {
  rmq::BoundParams p;
  p.p = 2.5;
  p.L = 0.3;
  p.lip_b = 0.1;
  p.lip_sigma = 0.3;
  p.dt = 0.1;
  p.x0 = 1.5;
  EXPECT_NEAR(rmq::a_coeff(4, 0.8, p), 2.5985380833485269, 1e-13);
  EXPECT_NEAR(rmq::a_coeff(4, 0.8, p, rmq::AReading::Proof), std::pow(2.5985380833485269, 0.4), 1e-13);
  // l = 0 collapses the bracket to |x0|^p
  EXPECT_NEAR(rmq::a_coeff(0, 0.8, p), std::exp(rmq::c_b_sigma(p) * 0.8 / 2.5) * 1.5, 1e-13);
  p.x0 = 0.0;
  p.L = 0.0;
  EXPECT_EQ(rmq::a_coeff(3, 0.8, p), 0.0);
  EXPECT_THROW(rmq::a_coeff(9, 0.8, p), std::invalid_argument);
}

TEST(Bounds, ACoefficientMonotoneAndUniformlyBounded) {
  rmq::BoundParams p = rmq::bound_params(rmq::models::black_scholes(0.15, 0.2), 0.0, 1.0 / 120);
  double prev = -1.0;
  const double cap = rmq::uniform_a_bound(1.0, p);
  for (std::size_t l = 0; l <= 120; ++l) {
    const double a = rmq::a_coeff(l, 1.0, p);
    EXPECT_GE(a, prev);
    prev = a;
    EXPECT_LE(a, cap);
  }
  p.x0 = 100.0;
  const double cap100 = rmq::uniform_a_bound(1.0, p);
  for (std::size_t k = 0; k <= 120; k += 10) {
    for (std::size_t l = 0; l <= k; ++l) EXPECT_LE(rmq::a_coeff(l, k / 120.0, p), cap100);
  }
}

TEST(Bounds, BrownianCoefficients) {
  EXPECT_EQ(rmq::brownian_a(0, 0.02), 0.0);
  EXPECT_NEAR(rmq::brownian_a(50, 0.02), 2.7638134578987712, 1e-14);
  EXPECT_NEAR(rmq::brownian_a(1, 0.02), 0.51280797582332165, 1e-14);
}

TEST(Bounds, TheoremBound) {
  const auto params = rmq::bound_params(rmq::models::black_scholes(0.15, 0.2), 100.0, 0.1);
  std::vector<std::size_t> sizes(11, 5);
  sizes[0] = 1;
  std::vector<double> t(11);
  for (std::size_t l = 0; l <= 10; ++l) t[l] = 0.1 * l;
  EXPECT_NEAR(rmq::theorem_bound(10, sizes, t, params) / 508.79371546109194, 1.0, 1e-13);
  const std::vector<std::size_t> huge(11, 1000000);
  EXPECT_LT(rmq::theorem_bound(10, huge, t, params), 1e-3 * rmq::theorem_bound(10, sizes, t, params));
  auto more = sizes;
  more[4] = 6;
  EXPECT_LE(rmq::theorem_bound(10, more, t, params), rmq::theorem_bound(10, sizes, t, params));
}

TEST(Bounds, OptimalDispatchBeatsEqualOnBrownianSweep) {
  const std::size_t n = 50;
  const auto a = brownian_coefficients(n);
  auto bound = [&](const std::vector<std::size_t>& s) {
    double sum = 0.0;
    for (std::size_t l = 0; l <= n; ++l) sum += a[l] / static_cast<double>(s[l]);
    return sum;
  };
  for (std::size_t budget = 250; budget <= 5000; budget += 50) {
    EXPECT_LE(bound(rmq::dispatch_optimal(a, budget)), bound(rmq::dispatch_equal(budget, n))) << budget;
  }
}

}  // namespace
