#include "rmq/error.hpp"
#include "rmq/grid.hpp"
#include "rmq/tridiagonal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

namespace {

TEST(Grid, RejectsInvalidPoints) {
  EXPECT_THROW(rmq::Grid(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(rmq::Grid({1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(rmq::Grid({2.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(rmq::Grid({0.0, std::numeric_limits<double>::infinity()}), std::invalid_argument);
  EXPECT_THROW(rmq::Grid({std::nan("")}), std::invalid_argument);
  EXPECT_NO_THROW(rmq::Grid({-1.0, 0.0, 3.0}));
}

TEST(Grid, MidpointsAndCells) {
  const rmq::Grid g({-1.0, 0.0, 3.0});
  const auto mids = rmq::midpoints(g);
  ASSERT_EQ(mids.size(), 4u);
  EXPECT_EQ(mids[0], -std::numeric_limits<double>::infinity());
  EXPECT_EQ(mids[1], -0.5);
  EXPECT_EQ(mids[2], 1.5);
  EXPECT_EQ(mids[3], std::numeric_limits<double>::infinity());
  EXPECT_EQ(g.cell_of(-7.0), 0u);
  EXPECT_EQ(g.cell_of(-0.5), 0u);  // right-closed cells
  EXPECT_EQ(g.cell_of(-0.49), 1u);
  EXPECT_EQ(g.cell_of(1.5), 1u);
  EXPECT_EQ(g.cell_of(100.0), 2u);
}

TEST(GaussianMixture, ValidatesComponents) {
  EXPECT_THROW(rmq::GaussianMixture({{0.0, -1.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(rmq::GaussianMixture({{0.0, 1.0, 0.5}}), std::invalid_argument);
  EXPECT_THROW(rmq::GaussianMixture({{0.0, 1.0, 1.5}, {0.0, 1.0, -0.5}}), std::invalid_argument);
  const rmq::GaussianMixture m({{-1.0, 1.0, 0.5}, {1.0, 2.0, 0.5}});
  EXPECT_DOUBLE_EQ(m.mean(), 0.0);
  EXPECT_DOUBLE_EQ(m.variance(), 0.5 * (1 + 1) + 0.5 * (4 + 1));
}

TEST(Tridiagonal, SolvesAgainstDenseMultiply) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {1u, 2u, 7u, 50u}) {
    rmq::Tridiagonal t(n);
    for (std::size_t i = 0; i < n; ++i) t.diag[i] = 4.0 + u(gen);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      t.sub[i] = u(gen);
      t.super[i] = u(gen);
    }
    std::vector<double> x(n);
    for (auto& v : x) v = u(gen);
    const auto b = t.multiply(x);
    const auto y = rmq::solve_tridiagonal(t, b);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y[i], x[i], 1e-13);
  }
}

TEST(Tridiagonal, SingularPivotReportsRow) {
  rmq::Tridiagonal t(3);
  t.diag = {1.0, 1.0, 1.0};
  t.sub = {1.0, 0.0};
  t.super = {1.0, 0.0};
  try {
    rmq::solve_tridiagonal(t, std::vector<double>{1.0, 2.0, 3.0});
    FAIL() << "expected SingularSystemError";
  } catch (const rmq::SingularSystemError& e) {
    EXPECT_EQ(e.row(), 1u);
  }
}

TEST(Tridiagonal, DimensionMismatch) {
  rmq::Tridiagonal t(3);
  t.diag = {1.0, 1.0, 1.0};
  EXPECT_THROW(rmq::solve_tridiagonal(t, std::vector<double>{1.0}), std::invalid_argument);
}

}  // namespace
