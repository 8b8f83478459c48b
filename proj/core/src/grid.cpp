#include "rmq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rmq {

bool Grid::is_valid(std::span<const double> points) noexcept {
  if (points.empty()) return false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) return false;
    if (i > 0 && !(points[i - 1] < points[i])) return false;
  }
  return true;
}

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  if (!is_valid(points_)) {
    throw std::invalid_argument(
        "Grid: points must be non-empty, finite and strictly increasing");
  }
}

std::size_t Grid::cell_of(double u) const noexcept {
  // First j with u <= x_{j+1/2}; cells are closed on the right.
  std::size_t lo = 0;
  std::size_t hi = points_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const double boundary = 0.5 * (points_[mid] + points_[mid + 1]);
    if (u <= boundary) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::vector<double> midpoints(const Grid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> mids(n + 1);
  mids.front() = -std::numeric_limits<double>::infinity();
  mids.back() = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < n; ++j) {
    mids[j] = 0.5 * (grid[j - 1] + grid[j]);
  }
  return mids;
}

GaussianMixture::GaussianMixture(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("GaussianMixture: no components");
  }
  double total = 0.0;
  for (const auto& c : components_) {
    if (!std::isfinite(c.mean) || !std::isfinite(c.stdev) || c.stdev < 0.0) {
      throw std::invalid_argument(
          "GaussianMixture: component mean/stdev must be finite, stdev >= 0");
    }
    if (!(c.weight >= 0.0)) {
      throw std::invalid_argument("GaussianMixture: negative weight");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw std::invalid_argument("GaussianMixture: weights sum to " +
                                std::to_string(total));
  }
}

GaussianMixture GaussianMixture::single(double mean, double stdev) {
  return GaussianMixture({Component{mean, stdev, 1.0}});
}

double GaussianMixture::mean() const noexcept {
  double m = 0.0;
  for (const auto& c : components_) m += c.weight * c.mean;
  return m;
}

double GaussianMixture::variance() const noexcept {
  const double m = mean();
  double v = 0.0;
  for (const auto& c : components_) {
    v += c.weight * (c.stdev * c.stdev + (c.mean - m) * (c.mean - m));
  }
  return v;
}

}  // namespace rmq
