#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rmq {

/// An N-quantizer on the real line: finite, strictly increasing points.
class Grid {
 public:
  Grid() = default;
  /// Throws std::invalid_argument when the points are empty, non-finite or
  /// not strictly increasing.
  explicit Grid(std::vector<double> points);

  /// True when `points` would form a valid Grid.
  static bool is_valid(std::span<const double> points) noexcept;

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  double operator[](std::size_t i) const noexcept { return points_[i]; }
  std::span<const double> points() const noexcept { return points_; }
  const std::vector<double>& values() const noexcept { return points_; }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  /// Index of the Voronoi cell (x_{j-1/2}, x_{j+1/2}] containing u.
  std::size_t cell_of(double u) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::vector<double> points_;
};

/// Cell boundaries (-inf, (x_1+x_2)/2, ..., (x_{N-1}+x_N)/2, +inf); size N+1.
std::vector<double> midpoints(const Grid& grid);

/// One Gaussian component N(mean, stdev^2) with mixture weight `weight`.
/// stdev == 0 denotes a Dirac mass at `mean`.
struct Component {
  double mean = 0.0;
  double stdev = 1.0;
  double weight = 1.0;

  friend bool operator==(const Component&, const Component&) = default;
};

/// Finite Gaussian mixture: the one-step law of the Euler scheme started from
/// a quantized state.
class GaussianMixture {
 public:
  static constexpr double kWeightTolerance = 1e-12;

  GaussianMixture() = default;
  /// Validates stdev >= 0, weights >= 0 and |sum(weights) - 1| <= 1e-12.
  explicit GaussianMixture(std::vector<Component> components);

  /// Single N(mean, stdev^2).
  static GaussianMixture single(double mean, double stdev);

  std::size_t size() const noexcept { return components_.size(); }
  const Component& operator[](std::size_t i) const noexcept { return components_[i]; }
  std::span<const Component> components() const noexcept { return components_; }

  double mean() const noexcept;
  double variance() const noexcept;

 private:
  std::vector<Component> components_;
};

}  // namespace rmq
