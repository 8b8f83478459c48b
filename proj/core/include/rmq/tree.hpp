#pragma once

// Recursive marginal quantization of the Euler scheme: level k+1 is the
// Newton-stationary grid of the Gaussian mixture obtained by pushing the
// level-k quantization through one Euler step.

#include "rmq/diffusion.hpp"
#include "rmq/distortion.hpp"
#include "rmq/grid.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rmq {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Newton diagnostics recorded for each level.
struct LevelStats {
  int iterations = 0;
  double gradient_norm = 0.0;
  /// Distortion of the grid against the level's mixture law.
  double distortion = 0.0;

  friend bool operator==(const LevelStats&, const LevelStats&) = default;
};

struct Level {
  double t = 0.0;
  Grid grid;
  std::vector<double> weights;
  /// N_{k-1} x N_k, row-stochastic. Absent at level 0 or when dropped.
  std::optional<Matrix> transition_from_prev;
  LevelStats stats;

  friend bool operator==(const Level&, const Level&) = default;
};

struct QuantizationTree {
  ModelSpec model;
  double x0 = 0.0;
  double maturity = 0.0;
  std::size_t steps = 0;
  std::vector<Level> levels;

  double dt() const noexcept { return maturity / static_cast<double>(steps); }
  const Level& terminal() const { return levels.back(); }

  friend bool operator==(const QuantizationTree&, const QuantizationTree&) = default;
};

struct TreeOptions {
  /// Newton iterations per level (early exit on `tolerance`).
  int newton_iterations = 5;
  double tolerance = 1e-10;
  /// Levels whose final gradient sup-norm exceeds this are flagged by
  /// unconverged_levels(); they are not an error.
  double converged_threshold = 1e-8;
  bool keep_transitions = true;
  EngineOptions engine{};
};

/// Aggregate cost counters of a build.
struct BuildStats {
  std::uint64_t pair_evaluations = 0;
  std::uint64_t passes = 0;
};

/// sizes[k] is the grid size at level k; sizes[0] must be 1 and
/// sizes.size() == steps + 1. Throws ConvergenceError carrying the level
/// index when a level cannot be solved.
QuantizationTree build_tree(const DiffusionModel& model, double x0, double maturity,
                            std::size_t steps, std::span<const std::size_t> sizes,
                            const TreeOptions& options = {},
                            BuildStats* stats = nullptr);

/// The Gaussian mixture of X~_{k+1} given level k.
GaussianMixture one_step_law(const DiffusionModel& model, const Level& level,
                             double dt);

/// Entry (i,j): probability that the Euler step from grid point i of `level`
/// lands in cell j of `next`.
Matrix transitions(const Level& level, const DiffusionModel& model, double t,
                   double dt, const Grid& next);

/// weights * transition.
std::vector<double> marginal_weights(std::span<const double> weights,
                                     const Matrix& transition);

/// Levels whose recorded gradient sup-norm exceeds `threshold`.
std::vector<std::size_t> unconverged_levels(const QuantizationTree& tree,
                                            double threshold = 1e-8);

/// Seed for an N-point grid from a coarser or finer grid with weights:
/// monotone interpolation of the weighted grid's quantile function at ranks
/// (2j-1)/(2N).
Grid quantile_interpolated_seed(const Grid& grid, std::span<const double> weights,
                                std::size_t n);

}  // namespace rmq
