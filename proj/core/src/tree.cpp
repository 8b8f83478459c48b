#include "rmq/tree.hpp"

#include "rmq/error.hpp"
#include "rmq/gaussian.hpp"
#include "rmq/normal_quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rmq {

namespace {

Grid affine_seed(double mean, double stdev, std::size_t n) {
  const StdNormalQuantizer& z = cached_std_normal_quantizer(n);
  std::vector<double> points(n);
  for (std::size_t j = 0; j < n; ++j) points[j] = mean + stdev * z.points[j];
  return Grid(std::move(points));
}

void fill_transition_row(double mean, double stdev, const Grid& next,
                         const std::vector<double>& mids, std::span<double> row) {
  std::fill(row.begin(), row.end(), 0.0);
  if (stdev == 0.0) {
    row[next.cell_of(mean)] = 1.0;
    return;
  }
  double below = 0.0;
  for (std::size_t j = 0; j < next.size(); ++j) {
    const double upper = j + 1 == next.size()
                             ? 1.0
                             : std_normal_cdf((mids[j + 1] - mean) / stdev);
    row[j] = upper - below;
    below = upper;
  }
}

}  // namespace

GaussianMixture one_step_law(const DiffusionModel& model, const Level& level,
                             double dt) {
  const std::size_t n = level.grid.size();
  double total = 0.0;
  for (double w : level.weights) total += w;
  std::vector<Component> comps(n);
  for (std::size_t i = 0; i < n; ++i) {
    const EulerParams p = euler_params(model, level.t, dt, level.grid[i]);
    comps[i] = {p.mean, p.stdev, level.weights[i] / total};
  }
  return GaussianMixture(std::move(comps));
}

Matrix transitions(const Level& level, const DiffusionModel& model, double t,
                   double dt, const Grid& next) {
  const auto mids = midpoints(next);
  Matrix out(level.grid.size(), next.size());
  for (std::size_t i = 0; i < level.grid.size(); ++i) {
    const EulerParams p = euler_params(model, t, dt, level.grid[i]);
    fill_transition_row(p.mean, p.stdev, next, mids, out.row(i));
  }
  return out;
}

std::vector<double> marginal_weights(std::span<const double> weights,
                                     const Matrix& transition) {
  if (weights.size() != transition.rows()) {
    throw std::invalid_argument("marginal_weights: dimension mismatch");
  }
  std::vector<double> out(transition.cols(), 0.0);
  for (std::size_t i = 0; i < transition.rows(); ++i) {
    const double w = weights[i];
    const auto row = transition.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out[j] += w * row[j];
  }
  return out;
}

Grid quantile_interpolated_seed(const Grid& grid, std::span<const double> weights,
                                std::size_t n) {
  if (weights.size() != grid.size()) {
    throw std::invalid_argument("quantile_interpolated_seed: dimension mismatch");
  }
  if (n == 0) throw std::invalid_argument("quantile_interpolated_seed: n must be >= 1");

  // Knots (F_i, x_i) with F_i the cumulative weight up to the middle of atom i.
  std::vector<double> ranks;
  std::vector<double> xs;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f = cumulative + 0.5 * weights[i];
    cumulative += weights[i];
    if (ranks.empty() || f > ranks.back()) {
      ranks.push_back(f);
      xs.push_back(grid[i]);
    }
  }
  if (ranks.size() < 2) {
    throw std::invalid_argument("quantile_interpolated_seed: need two atoms with mass");
  }

  std::vector<double> points(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(n));
    std::size_t seg = static_cast<std::size_t>(
        std::upper_bound(ranks.begin(), ranks.end(), r) - ranks.begin());
    seg = std::clamp<std::size_t>(seg, 1, ranks.size() - 1);
    const double slope = (xs[seg] - xs[seg - 1]) / (ranks[seg] - ranks[seg - 1]);
    points[j] = xs[seg - 1] + slope * (r - ranks[seg - 1]);
  }
  return Grid(std::move(points));
}

QuantizationTree build_tree(const DiffusionModel& model, double x0, double maturity,
                            std::size_t steps, std::span<const std::size_t> sizes,
                            const TreeOptions& options, BuildStats* stats) {
  if (steps < 1) throw std::invalid_argument("build_tree: n must be >= 1");
  if (!(maturity > 0.0)) throw std::invalid_argument("build_tree: T must be > 0");
  if (!std::isfinite(x0)) throw std::invalid_argument("build_tree: x0 must be finite");
  if (sizes.size() != steps + 1) {
    throw std::invalid_argument("build_tree: sizes must have n+1 entries");
  }
  if (sizes[0] != 1) throw std::invalid_argument("build_tree: sizes[0] must be 1");
  for (std::size_t s : sizes) {
    if (s < 1) throw std::invalid_argument("build_tree: sizes must be >= 1");
  }
  if (options.newton_iterations < 1) {
    throw std::invalid_argument("build_tree: newton_iterations must be >= 1");
  }

  QuantizationTree tree;
  tree.model = model.spec();
  tree.x0 = x0;
  tree.maturity = maturity;
  tree.steps = steps;
  tree.levels.reserve(steps + 1);
  tree.levels.push_back(Level{0.0, Grid({x0}), {1.0}, std::nullopt, {}});

  const double dt = tree.dt();
  NewtonOptions newton;
  newton.max_iterations = options.newton_iterations;
  newton.tolerance = options.tolerance;
  newton.engine = options.engine;

  for (std::size_t k = 0; k < steps; ++k) {
    const Level& prev = tree.levels[k];
    const std::size_t next_size = sizes[k + 1];
    const GaussianMixture law = one_step_law(model, prev, dt);

    try {
      Grid seed;
      if (k == 0 || prev.grid.size() == 1) {
        const double sd = std::sqrt(law.variance());
        if (sd == 0.0 && next_size > 1) {
          throw ConvergenceError("degenerate one-step law cannot carry " +
                                     std::to_string(next_size) + " points",
                                 0, 0.0);
        }
        seed = affine_seed(law.mean(), sd, next_size);
      } else if (next_size == prev.grid.size()) {
        seed = prev.grid;
      } else {
        seed = quantile_interpolated_seed(prev.grid, prev.weights, next_size);
      }

      NewtonResult solved = newton_solve(law, std::move(seed), newton);
      if (stats) {
        stats->pair_evaluations += solved.pair_evaluations;
        stats->passes += static_cast<std::uint64_t>(solved.passes);
      }

      Matrix p = transitions(prev, model, prev.t, dt, solved.grid);
      Level next;
      next.t = maturity * static_cast<double>(k + 1) / static_cast<double>(steps);
      next.weights = marginal_weights(prev.weights, p);
      next.grid = std::move(solved.grid);
      next.stats = {solved.iterations, solved.eval.gradient_sup_norm(),
                    solved.eval.distortion};
      if (options.keep_transitions) next.transition_from_prev = std::move(p);
      tree.levels.push_back(std::move(next));
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("level " + std::to_string(k + 1) + ": " + e.what(),
                             e.iteration(), e.residual(),
                             static_cast<std::ptrdiff_t>(k + 1));
    } catch (const SingularSystemError& e) {
      throw ConvergenceError("level " + std::to_string(k + 1) + ": " + e.what(), 0,
                             std::nan(""), static_cast<std::ptrdiff_t>(k + 1));
    }
  }
  return tree;
}

std::vector<std::size_t> unconverged_levels(const QuantizationTree& tree,
                                            double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k < tree.levels.size(); ++k) {
    if (!(tree.levels[k].stats.gradient_norm <= threshold)) out.push_back(k);
  }
  return out;
}

}  // namespace rmq
