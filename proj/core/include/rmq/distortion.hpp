#pragma once

// Quadratic distortion of a 1-D grid against a finite Gaussian mixture, its
// gradient and tridiagonal Hessian, and the Newton-Raphson zero search built
// on them.
//
// Scaling convention: gradient() and hessian() are half the derivatives of
// distortion(). Newton directions are unaffected by the common factor.

#include "rmq/grid.hpp"
#include "rmq/tridiagonal.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace rmq {

struct EngineOptions {
  /// Worker threads for the sum over mixture components. Results are
  /// bit-identical for every value.
  unsigned threads = 1;
  /// Components are only visited on cells within this many standard
  /// deviations of their mean. At 40 the skipped terms are exactly zero in
  /// double precision; +infinity visits every (component, cell) pair.
  double tail_cutoff = 40.0;
};

struct DistortionEval {
  double distortion = 0.0;
  std::vector<double> gradient;
  Tridiagonal hessian;
  /// Mixture mass of each Voronoi cell.
  std::vector<double> cell_mass;
  /// Number of (component, cell) pairs visited.
  std::uint64_t pair_evaluations = 0;

  double gradient_sup_norm() const noexcept;
};

/// Everything in one pass over the mixture.
DistortionEval evaluate(const GaussianMixture& law, const Grid& grid,
                        const EngineOptions& options = {});

double distortion(const GaussianMixture& law, const Grid& grid);
std::vector<double> gradient(const GaussianMixture& law, const Grid& grid);
Tridiagonal hessian(const GaussianMixture& law, const Grid& grid);
std::vector<double> cell_masses(const GaussianMixture& law, const Grid& grid);

/// grid - H^{-1} g, with the step halved (at most max_halvings times) until
/// the result is strictly increasing. Throws SingularSystemError or
/// ConvergenceError.
Grid newton_step(const GaussianMixture& law, const Grid& grid,
                 int max_halvings = 30);

/// Fixed-point step moving every point to the conditional mean of its cell.
/// Never increases the distortion.
Grid lloyd_step(const GaussianMixture& law, const Grid& grid,
                const DistortionEval& at_grid);

struct NewtonOptions {
  int max_iterations = 5;
  /// Stop once the gradient sup-norm is at or below this value.
  double tolerance = 1e-10;
  int max_halvings = 30;
  /// Backtrack (then fall back to a Lloyd step) when a Newton step would
  /// raise the distortion by more than a 1e-12 relative margin. A Lloyd step
  /// is also used when the Hessian diagonal is not positive or the Newton
  /// direction is not a descent direction.
  bool reject_worsening = true;
  EngineOptions engine{};
};

struct NewtonResult {
  Grid grid;
  /// Evaluation at `grid`.
  DistortionEval eval;
  int iterations = 0;
  int lloyd_fallbacks = 0;
  /// Number of full evaluate() passes performed.
  int passes = 0;
  std::uint64_t pair_evaluations = 0;
  bool converged = false;
};

NewtonResult newton_solve(const GaussianMixture& law, Grid start,
                          const NewtonOptions& options = {});

}  // namespace rmq
