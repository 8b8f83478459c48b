#pragma once

#include "rmq/grid.hpp"

#include <cstddef>
#include <vector>

namespace rmq {

/// Stationary quadratic quantizer of N(0,1).
struct StdNormalQuantizer {
  Grid points;
  /// Voronoi cell probabilities.
  std::vector<double> weights;
  double distortion = 0.0;
  /// Gradient sup-norm at `points` (half-derivative convention).
  double residual = 0.0;
};

/// Newton-Raphson from quantile seeds cdf^{-1}((2i-1)/(2N)), iterated until
/// the gradient sup-norm is at most `tolerance`. Throws ConvergenceError if
/// that does not happen within max_iterations.
StdNormalQuantizer std_normal_quantizer(std::size_t n, int max_iterations = 200,
                                        double tolerance = 1e-12);

/// Memoized std_normal_quantizer(n). Safe to call concurrently.
const StdNormalQuantizer& cached_std_normal_quantizer(std::size_t n);

}  // namespace rmq
