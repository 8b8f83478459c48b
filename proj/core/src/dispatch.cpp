#include "rmq/dispatch.hpp"

#include <cmath>
#include <stdexcept>

namespace rmq {

std::vector<std::size_t> dispatch_equal(std::size_t budget, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("dispatch_equal: n must be >= 1");
  if (budget < steps) throw std::invalid_argument("dispatch_equal: budget N must be >= n");
  std::vector<std::size_t> sizes(steps + 1, budget / steps);
  sizes[0] = 1;
  sizes[steps] += budget % steps;
  return sizes;
}

std::vector<std::size_t> dispatch_optimal(std::span<const double> a, std::size_t budget,
                                          int dimension, Rounding rounding) {
  if (a.size() < 2) throw std::invalid_argument("dispatch_optimal: need n+1 >= 2 coefficients");
  if (dimension < 1) throw std::invalid_argument("dispatch_optimal: d must be >= 1");
  if (budget == 0) throw std::invalid_argument("dispatch_optimal: budget must be >= 1");
  const double power = static_cast<double>(dimension) / (dimension + 1.0);
  double total = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (!(a[l] >= 0.0) || !std::isfinite(a[l]) || (l > 0 && a[l] == 0.0)) {
      throw std::invalid_argument("dispatch_optimal: a_l must be finite and positive for l >= 1");
    }
    total += std::pow(a[l], power);
  }
  std::vector<std::size_t> sizes(a.size(), 1);
  for (std::size_t l = 1; l < a.size(); ++l) {
    const double share = std::pow(a[l], power) / total * static_cast<double>(budget);
    const double rounded = rounding == Rounding::Floor ? std::floor(share * (1.0 + 1e-12)) : std::round(share);
    sizes[l] = rounded < 1.0 ? 1 : static_cast<std::size_t>(rounded);
  }
  return sizes;
}

}  // namespace rmq
