#include "rmq/gaussian.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rmq {

double std_normal_pdf(double z) noexcept {
  if (std::isinf(z)) return 0.0;
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double std_normal_cdf(double z) noexcept {
  if (z == -std::numeric_limits<double>::infinity()) return 0.0;
  if (z == std::numeric_limits<double>::infinity()) return 1.0;
  // erfc keeps full relative precision in the left tail.
  return 0.5 * std::erfc(-z * (1.0 / std::numbers::sqrt2));
}

double std_normal_quantile(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("std_normal_quantile: u must lie in [0,1]");
  }
  if (u == 0.0) return -std::numeric_limits<double>::infinity();
  if (u == 1.0) return std::numeric_limits<double>::infinity();
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

double abs_moment(double p) {
  if (!(p > 2.0 && p <= 3.0)) {
    throw std::invalid_argument("abs_moment: p must lie in (2,3]");
  }
  return std::pow(2.0, 0.5 * p) * std::tgamma(0.5 * (p + 1.0)) /
         std::sqrt(std::numbers::pi);
}

}  // namespace rmq
