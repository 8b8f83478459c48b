#pragma once

// Constants of the a priori L2 error bound of the recursive quantization
// and its specialization to standard Brownian motion.

#include <cstddef>
#include <span>

namespace rmq {

class DiffusionModel;

struct BoundParams {
  double p = 3.0;          // moment order, in (2,3]
  double L = 1.0;          // linear growth constant
  double lip_b = 0.0;
  double lip_sigma = 0.0;
  double dt = 1.0;
  double x0 = 0.0;
  int d = 1;
  double K_universal = 1.0;  // Pierce constant, unknown numerically

  /// Throws std::invalid_argument unless p in (2,3], dt > 0, d >= 1 and the
  /// constants are nonnegative.
  void validate() const;
};

/// Constants taken from a model's declared growth and Lipschitz constants.
BoundParams bound_params(const DiffusionModel& model, double x0, double dt,
                         double p = 3.0);

double kappa_p(const BoundParams& params);
double big_k_p(const BoundParams& params);
double c_b_sigma(const BoundParams& params);

/// Statement: a_l as defined with the outer power 1/p.
/// Proof: the statement value raised once more to 1/p, as the last display
/// of the proof writes it.
enum class AReading { Statement, Proof };

/// a_l(t_k) with t_l = ell * dt. Throws std::invalid_argument when
/// t_l > t_k or kappa_p + K_p == 0.
double a_coeff(std::size_t ell, double t_k, const BoundParams& params,
               AReading reading = AReading::Statement);

/// Bound on a_l(t_k) valid for all l, k with t_l <= t_k <= horizon.
double uniform_a_bound(double horizon, const BoundParams& params);

/// Brownian motion with eta = 1:
/// [sqrt(2/pi) (4 + sqrt(dt)) (e^{2 t_l} - 1)]^{1/3}.
double brownian_a(std::size_t ell, double dt);

/// K * sum_{l<=k} a_l(t_k) sizes[l]^{-1/d}, with t_grid[l] = t_l.
/// Throws std::invalid_argument when a size is zero or k is out of range.
double theorem_bound(std::size_t k, std::span<const std::size_t> sizes,
                     std::span<const double> t_grid, const BoundParams& params,
                     AReading reading = AReading::Statement);

}  // namespace rmq
