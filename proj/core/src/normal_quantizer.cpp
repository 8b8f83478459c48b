#include "rmq/normal_quantizer.hpp"

#include "rmq/distortion.hpp"
#include "rmq/error.hpp"
#include "rmq/gaussian.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

namespace rmq {

StdNormalQuantizer std_normal_quantizer(std::size_t n, int max_iterations,
                                        double tolerance) {
  if (n == 0) throw std::invalid_argument("std_normal_quantizer: N must be >= 1");
  if (max_iterations < 1) {
    throw std::invalid_argument("std_normal_quantizer: max_iterations must be >= 1");
  }

  std::vector<double> seed(n);
  for (std::size_t i = 0; i < n; ++i) {
    seed[i] = std_normal_quantile((2.0 * static_cast<double>(i) + 1.0) /
                                  (2.0 * static_cast<double>(n)));
  }
  // Exact symmetry of the seed keeps the iterates symmetric.
  for (std::size_t i = 0; i < n / 2; ++i) seed[n - 1 - i] = -seed[i];
  if (n % 2 == 1) seed[n / 2] = 0.0;

  const auto law = GaussianMixture::single(0.0, 1.0);
  NewtonOptions options;
  options.max_iterations = max_iterations;
  options.tolerance = tolerance;
  NewtonResult solved = newton_solve(law, Grid(std::move(seed)), options);
  if (!solved.converged) {
    throw ConvergenceError("std_normal_quantizer: N=" + std::to_string(n) +
                               " did not converge",
                           solved.iterations, solved.eval.gradient_sup_norm());
  }

  StdNormalQuantizer q;
  q.points = std::move(solved.grid);
  q.weights = std::move(solved.eval.cell_mass);
  q.distortion = solved.eval.distortion;
  q.residual = solved.eval.gradient_sup_norm();
  return q;
}

const StdNormalQuantizer& cached_std_normal_quantizer(std::size_t n) {
  static std::shared_mutex mutex;
  static std::map<std::size_t, std::unique_ptr<const StdNormalQuantizer>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  auto computed = std::make_unique<const StdNormalQuantizer>(std_normal_quantizer(n));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.try_emplace(n, std::move(computed));
  return *it->second;
}

}  // namespace rmq
