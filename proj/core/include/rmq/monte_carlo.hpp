#pragma once

#include "rmq/diffusion.hpp"
#include "rmq/pricing.hpp"

#include <cstddef>
#include <cstdint>

namespace rmq {

struct McResult {
  double price = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t paths = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  unsigned threads = 1;
  /// Half-width of the confidence interval in standard errors.
  double z = 1.96;
  /// Paths per independent random stream. Part of the reproducibility
  /// contract: changing it changes the draws.
  std::uint64_t block_size = 8192;
};

/// Euler Monte Carlo estimate of e^{-rT} E payoff(X_T) with `steps` steps.
/// Path block b draws from mt19937_64 seeded with (seed, b), so results are
/// identical for every thread count. Throws std::invalid_argument when
/// paths < 2 or steps < 1.
McResult mc_price(const DiffusionModel& model, double x0, const Payoff& payoff, double r,
                  double maturity, std::size_t steps, std::uint64_t paths,
                  std::uint64_t seed, const McOptions& options = {});

}  // namespace rmq
