#include "rmq/monte_carlo.hpp"

#include "parallel.hpp"
#include "rmq/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace rmq {

namespace {

struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0.0) return;
    const double total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * other.count / total;
    m2 += other.m2 + delta * delta * count * other.count / total;
    count = total;
  }
};

// Uniform on the open interval (0,1) from the top 53 bits.
double open_uniform(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

McResult mc_price(const DiffusionModel& model, double x0, const Payoff& payoff, double r,
                  double maturity, std::size_t steps, std::uint64_t paths,
                  std::uint64_t seed, const McOptions& options) {
  if (paths < 2) throw std::invalid_argument("mc_price: need at least 2 paths");
  if (steps < 1) throw std::invalid_argument("mc_price: n must be >= 1");
  if (!(maturity > 0.0)) throw std::invalid_argument("mc_price: T must be > 0");
  if (options.block_size == 0) throw std::invalid_argument("mc_price: block_size must be > 0");

  const double dt = maturity / static_cast<double>(steps);
  const std::uint64_t blocks = (paths + options.block_size - 1) / options.block_size;
  std::vector<Moments> partial(blocks);

  detail::for_each_block(blocks, options.threads, [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 gen(seq);
    const std::uint64_t first = b * options.block_size;
    const std::uint64_t count = std::min(options.block_size, paths - first);
    Moments acc;
    for (std::uint64_t path = 0; path < count; ++path) {
      double x = x0;
      for (std::size_t k = 0; k < steps; ++k) {
        const double z = std_normal_quantile(open_uniform(gen()));
        x = euler_step(model, static_cast<double>(k) * dt, dt, x, z);
      }
      acc.add(payoff(x));
    }
    partial[b] = acc;
  });

  // Pairwise tree reduction in fixed order.
  for (std::size_t stride = 1; stride < partial.size(); stride *= 2) {
    for (std::size_t i = 0; i + stride < partial.size(); i += 2 * stride) {
      partial[i].merge(partial[i + stride]);
    }
  }
  const Moments& all = partial.front();

  const double discount = std::exp(-r * maturity);
  McResult out;
  out.paths = paths;
  out.seed = seed;
  out.price = discount * all.mean;
  const double variance = all.m2 / (all.count - 1.0);
  out.std_error = discount * std::sqrt(variance / all.count);
  out.ci_low = out.price - options.z * out.std_error;
  out.ci_high = out.price + options.z * out.std_error;
  return out;
}

}  // namespace rmq
