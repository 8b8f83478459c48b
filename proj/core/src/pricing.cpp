#include "rmq/pricing.hpp"

#include "rmq/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmq {

Payoff Payoff::put(double strike) {
  if (!(strike > 0.0)) throw std::invalid_argument("put: strike must be > 0");
  return {Kind::Put, strike, {}};
}

Payoff Payoff::call(double strike) {
  if (!(strike > 0.0)) throw std::invalid_argument("call: strike must be > 0");
  return {Kind::Call, strike, {}};
}

Payoff Payoff::custom(std::function<double(double)> fn) {
  if (!fn) throw std::invalid_argument("custom payoff: empty function");
  return {Kind::Custom, 0.0, std::move(fn)};
}

Payoff Payoff::from_name(const std::string& name, double strike) {
  if (name == "put") return put(strike);
  if (name == "call") return call(strike);
  throw std::invalid_argument("unknown payoff '" + name + "' (expected put or call)");
}

double Payoff::operator()(double x) const {
  switch (kind) {
    case Kind::Put:
      return std::max(strike - x, 0.0);
    case Kind::Call:
      return std::max(x - strike, 0.0);
    case Kind::Custom:
      return fn(x);
  }
  return 0.0;
}

double price_european(const QuantizationTree& tree, const Payoff& payoff, double r) {
  if (tree.levels.empty()) throw std::invalid_argument("price_european: empty tree");
  const Level& last = tree.terminal();
  double sum = 0.0;
  for (std::size_t i = 0; i < last.grid.size(); ++i) sum += payoff(last.grid[i]) * last.weights[i];
  return std::exp(-r * tree.maturity) * sum;
}

std::vector<double> conditional_expectation(const QuantizationTree& tree, std::size_t k,
                                            const std::function<double(double)>& f) {
  if (k + 1 >= tree.levels.size()) {
    throw std::invalid_argument("conditional_expectation: level has no successor");
  }
  const Level& next = tree.levels[k + 1];
  if (!next.transition_from_prev) {
    throw std::invalid_argument("conditional_expectation: transitions were not kept");
  }
  std::vector<double> values(next.grid.size());
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = f(next.grid[j]);
  const Matrix& p = *next.transition_from_prev;
  std::vector<double> out(p.rows(), 0.0);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const auto row = p.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out[i] += row[j] * values[j];
  }
  return out;
}

namespace {

void check_bs(double s0, double strike, double sigma, double maturity) {
  if (!(s0 > 0.0) || !(strike > 0.0) || !(sigma > 0.0) || !(maturity > 0.0)) {
    throw std::invalid_argument("Black-Scholes: s0, strike, sigma and T must be > 0");
  }
}

}  // namespace

double bs_put_closed_form(double s0, double strike, double r, double sigma, double maturity) {
  check_bs(s0, strike, sigma, maturity);
  const double sd = sigma * std::sqrt(maturity);
  const double d1 = (std::log(s0 / strike) + (r + 0.5 * sigma * sigma) * maturity) / sd;
  const double d2 = d1 - sd;
  return strike * std::exp(-r * maturity) * std_normal_cdf(-d2) - s0 * std_normal_cdf(-d1);
}

double bs_call_closed_form(double s0, double strike, double r, double sigma, double maturity) {
  check_bs(s0, strike, sigma, maturity);
  const double sd = sigma * std::sqrt(maturity);
  const double d1 = (std::log(s0 / strike) + (r + 0.5 * sigma * sigma) * maturity) / sd;
  const double d2 = d1 - sd;
  return s0 * std_normal_cdf(d1) - strike * std::exp(-r * maturity) * std_normal_cdf(d2);
}

double lipschitz_error_bound(const QuantizationTree& tree, double lip, double r) {
  if (!(lip >= 0.0)) throw std::invalid_argument("lipschitz_error_bound: lip must be >= 0");
  if (tree.levels.empty()) throw std::invalid_argument("lipschitz_error_bound: empty tree");
  return std::exp(-r * tree.maturity) * lip * std::sqrt(tree.terminal().stats.distortion);
}

}  // namespace rmq
