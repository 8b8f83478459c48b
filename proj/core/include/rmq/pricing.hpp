#pragma once

#include "rmq/tree.hpp"

#include <functional>
#include <string>
#include <vector>

namespace rmq {

struct Payoff {
  enum class Kind { Put, Call, Custom };

  Kind kind = Kind::Put;
  double strike = 0.0;
  std::function<double(double)> fn;

  static Payoff put(double strike);
  static Payoff call(double strike);
  static Payoff custom(std::function<double(double)> fn);
  /// "put" or "call"; throws std::invalid_argument otherwise.
  static Payoff from_name(const std::string& name, double strike);

  double operator()(double x) const;
};

/// e^{-rT} sum_i payoff(x_i) w_i on the terminal level.
double price_european(const QuantizationTree& tree, const Payoff& payoff, double r);

/// Component i: sum_j P_k(i,j) f(x_j^{k+1}). Throws std::invalid_argument
/// when k is the terminal level or the transition was not kept.
std::vector<double> conditional_expectation(const QuantizationTree& tree, std::size_t k,
                                            const std::function<double(double)>& f);

double bs_put_closed_form(double s0, double strike, double r, double sigma, double maturity);
double bs_call_closed_form(double s0, double strike, double r, double sigma, double maturity);

/// e^{-rT} lip sqrt(D), with D the terminal distortion recorded in the tree:
/// the error of pricing a lip-Lipschitz payoff on the terminal quantizer
/// instead of the one-step law it quantizes.
double lipschitz_error_bound(const QuantizationTree& tree, double lip, double r);

}  // namespace rmq
