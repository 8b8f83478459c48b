#include "rmq/bounds.hpp"

#include "rmq/diffusion.hpp"
#include "rmq/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rmq {

void BoundParams::validate() const {
  if (!(p > 2.0 && p <= 3.0)) throw std::invalid_argument("BoundParams: p must lie in (2,3]");
  if (!(dt > 0.0)) throw std::invalid_argument("BoundParams: dt must be > 0");
  if (d < 1) throw std::invalid_argument("BoundParams: d must be >= 1");
  if (!(L >= 0.0) || !(lip_b >= 0.0) || !(lip_sigma >= 0.0)) {
    throw std::invalid_argument("BoundParams: constants must be nonnegative");
  }
  if (!(K_universal > 0.0)) throw std::invalid_argument("BoundParams: K must be > 0");
  if (!std::isfinite(x0)) throw std::invalid_argument("BoundParams: x0 must be finite");
}

BoundParams bound_params(const DiffusionModel& model, double x0, double dt, double p) {
  BoundParams params;
  params.p = p;
  params.L = model.linear_growth();
  params.lip_b = model.lip_drift();
  params.lip_sigma = model.lip_vol();
  params.dt = dt;
  params.x0 = x0;
  params.validate();
  return params;
}

double kappa_p(const BoundParams& params) {
  params.validate();
  const double p = params.p;
  return (p + 1.0) * (p - 2.0) / 2.0 + 2.0 * p * params.L;
}

double big_k_p(const BoundParams& params) {
  params.validate();
  const double p = params.p;
  return std::pow(2.0, p - 1.0) * std::pow(params.L, p) *
         (1.0 + p + std::pow(params.dt, p / 2.0 - 1.0)) * abs_moment(p);
}

double c_b_sigma(const BoundParams& params) {
  params.validate();
  return params.lip_b + 0.5 * params.lip_sigma * params.lip_sigma;
}

namespace {

double a_formula(double t_l, double elapsed, double kappa_time, const BoundParams& params) {
  const double p = params.p;
  const double kappa = kappa_p(params);
  const double big_k = big_k_p(params);
  const double sum = kappa + big_k;
  if (sum == 0.0) throw std::invalid_argument("a_coeff: kappa_p + K_p == 0");
  const double growth = std::exp(sum * t_l);
  const double bracket = growth * std::pow(std::abs(params.x0), p) +
                         (std::exp(kappa * kappa_time) * params.L + big_k) / sum *
                             std::expm1(sum * t_l);
  return std::exp(c_b_sigma(params) * elapsed / p) * std::pow(bracket, 1.0 / p);
}

}  // namespace

double a_coeff(std::size_t ell, double t_k, const BoundParams& params, AReading reading) {
  const double t_l = static_cast<double>(ell) * params.dt;
  if (t_l > t_k * (1.0 + 1e-12) + 1e-15) {
    throw std::invalid_argument("a_coeff: t_l must not exceed t_k");
  }
  const double a = a_formula(t_l, std::max(t_k - t_l, 0.0), params.dt, params);
  return reading == AReading::Statement ? a : std::pow(a, 1.0 / params.p);
}

double uniform_a_bound(double horizon, const BoundParams& params) {
  return a_formula(horizon, horizon, horizon, params);
}

double brownian_a(std::size_t ell, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("brownian_a: dt must be > 0");
  const double t = static_cast<double>(ell) * dt;
  const double inner = std::sqrt(2.0 / std::numbers::pi) * (4.0 + std::sqrt(dt)) *
                       std::expm1(2.0 * t);
  return std::cbrt(inner);
}

double theorem_bound(std::size_t k, std::span<const std::size_t> sizes,
                     std::span<const double> t_grid, const BoundParams& params,
                     AReading reading) {
  if (k >= sizes.size() || k >= t_grid.size()) {
    throw std::invalid_argument("theorem_bound: k out of range");
  }
  double sum = 0.0;
  for (std::size_t l = 0; l <= k; ++l) {
    if (sizes[l] == 0) throw std::invalid_argument("theorem_bound: sizes must be >= 1");
    double a = a_formula(t_grid[l], t_grid[k] - t_grid[l], params.dt, params);
    if (reading == AReading::Proof) a = std::pow(a, 1.0 / params.p);
    sum += a * std::pow(static_cast<double>(sizes[l]), -1.0 / params.d);
  }
  return params.K_universal * sum;
}

}  // namespace rmq
