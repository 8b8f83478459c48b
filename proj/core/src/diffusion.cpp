#include "rmq/diffusion.hpp"

#include "rmq/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rmq {

DiffusionModel::DiffusionModel(ModelSpec spec, Coefficient drift, Coefficient vol,
                               double linear_growth, double lip_drift,
                               double lip_vol)
    : spec_(std::move(spec)),
      drift_(std::move(drift)),
      vol_(std::move(vol)),
      linear_growth_(linear_growth),
      lip_drift_(lip_drift),
      lip_vol_(lip_vol) {
  if (!drift_ || !vol_) {
    throw std::invalid_argument("DiffusionModel: missing coefficient function");
  }
  if (!(linear_growth_ >= 0.0) || !(lip_drift_ >= 0.0) || !(lip_vol_ >= 0.0)) {
    throw std::invalid_argument("DiffusionModel: constants must be nonnegative");
  }
}

EulerParams euler_params(const DiffusionModel& model, double t, double dt, double x) {
  if (!(dt > 0.0)) throw std::invalid_argument("euler_params: dt must be > 0");
  const double b = model.drift(t, x);
  const double s = model.vol(t, x);
  if (!std::isfinite(b) || !std::isfinite(s) || s < 0.0) {
    std::ostringstream msg;
    msg << "model '" << model.spec().name << "' evaluated to b=" << b
        << ", sigma=" << s << " at t=" << t << ", x=" << x;
    throw ModelEvaluationError(msg.str());
  }
  return {x + dt * b, std::sqrt(dt) * s};
}

double euler_step(const DiffusionModel& model, double t, double dt, double x, double z) {
  const EulerParams p = euler_params(model, t, dt, x);
  return p.mean + p.stdev * z;
}

namespace models {

namespace {

double require(const ModelSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    throw std::invalid_argument("model '" + spec.name + "' needs parameter '" +
                                key + "'");
  }
  return it->second;
}

// sup over x >= 0 of d/dx [x^{delta+1} / sqrt(1+x^2)], located by a dense
// log-spaced scan refined with golden-section search.
double pseudo_cev_shape_lipschitz(double delta) {
  auto slope = [delta](double x) {
    const double s = 1.0 + x * x;
    return std::pow(x, delta) * ((delta + 1.0) + delta * x * x) / (s * std::sqrt(s));
  };
  double best_x = 0.0;
  double best = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = std::pow(10.0, -6.0 + 12.0 * i / 4000.0);
    const double s = slope(x);
    if (s > best) {
      best = s;
      best_x = x;
    }
  }
  double lo = best_x / 1.01;
  double hi = best_x * 1.01;
  constexpr double kInvPhi = 0.6180339887498949;
  for (int it = 0; it < 100; ++it) {
    const double a = hi - kInvPhi * (hi - lo);
    const double b = lo + kInvPhi * (hi - lo);
    if (slope(a) > slope(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return std::max(best, slope(0.5 * (lo + hi)));
}

}  // namespace

DiffusionModel brownian() {
  return DiffusionModel({"brownian", {}},
                        [](double, double) { return 0.0; },
                        [](double, double) { return 1.0; },
                        1.0, 0.0, 0.0);
}

DiffusionModel black_scholes(double r, double vol) {
  if (!std::isfinite(r)) throw std::invalid_argument("black_scholes: r must be finite");
  if (!(vol > 0.0) || !std::isfinite(vol)) {
    throw std::invalid_argument("black_scholes: sigma must be > 0");
  }
  return DiffusionModel({"black-scholes", {{"r", r}, {"sigma", vol}}},
                        [r](double, double x) { return r * x; },
                        [vol](double, double x) { return vol * std::abs(x); },
                        std::max(std::abs(r), vol), std::abs(r), vol);
}

DiffusionModel pseudo_cev(double r, double theta, double delta) {
  if (!std::isfinite(r)) throw std::invalid_argument("pseudo_cev: r must be finite");
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("pseudo_cev: theta must be > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("pseudo_cev: delta must lie in (0,1)");
  }
  // |x|^{delta+1}/sqrt(1+x^2) <= |x|^delta <= 1 + |x|, so L = max(|r|, theta).
  return DiffusionModel(
      {"pseudo-cev", {{"r", r}, {"theta", theta}, {"delta", delta}}},
      [r](double, double x) { return r * x; },
      [theta, delta](double, double x) {
        const double a = std::abs(x);
        return theta * std::pow(a, delta + 1.0) / std::sqrt(1.0 + x * x);
      },
      std::max(std::abs(r), theta), std::abs(r),
      theta * pseudo_cev_shape_lipschitz(delta));
}

DiffusionModel from_spec(const ModelSpec& spec) {
  if (spec.name == "brownian") return brownian();
  if (spec.name == "black-scholes") {
    return black_scholes(require(spec, "r"), require(spec, "sigma"));
  }
  if (spec.name == "pseudo-cev") {
    return pseudo_cev(require(spec, "r"), require(spec, "theta"),
                      require(spec, "delta"));
  }
  throw std::invalid_argument("unknown model '" + spec.name + "'");
}

}  // namespace models

}  // namespace rmq
