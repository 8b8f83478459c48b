#pragma once

#include <functional>
#include <map>
#include <string>

namespace rmq {

/// Conditional mean and standard deviation of one Euler step from x.
struct EulerParams {
  double mean = 0.0;   // x + dt * b(t, x)
  double stdev = 0.0;  // sqrt(dt) * sigma(t, x)
};

/// Name plus numeric parameters identifying a model; this is what gets
/// serialized alongside a tree.
struct ModelSpec {
  std::string name;
  std::map<std::string, double> params;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Scalar SDE dX = b(t,X) dt + sigma(t,X) dW.
///
/// The growth and Lipschitz constants are declarative: they feed the error
/// bounds and are never checked against the coefficient functions.
class DiffusionModel {
 public:
  using Coefficient = std::function<double(double t, double x)>;

  DiffusionModel(ModelSpec spec, Coefficient drift, Coefficient vol,
                 double linear_growth, double lip_drift, double lip_vol);

  const ModelSpec& spec() const noexcept { return spec_; }
  double drift(double t, double x) const { return drift_(t, x); }
  double vol(double t, double x) const { return vol_(t, x); }

  double linear_growth() const noexcept { return linear_growth_; }
  double lip_drift() const noexcept { return lip_drift_; }
  double lip_vol() const noexcept { return lip_vol_; }

 private:
  ModelSpec spec_;
  Coefficient drift_;
  Coefficient vol_;
  double linear_growth_;
  double lip_drift_;
  double lip_vol_;
};

/// Throws std::invalid_argument for dt <= 0 and ModelEvaluationError when a
/// coefficient is non-finite or the volatility is negative.
EulerParams euler_params(const DiffusionModel& model, double t, double dt, double x);

/// x + dt b(t,x) + sqrt(dt) sigma(t,x) z
double euler_step(const DiffusionModel& model, double t, double dt, double x, double z);

namespace models {

/// b = 0, sigma = 1.
DiffusionModel brownian();

/// b = r x, sigma = vol x. Requires vol > 0.
DiffusionModel black_scholes(double r, double vol);

/// b = r x, sigma = theta |x|^{delta+1} / sqrt(1 + x^2). Requires theta > 0
/// and delta in (0,1). The absolute value extends the coefficient to x < 0,
/// where the Gaussian one-step law can put (small) mass.
DiffusionModel pseudo_cev(double r, double theta, double delta);

/// Rebuilds a built-in model from its spec ("brownian", "black-scholes",
/// "pseudo-cev"). Throws std::invalid_argument for unknown names or missing
/// parameters.
DiffusionModel from_spec(const ModelSpec& spec);

}  // namespace models

}  // namespace rmq
