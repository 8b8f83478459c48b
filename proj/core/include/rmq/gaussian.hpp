#pragma once

// Standard normal numerics shared by the quantization engine and the
// Monte Carlo baseline.

namespace rmq {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

/// Density of N(0,1). Returns 0 at +/-infinity.
double std_normal_pdf(double z) noexcept;

/// Distribution function of N(0,1), accurate to ~1e-16 absolute.
/// Accepts +/-infinity.
double std_normal_cdf(double z) noexcept;

/// Inverse of std_normal_cdf on (0,1); returns -inf at 0 and +inf at 1.
double std_normal_quantile(double u);

/// E|Z|^p for Z ~ N(0,1), restricted to p in (2,3] (the moment range used by
/// the error bounds). Throws std::invalid_argument outside that range.
double abs_moment(double p);

}  // namespace rmq
