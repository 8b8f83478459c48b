#pragma once

#include <span>
#include <vector>

namespace rmq {

/// Tridiagonal matrix: sub has N-1 entries (row j+1, column j), super has N-1
/// entries (row j, column j+1).
struct Tridiagonal {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> super;

  Tridiagonal() = default;
  explicit Tridiagonal(std::size_t n)
      : sub(n > 0 ? n - 1 : 0), diag(n), super(n > 0 ? n - 1 : 0) {}

  std::size_t size() const noexcept { return diag.size(); }
  bool consistent() const noexcept {
    return sub.size() + 1 == diag.size() && super.size() + 1 == diag.size();
  }

  /// y = T x
  std::vector<double> multiply(std::span<const double> x) const;
};

/// Thomas elimination. Throws SingularSystemError on a pivot whose magnitude
/// is below 1e-300 or below 1e-14 times the row scale, and
/// std::invalid_argument on a dimension mismatch.
std::vector<double> solve_tridiagonal(const Tridiagonal& t,
                                      std::span<const double> rhs);

}  // namespace rmq
