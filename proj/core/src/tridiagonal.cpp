#include "rmq/tridiagonal.hpp"

#include "rmq/error.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rmq {

std::vector<double> Tridiagonal::multiply(std::span<const double> x) const {
  if (!consistent() || x.size() != diag.size()) {
    throw std::invalid_argument("Tridiagonal::multiply: dimension mismatch");
  }
  const std::size_t n = diag.size();
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = diag[j] * x[j];
    if (j > 0) s += sub[j - 1] * x[j - 1];
    if (j + 1 < n) s += super[j] * x[j + 1];
    y[j] = s;
  }
  return y;
}

std::vector<double> solve_tridiagonal(const Tridiagonal& t,
                                      std::span<const double> rhs) {
  const std::size_t n = t.size();
  if (!t.consistent() || rhs.size() != n || n == 0) {
    throw std::invalid_argument("solve_tridiagonal: dimension mismatch");
  }

  auto check_pivot = [&](double pivot, std::size_t row) {
    double scale = std::abs(t.diag[row]);
    if (row > 0) scale += std::abs(t.sub[row - 1]);
    if (row + 1 < n) scale += std::abs(t.super[row]);
    if (!std::isfinite(pivot) || std::abs(pivot) < 1e-300 ||
        std::abs(pivot) < 1e-14 * scale) {
      throw SingularSystemError(
          "solve_tridiagonal: zero pivot at row " + std::to_string(row), row);
    }
  };

  std::vector<double> c_prime(n);
  std::vector<double> x(n);

  double pivot = t.diag[0];
  check_pivot(pivot, 0);
  c_prime[0] = n > 1 ? t.super[0] / pivot : 0.0;
  x[0] = rhs[0] / pivot;
  for (std::size_t j = 1; j < n; ++j) {
    pivot = t.diag[j] - t.sub[j - 1] * c_prime[j - 1];
    check_pivot(pivot, j);
    c_prime[j] = j + 1 < n ? t.super[j] / pivot : 0.0;
    x[j] = (rhs[j] - t.sub[j - 1] * x[j - 1]) / pivot;
  }
  for (std::size_t j = n - 1; j-- > 0;) {
    x[j] -= c_prime[j] * x[j + 1];
  }
  return x;
}

}  // namespace rmq
