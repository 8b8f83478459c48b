#pragma once

// Allocation of a total grid budget N across the levels 0..n of a tree.

#include <cstddef>
#include <span>
#include <vector>

namespace rmq {

/// sizes[0] = 1 and floor(N/n) points for every later level; the remainder
/// goes to the last level. Throws std::invalid_argument when N < n or n == 0.
std::vector<std::size_t> dispatch_equal(std::size_t budget, std::size_t steps);

enum class Rounding { Nearest, Floor };

/// sizes[0] = 1 and, for l >= 1, a_l^{d/(d+1)} N / sum_k a_k^{d/(d+1)}
/// rounded as requested and clamped below at 1. Floor is the textbook
/// formula; Nearest reproduces the published Brownian schedules.
std::vector<std::size_t> dispatch_optimal(std::span<const double> a, std::size_t budget,
                                          int dimension = 1,
                                          Rounding rounding = Rounding::Nearest);

}  // namespace rmq
