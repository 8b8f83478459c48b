#include "rmq/distortion.hpp"

#include "parallel.hpp"
#include "rmq/error.hpp"
#include "rmq/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rmq {

namespace {

constexpr std::size_t kComponentsPerBlock = 128;

struct Accumulator {
  double distortion = 0.0;
  std::vector<double> gradient;
  std::vector<double> diag;
  std::vector<double> sub;
  std::vector<double> super;
  std::vector<double> mass;
  std::uint64_t pairs = 0;

  Accumulator(std::size_t n, bool with_hessian)
      : gradient(n, 0.0), mass(n, 0.0) {
    if (with_hessian) {
      diag.assign(n, 0.0);
      sub.assign(n - 1, 0.0);
      super.assign(n - 1, 0.0);
    }
  }

  void add(const Accumulator& other) {
    distortion += other.distortion;
    pairs += other.pairs;
    for (std::size_t j = 0; j < gradient.size(); ++j) {
      gradient[j] += other.gradient[j];
      mass[j] += other.mass[j];
    }
    for (std::size_t j = 0; j < diag.size(); ++j) diag[j] += other.diag[j];
    for (std::size_t j = 0; j < sub.size(); ++j) {
      sub[j] += other.sub[j];
      super[j] += other.super[j];
    }
  }
};

// Scratch buffers reused across components of one block.
struct Scratch {
  std::vector<double> cdf;
  std::vector<double> pdf;
  std::vector<double> zpdf;
};

void accumulate_dirac(const Component& c, const Grid& grid, Accumulator& acc) {
  const std::size_t j = grid.cell_of(c.mean);
  const double diff = grid[j] - c.mean;
  acc.distortion += c.weight * diff * diff;
  acc.gradient[j] += c.weight * diff;
  acc.mass[j] += c.weight;
  if (!acc.diag.empty()) acc.diag[j] += c.weight;
  acc.pairs += 1;
}

void accumulate_gaussian(const Component& c, const Grid& grid,
                         const std::vector<double>& mids, double cutoff,
                         Scratch& scratch, Accumulator& acc) {
  const std::size_t n = grid.size();
  const double m = c.mean;
  const double v = c.stdev;
  const double p = c.weight;

  // Finite midpoints live at indices 1..n-1. Outside [klo, khi] the standard
  // normal cdf is exactly 0 or 1 and the density exactly 0 (for cutoff 40).
  const auto finite_begin = mids.begin() + 1;
  const auto finite_end = mids.end() - 1;
  std::size_t klo = 1;
  std::size_t khi = n - 1;
  if (std::isfinite(cutoff)) {
    klo = static_cast<std::size_t>(
        std::lower_bound(finite_begin, finite_end, m - cutoff * v) - mids.begin());
    khi = static_cast<std::size_t>(
              std::upper_bound(finite_begin, finite_end, m + cutoff * v) -
              mids.begin()) - 1;
  }
  const std::size_t jstart = klo - 1;
  const std::size_t jend = std::min(khi, n - 1);

  scratch.cdf.resize(n + 1);
  scratch.pdf.resize(n + 1);
  scratch.zpdf.resize(n + 1);
  for (std::size_t k = jstart; k <= jend + 1; ++k) {
    if (k == 0 || k < klo) {
      scratch.cdf[k] = 0.0;
      scratch.pdf[k] = 0.0;
      scratch.zpdf[k] = 0.0;
    } else if (k == n || k > khi) {
      scratch.cdf[k] = 1.0;
      scratch.pdf[k] = 0.0;
      scratch.zpdf[k] = 0.0;
    } else {
      const double z = (mids[k] - m) / v;
      const double phi = std_normal_pdf(z);
      scratch.cdf[k] = std_normal_cdf(z);
      scratch.pdf[k] = phi;
      scratch.zpdf[k] = z * phi;
    }
  }

  const bool with_hessian = !acc.diag.empty();
  const double quarter_p_over_v = 0.25 * p / v;
  for (std::size_t j = jstart; j <= jend; ++j) {
    const double xj = grid[j];
    const double cell = scratch.cdf[j + 1] - scratch.cdf[j];
    const double pdf_lo = scratch.pdf[j];
    const double pdf_hi = scratch.pdf[j + 1];
    const double offset = m - xj;

    acc.mass[j] += p * cell;
    acc.gradient[j] += p * (-offset * cell + v * (pdf_hi - pdf_lo));
    acc.distortion +=
        p * ((offset * offset + v * v) * cell +
             v * v * (scratch.zpdf[j] - scratch.zpdf[j + 1]) +
             2.0 * v * offset * (pdf_lo - pdf_hi));

    if (with_hessian) {
      double d = p * cell;
      if (j + 1 < n) {
        const double gap = grid[j + 1] - xj;
        d -= quarter_p_over_v * pdf_hi * gap;
        acc.super[j] -= quarter_p_over_v * gap * pdf_hi;
      }
      if (j > 0) {
        const double gap = xj - grid[j - 1];
        d -= quarter_p_over_v * pdf_lo * gap;
        acc.sub[j - 1] -= quarter_p_over_v * gap * pdf_lo;
      }
      acc.diag[j] += d;
    }
  }
  acc.pairs += jend - jstart + 1;
}

Accumulator run(const GaussianMixture& law, const Grid& grid,
                const EngineOptions& options, bool with_hessian) {
  if (grid.empty()) throw std::invalid_argument("distortion: empty grid");
  const std::size_t n = grid.size();
  const auto mids = midpoints(grid);
  const auto comps = law.components();
  const std::size_t blocks =
      std::max<std::size_t>(1, (comps.size() + kComponentsPerBlock - 1) /
                                   kComponentsPerBlock);

  std::vector<Accumulator> partial(blocks, Accumulator(n, with_hessian));
  detail::for_each_block(blocks, options.threads, [&](std::size_t b) {
    Scratch scratch;
    Accumulator& acc = partial[b];
    const std::size_t first = b * kComponentsPerBlock;
    const std::size_t last = std::min(comps.size(), first + kComponentsPerBlock);
    for (std::size_t i = first; i < last; ++i) {
      const Component& c = comps[i];
      if (c.weight == 0.0) continue;
      if (c.stdev == 0.0) {
        accumulate_dirac(c, grid, acc);
      } else {
        accumulate_gaussian(c, grid, mids, options.tail_cutoff, scratch, acc);
      }
    }
  });

  Accumulator total = std::move(partial.front());
  for (std::size_t b = 1; b < blocks; ++b) total.add(partial[b]);
  return total;
}

}  // namespace

double DistortionEval::gradient_sup_norm() const noexcept {
  double s = 0.0;
  for (double x : gradient) {
    if (std::isnan(x)) return x;
    s = std::max(s, std::abs(x));
  }
  return s;
}

DistortionEval evaluate(const GaussianMixture& law, const Grid& grid,
                        const EngineOptions& options) {
  Accumulator acc = run(law, grid, options, true);

  // Row j+1's sub-diagonal and row j's super-diagonal are accumulated from
  // their own printed forms; the exact Hessian is symmetric.
  for (std::size_t j = 0; j < acc.sub.size(); ++j) {
    if (std::abs(acc.sub[j] - acc.super[j]) > 1e-12) {
      throw std::logic_error("hessian: asymmetric off-diagonal at row " +
                             std::to_string(j));
    }
  }

  DistortionEval out;
  out.distortion = acc.distortion;
  out.gradient = std::move(acc.gradient);
  out.cell_mass = std::move(acc.mass);
  out.hessian.diag = std::move(acc.diag);
  out.hessian.sub = std::move(acc.sub);
  out.hessian.super = std::move(acc.super);
  out.pair_evaluations = acc.pairs;
  return out;
}

double distortion(const GaussianMixture& law, const Grid& grid) {
  return run(law, grid, {}, false).distortion;
}

std::vector<double> gradient(const GaussianMixture& law, const Grid& grid) {
  return run(law, grid, {}, false).gradient;
}

Tridiagonal hessian(const GaussianMixture& law, const Grid& grid) {
  return evaluate(law, grid).hessian;
}

std::vector<double> cell_masses(const GaussianMixture& law, const Grid& grid) {
  return run(law, grid, {}, false).mass;
}

Grid newton_step(const GaussianMixture& law, const Grid& grid, int max_halvings) {
  const DistortionEval eval = evaluate(law, grid);
  const std::vector<double> direction =
      solve_tridiagonal(eval.hessian, eval.gradient);

  std::vector<double> candidate(grid.size());
  double step = 1.0;
  for (int halving = 0; halving <= max_halvings; ++halving) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      candidate[j] = grid[j] - step * direction[j];
    }
    if (Grid::is_valid(candidate)) return Grid(candidate);
    step *= 0.5;
  }
  throw ConvergenceError("newton_step: ordering not restored after " +
                             std::to_string(max_halvings) + " halvings",
                         0, eval.gradient_sup_norm());
}

Grid lloyd_step(const GaussianMixture& /*law*/, const Grid& grid,
                const DistortionEval& at_grid) {
  std::vector<double> next(grid.begin(), grid.end());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double mass = at_grid.cell_mass[j];
    if (mass > 1e-300) next[j] = grid[j] - at_grid.gradient[j] / mass;
  }
  if (!Grid::is_valid(next)) return grid;
  return Grid(std::move(next));
}

NewtonResult newton_solve(const GaussianMixture& law, Grid start,
                          const NewtonOptions& options) {
  NewtonResult result;
  result.grid = std::move(start);
  result.eval = evaluate(law, result.grid, options.engine);
  result.passes = 1;
  result.pair_evaluations = result.eval.pair_evaluations;

  const std::size_t n = result.grid.size();
  std::vector<double> candidate(n);

  for (int it = 0; it < options.max_iterations; ++it) {
    const double residual = result.eval.gradient_sup_norm();
    if (!std::isfinite(residual)) {
      throw ConvergenceError("newton_solve: non-finite gradient", it, residual);
    }
    if (residual <= options.tolerance) break;

    std::vector<double> direction;
    try {
      direction = solve_tridiagonal(result.eval.hessian, result.eval.gradient);
    } catch (const SingularSystemError&) {
      direction.clear();
    }
    if (!direction.empty()) {
      // Away from a local minimum the Hessian can be indefinite and the
      // Newton direction point uphill; Lloyd handles those iterations.
      double slope = 0.0;
      bool positive = true;
      for (std::size_t j = 0; j < n; ++j) {
        slope += result.eval.gradient[j] * direction[j];
        positive = positive && result.eval.hessian.diag[j] > 0.0;
      }
      if (!positive || !(slope > 0.0)) direction.clear();
    }

    bool accepted = false;
    Grid next;
    DistortionEval next_eval;
    if (!direction.empty()) {
      const double limit =
          result.eval.distortion * (1.0 + 1e-12) + 1e-300;
      double step = 1.0;
      for (int halving = 0; halving <= options.max_halvings; ++halving) {
        for (std::size_t j = 0; j < n; ++j) {
          candidate[j] = result.grid[j] - step * direction[j];
        }
        step *= 0.5;
        if (!Grid::is_valid(candidate)) continue;
        next = Grid(candidate);
        next_eval = evaluate(law, next, options.engine);
        ++result.passes;
        result.pair_evaluations += next_eval.pair_evaluations;
        if (!options.reject_worsening || next_eval.distortion <= limit) {
          accepted = true;
          break;
        }
      }
    }

    if (!accepted) {
      next = lloyd_step(law, result.grid, result.eval);
      if (next == result.grid) {
        throw ConvergenceError("newton_solve: no admissible step", it, residual);
      }
      next_eval = evaluate(law, next, options.engine);
      ++result.passes;
      result.pair_evaluations += next_eval.pair_evaluations;
      ++result.lloyd_fallbacks;
    }

    result.grid = std::move(next);
    result.eval = std::move(next_eval);
    ++result.iterations;
  }

  result.converged = result.eval.gradient_sup_norm() <= options.tolerance;
  return result;
}

}  // namespace rmq
