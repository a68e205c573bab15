#include "tsselect/fnn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "tsselect/errors.hpp"

namespace tsselect {

namespace {

// Fraction of false neighbors at embedding dimension d. Points are the
// backward delay vectors (y_t, ..., y_{t-d+1}); the candidate coordinate is
// the next lag y_{t-d}. A neighbor is false when adding that lag inflates
// the distance by more than ratio_tol, or pushes it past spread_tol sigma.
double false_fraction(const std::vector<double>& y, std::size_t d, double sigma,
                      double ratio_tol, double spread_tol) {
  const std::size_t n = y.size();
  std::size_t evaluated = 0;
  std::size_t false_count = 0;

  for (std::size_t i = d; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = n;
    for (std::size_t j = d; j < n; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap <= d) continue;  // Theiler window: skip temporal neighbors
      double dist2 = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double diff = y[i - c] - y[j - c];
        dist2 += diff * diff;
      }
      if (dist2 < best) {
        best = dist2;
        best_j = j;
      }
    }
    if (best_j == n) continue;

    const double extra = y[i - d] - y[best_j - d];
    const double base = std::sqrt(best);
    const double inflated = std::sqrt(best + extra * extra);
    ++evaluated;
    // Pairs within the floating-point noise floor are coincident points;
    // their distance ratio carries no geometric information.
    if (inflated <= 1e-9 * sigma) continue;
    bool is_false = false;
    if (base == 0.0) {
      is_false = std::abs(extra) > 0.0;
    } else {
      is_false = std::abs(extra) / base > ratio_tol;
    }
    if (!is_false && inflated > spread_tol * sigma) is_false = true;
    if (is_false) ++false_count;
  }

  if (evaluated == 0) return 0.0;
  return static_cast<double>(false_count) / static_cast<double>(evaluated);
}

}  // namespace

LagSelection select_embedding_dimension(const TimeSeries& series, const FnnConfig& config) {
  if (config.max_lag < 1) throw ValidationError("FNN max_lag must be >= 1");
  if (!(config.distance_ratio_tol > 1.0) || !(config.spread_tol > 0.0) ||
      !(config.false_fraction_threshold > 0.0 && config.false_fraction_threshold < 1.0)) {
    throw ValidationError("FNN thresholds out of range");
  }

  const double sigma = series.stddev();
  if (sigma == 0.0) return {1, true};

  const std::size_t cap = std::min(config.max_lag, series.size() / 5);
  const std::size_t max_lag = std::max<std::size_t>(1, cap);

  for (std::size_t d = 1; d <= max_lag; ++d) {
    const double fraction = false_fraction(series.values(), d, sigma,
                                           config.distance_ratio_tol, config.spread_tol);
    if (fraction < config.false_fraction_threshold) return {d, false};
  }
  return {max_lag, false};
}

}  // namespace tsselect
