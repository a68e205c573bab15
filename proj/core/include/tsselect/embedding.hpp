#pragma once

#include <cstddef>
#include <vector>

#include "tsselect/matrix.hpp"
#include "tsselect/time_series.hpp"

namespace tsselect {

/// Regression view of a series for a given lag order: row i predicts the
/// value at time origin[i] from the lag_order values before it, most recent
/// lag first (column 0 holds the value one step back).
struct EmbeddedDataset {
  Matrix features;                   // (n - lag_order) x lag_order
  std::vector<double> targets;       // one per row
  std::size_t lag_order = 0;
  std::vector<std::size_t> origin;   // embedded row -> time index of its target

  std::size_t rows() const { return targets.size(); }

  /// Rows [begin, end) as a standalone dataset; origins are preserved.
  EmbeddedDataset slice(std::size_t begin, std::size_t end) const;
};

EmbeddedDataset embed(const TimeSeries& series, std::size_t lag_order);

/// Temporal split of embedded rows: the estimation part holds the first
/// floor(ratio * rows), the test part the remainder.
struct Partition {
  EmbeddedDataset estimation;
  EmbeddedDataset test;
  double ratio = 0.0;
};

Partition partition(const EmbeddedDataset& dataset, double ratio);

/// floor(frac * n) with a guard against representation error in frac * n
/// (0.7 * 10 must give 7).
std::size_t floor_frac(double frac, std::size_t n);

/// ceil(frac * n) with the matching guard.
std::size_t ceil_frac(double frac, std::size_t n);

}  // namespace tsselect
