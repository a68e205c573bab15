#pragma once

#include <cstddef>

#include "tsselect/time_series.hpp"

namespace tsselect {

/// Knobs for the false-nearest-neighbors lag search. Defaults are the
/// classical ones; max_lag is additionally capped at n/5 per series.
struct FnnConfig {
  std::size_t max_lag = 30;
  double distance_ratio_tol = 10.0;   // inflation factor on the added coordinate
  double spread_tol = 2.0;            // inflated distance vs series stddev
  double false_fraction_threshold = 0.01;
};

struct LagSelection {
  std::size_t lag_order = 1;
  bool degenerate = false;  // constant series: no structure to probe
};

/// Smallest dimension d in [1, max_lag] whose false-neighbor fraction falls
/// below the threshold; max_lag if none qualifies. Exhaustive O(N^2) search
/// with a Theiler exclusion window of width d.
LagSelection select_embedding_dimension(const TimeSeries& series, const FnnConfig& config = {});

}  // namespace tsselect
