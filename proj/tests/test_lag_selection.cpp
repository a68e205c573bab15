#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "tsselect/errors.hpp"
#include "tsselect/fnn.hpp"
#include "tsselect/rng.hpp"
#include "tsselect/synthetic.hpp"
#include "tsselect/time_series.hpp"

using namespace tsselect;

namespace {

// Test-side false-nearest-neighbors oracle, written independently of the
// library: plain triple loop, no shortcuts, Kennel criteria with a Theiler
// window of width d.
std::size_t reference_fnn_values(const std::vector<double>& y, std::size_t max_lag,
                                 double ratio_tol, double spread_tol, double threshold) {
  double mean = 0.0;
  for (const double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double var = 0.0;
  for (const double v : y) var += (v - mean) * (v - mean);
  const double sigma = std::sqrt(var / static_cast<double>(y.size()));

  for (std::size_t d = 1; d <= max_lag; ++d) {
    std::size_t evaluated = 0;
    std::size_t false_count = 0;
    for (std::size_t i = d; i < y.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_j = y.size();
      for (std::size_t j = d; j < y.size(); ++j) {
        const std::size_t gap = i > j ? i - j : j - i;
        if (gap <= d) continue;
        double dist2 = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          dist2 += (y[i - c] - y[j - c]) * (y[i - c] - y[j - c]);
        }
        if (dist2 < best) {
          best = dist2;
          best_j = j;
        }
      }
      if (best_j == y.size()) continue;
      ++evaluated;
      const double extra = std::abs(y[i - d] - y[best_j - d]);
      const double base = std::sqrt(best);
      const double inflated = std::sqrt(best + extra * extra);
      if (inflated <= 1e-9 * sigma) continue;  // numerically coincident pair
      bool is_false;
      if (base == 0.0) {
        is_false = extra > 0.0;
      } else {
        is_false = extra / base > ratio_tol;
      }
      if (!is_false && inflated > spread_tol * sigma) is_false = true;
      if (is_false) ++false_count;
    }
    if (evaluated > 0 &&
        static_cast<double>(false_count) / static_cast<double>(evaluated) < threshold) {
      return d;
    }
    if (evaluated == 0) return d;
  }
  return max_lag;
}

std::size_t reference_fnn(const TimeSeries& series, const FnnConfig& cfg = {}) {
  const std::size_t cap = std::min(cfg.max_lag, series.size() / 5);
  return reference_fnn_values(series.values(), std::max<std::size_t>(1, cap),
                              cfg.distance_ratio_tol, cfg.spread_tol,
                              cfg.false_fraction_threshold);
}

}  // namespace

TEST_SUITE("lag-selection") {

TEST_CASE("constant series degenerates to lag 1") {
  const TimeSeries series("const", std::vector<double>(60, 3.25));
  const auto result = select_embedding_dimension(series);
  CHECK(result.lag_order == 1);
  CHECK(result.degenerate);
}

TEST_CASE("non-degenerate series carries no flag") {
  const auto series = generate_synthetic(SyntheticKind::ar, 120, 5);
  CHECK_FALSE(select_embedding_dimension(series).degenerate);
}

TEST_CASE("output stays within [1, max_lag]") {
  for (const std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    const auto noise = generate_synthetic(SyntheticKind::noise, 150, seed);
    FnnConfig cfg;
    cfg.max_lag = 6;
    const auto result = select_embedding_dimension(noise, cfg);
    CHECK(result.lag_order >= 1);
    CHECK(result.lag_order <= 6);
  }
}

TEST_CASE("determinism") {
  const auto series = generate_synthetic(SyntheticKind::ar, 300, 9);
  const auto a = select_embedding_dimension(series);
  const auto b = select_embedding_dimension(series);
  CHECK(a.lag_order == b.lag_order);
}

TEST_CASE("config validation") {
  const auto series = generate_synthetic(SyntheticKind::ar, 100, 1);
  FnnConfig cfg;
  cfg.distance_ratio_tol = 0.5;  // must exceed 1
  CHECK_THROWS_AS(select_embedding_dimension(series, cfg), ValidationError);
}

TEST_CASE("near-deterministic AR(1) needs one lag") {
  // Slow decay from 1 with faint innovations; the modal reference output
  // across seeds was recorded and frozen as 1.
  std::size_t library_ones = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto series = ar_series({0.99}, 1e-8, 500, seed, {1.0});
    const auto lib = select_embedding_dimension(series);
    const std::size_t ref = reference_fnn(series);
    CHECK(lib.lag_order == ref);
    if (lib.lag_order == 1) ++library_ones;
  }
  CHECK(library_ones == 5);
}

TEST_CASE("noiseless sine resolves with two lags") {
  const auto series = sine_series(400, 20.0);
  const auto lib = select_embedding_dimension(series);
  CHECK(lib.lag_order == reference_fnn(series));
  CHECK(lib.lag_order == 2);
}

TEST_CASE("library matches the reference on mixed seeded inputs") {
  FnnConfig cfg;
  cfg.max_lag = 8;
  for (const std::uint64_t seed : {11ull, 12ull, 13ull}) {
    for (const SyntheticKind kind :
         {SyntheticKind::ar, SyntheticKind::sine, SyntheticKind::trend}) {
      const auto series = generate_synthetic(kind, 140, seed);
      CHECK(select_embedding_dimension(series, cfg).lag_order == reference_fnn(series, cfg));
    }
  }
}

}  // TEST_SUITE
