#include "tsselect/synthetic.hpp"

#include <cmath>
#include <string>

#include "tsselect/errors.hpp"
#include "tsselect/rng.hpp"

namespace tsselect {

std::string_view synthetic_kind_id(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::ar: return "ar";
    case SyntheticKind::sine: return "sine";
    case SyntheticKind::noise: return "noise";
    case SyntheticKind::trend: return "trend";
  }
  throw ConfigError("unknown synthetic kind enum value");
}

SyntheticKind parse_synthetic_kind(std::string_view id) {
  if (id == "ar") return SyntheticKind::ar;
  if (id == "sine") return SyntheticKind::sine;
  if (id == "noise") return SyntheticKind::noise;
  if (id == "trend") return SyntheticKind::trend;
  throw ConfigError("unknown synthetic kind '" + std::string(id) + "'");
}

TimeSeries ar_series(const std::vector<double>& coefficients, double noise_sd, std::size_t length,
                     std::uint64_t seed, const std::vector<double>& start, std::string id) {
  if (coefficients.empty()) throw ConfigError("ar_series: need at least one coefficient");
  const std::size_t order = coefficients.size();
  if (length < order + 1) throw ConfigError("ar_series: length too short for the order");

  std::vector<double> values(length, 0.0);
  for (std::size_t i = 0; i < order; ++i) {
    values[i] = i < start.size() ? start[i] : 0.0;
  }
  Rng rng(seed);
  for (std::size_t t = order; t < length; ++t) {
    double v = 0.0;
    for (std::size_t j = 0; j < order; ++j) v += coefficients[j] * values[t - j - 1];
    if (noise_sd > 0.0) v += noise_sd * rng.gaussian();
    values[t] = v;
  }
  return TimeSeries(std::move(id), std::move(values));
}

TimeSeries sine_series(std::size_t length, double points_per_period, double amplitude,
                       double noise_sd, std::uint64_t seed, std::string id) {
  if (!(points_per_period > 2.0)) throw ConfigError("sine_series: need > 2 points per period");
  std::vector<double> values(length);
  Rng rng(seed);
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (std::size_t t = 0; t < length; ++t) {
    values[t] = amplitude * std::sin(two_pi * static_cast<double>(t) / points_per_period);
    if (noise_sd > 0.0) values[t] += noise_sd * rng.gaussian();
  }
  return TimeSeries(std::move(id), std::move(values));
}

TimeSeries generate_synthetic(SyntheticKind kind, std::size_t length, std::uint64_t seed) {
  if (length < TimeSeries::kMinLength) {
    throw ConfigError("synthetic series length must be >= " +
                      std::to_string(TimeSeries::kMinLength));
  }
  const std::string id =
      std::string(synthetic_kind_id(kind)) + "-n" + std::to_string(length) + "-s" + std::to_string(seed);

  switch (kind) {
    case SyntheticKind::ar: {
      Rng rng(mix_seed(seed));
      // Stable region: both draws keep the characteristic roots inside the
      // unit circle (phi1+phi2 < 1, phi2-phi1 < 1, |phi2| < 1).
      const double phi1 = rng.uniform(0.3, 0.7);
      const double phi2 = rng.uniform(-0.4, 0.2);
      constexpr double kInnovationSd = 0.01;
      const std::size_t burn_in = 100;
      TimeSeries raw = ar_series({phi1, phi2}, kInnovationSd, length + burn_in, seed, {}, id);
      std::vector<double> values(raw.values().begin() + burn_in, raw.values().end());
      return TimeSeries(id, std::move(values));
    }
    case SyntheticKind::sine: {
      Rng rng(mix_seed(seed));
      const double period = rng.uniform(8.0, 40.0);
      return sine_series(length, period, 1.0, 0.01, seed, id);
    }
    case SyntheticKind::noise: {
      Rng rng(seed);
      std::vector<double> values(length);
      for (double& v : values) v = rng.gaussian();
      return TimeSeries(id, std::move(values));
    }
    case SyntheticKind::trend: {
      Rng rng(seed);
      std::vector<double> values(length);
      double level = 0.0;
      const double slope = 0.05;
      for (std::size_t t = 0; t < length; ++t) {
        // increments stay in [0.7, 1.3] * slope, so the series is strictly
        // increasing regardless of the draw
        level += slope * (1.0 + 0.3 * (2.0 * rng.uniform01() - 1.0));
        values[t] = level;
      }
      return TimeSeries(id, std::move(values));
    }
  }
  throw ConfigError("unknown synthetic kind enum value");
}

}  // namespace tsselect
