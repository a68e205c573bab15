#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "tsselect/time_series.hpp"

namespace tsselect {

enum class SyntheticKind { ar, sine, noise, trend };

std::string_view synthetic_kind_id(SyntheticKind kind);
SyntheticKind parse_synthetic_kind(std::string_view id);

/// Seeded series for fixtures and experiments:
///   ar    — order-2 auto-regression, coefficients drawn from the stable
///           region phi1 in [0.3,0.7], phi2 in [-0.4,0.2], innovation sd 0.01
///   sine  — unit sine, period drawn from [8,40] samples, additive noise sd 0.01
///   noise — standard white noise
///   trend — strictly increasing ramp with jittered increments
TimeSeries generate_synthetic(SyntheticKind kind, std::size_t length, std::uint64_t seed);

/// Auto-regressive recursion with explicit coefficients. start supplies the
/// first coefficient-count values (zeros when omitted); noise_sd = 0 gives
/// the bare deterministic recursion.
TimeSeries ar_series(const std::vector<double>& coefficients, double noise_sd, std::size_t length,
                     std::uint64_t seed, const std::vector<double>& start = {},
                     std::string id = "ar");

TimeSeries sine_series(std::size_t length, double points_per_period, double amplitude = 1.0,
                       double noise_sd = 0.0, std::uint64_t seed = 0, std::string id = "sine");

}  // namespace tsselect
