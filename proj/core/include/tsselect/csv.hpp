#pragma once

#include <filesystem>

#include "tsselect/time_series.hpp"

namespace tsselect {

/// Loads one series from a CSV file. Accepted layouts, header required:
///   value            — one column of readings in chronological order
///   timestamp,value  — timestamp is validated as present but not retained
/// The series id is the file stem. Malformed rows raise CsvError with the
/// 1-based line number.
TimeSeries load_series_csv(const std::filesystem::path& path);

/// Writes a single-column `value` CSV for the series.
void write_series_csv(const TimeSeries& series, const std::filesystem::path& path);

}  // namespace tsselect
