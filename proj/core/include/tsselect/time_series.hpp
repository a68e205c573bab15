#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tsselect {

/// Ordered univariate series. Construction validates the invariants
/// (minimum length, finite values); instances are immutable afterwards.
class TimeSeries {
public:
  static constexpr std::size_t kMinLength = 30;

  TimeSeries(std::string id, std::vector<double> values, std::string source = {});

  const std::string& id() const { return id_; }
  const std::vector<double>& values() const { return values_; }
  const std::string& source() const { return source_; }
  std::size_t size() const { return values_.size(); }

  /// Population standard deviation; 0 for a constant series.
  double stddev() const;
  double mean() const;

private:
  std::string id_;
  std::vector<double> values_;
  std::string source_;
};

}  // namespace tsselect
