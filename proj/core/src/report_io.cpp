#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsselect/errors.hpp"
#include "tsselect/experiment.hpp"
#include "tsselect/metrics.hpp"

namespace tsselect {

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// RFC-4180: CRLF line endings, '.' decimal separator. None of the emitted
// fields contain commas or quotes, so no quoting pass is needed.
class CsvWriter {
public:
  explicit CsvWriter(const std::filesystem::path& path) : out_(path) {
    if (!out_) throw IoError("cannot write " + path.string());
    path_ = path;
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << fields[i];
    }
    out_ << "\r\n";
    if (!out_) throw IoError("write failed for " + path_.string());
  }

private:
  std::ofstream out_;
  std::filesystem::path path_;
};

std::vector<std::string> stats_fields(const SummaryRow& row) {
  std::vector<std::string> fields;
  fields.push_back(std::string(method_id(row.estimator)));
  fields.push_back(std::string(aggregation_id(row.aggregation)));
  fields.push_back(std::to_string(row.count));
  fields.push_back(std::to_string(row.excluded));
  if (row.count == 0) {
    fields.insert(fields.end(), 7, "");
    return fields;
  }
  fields.push_back(format_double(row.stats.accuracy));
  if (row.stats.average_loss) {
    fields.push_back(format_double(row.stats.average_loss->median));
    fields.push_back(format_double(row.stats.average_loss->iqr));
    fields.push_back(format_double(row.stats.average_loss->mean));
  } else {
    fields.insert(fields.end(), 3, "");  // every selection hit the oracle
  }
  fields.push_back(format_double(row.stats.overall_loss.median));
  fields.push_back(format_double(row.stats.overall_loss.iqr));
  fields.push_back(format_double(row.stats.overall_loss.mean));
  return fields;
}

const std::vector<std::string> kSummaryHeader = {
    "estimator", "aggregation", "count",      "excluded",   "accuracy", "al_median",
    "al_iqr",    "al_mean",     "oal_median", "oal_iqr",    "oal_mean"};

void write_summary_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  CsvWriter csv(path);
  csv.row(kSummaryHeader);
  for (const auto& row : summarize_records(records)) csv.row(stats_fields(row));
}

void write_strata_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path,
                      std::size_t threshold) {
  CsvWriter csv(path);
  std::vector<std::string> header = kSummaryHeader;
  header.insert(header.begin(), "stratum");
  csv.row(header);

  const std::string below = "lt" + std::to_string(threshold);
  const std::string above = "ge" + std::to_string(threshold);
  for (const bool is_below : {true, false}) {
    std::vector<RunRecord> group;
    for (const auto& record : records) {
      if ((record.series_length < threshold) == is_below) group.push_back(record);
    }
    for (const auto& row : summarize_records(group)) {
      std::vector<std::string> fields = stats_fields(row);
      fields.insert(fields.begin(), is_below ? below : above);
      csv.row(fields);
    }
  }
}

void write_timing_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  CsvWriter csv(path);
  csv.row({"estimator", "runs", "fit_count_min", "fit_count_max", "wall_s_min", "wall_s_p25",
           "wall_s_median", "wall_s_p75", "wall_s_max"});
  for (const Method method : kAllMethods) {
    std::vector<double> times;
    std::size_t fit_min = 0;
    std::size_t fit_max = 0;
    for (const auto& record : records) {
      if (record.estimator != method) continue;
      times.push_back(record.wall_time_seconds);
      fit_min = times.size() == 1 ? record.fit_count : std::min(fit_min, record.fit_count);
      fit_max = std::max(fit_max, record.fit_count);
    }
    if (times.empty()) continue;
    std::sort(times.begin(), times.end());
    csv.row({std::string(method_id(method)), std::to_string(times.size()),
             std::to_string(fit_min), std::to_string(fit_max), format_double(times.front()),
             format_double(quantile_type7(times, 0.25)), format_double(quantile_type7(times, 0.5)),
             format_double(quantile_type7(times, 0.75)), format_double(times.back())});
  }
}

}  // namespace

void write_runs_jsonl(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& record : records) {
    nlohmann::json j;
    j["series_id"] = record.series_id;
    j["n"] = record.series_length;
    j["p"] = record.lag_order;
    j["estimator"] = std::string(method_id(record.estimator));
    j["aggregation"] = std::string(aggregation_id(record.aggregation));
    j["chosen_model"] = record.chosen_model;
    j["oracle_model"] = record.oracle_model;
    j["chosen_test_rmse"] = record.chosen_test_rmse;
    j["oracle_test_rmse"] = record.oracle_test_rmse;
    if (record.loss_defined) {
      j["loss_percent"] = record.loss_percent;
    } else {
      j["loss_percent"] = nullptr;
    }
    j["hit"] = record.hit;
    j["wall_time_seconds"] = record.wall_time_seconds;
    j["fit_count"] = record.fit_count;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<RunRecord> read_runs_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<RunRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      RunRecord record;
      record.series_id = j.at("series_id").get<std::string>();
      record.series_length = j.at("n").get<std::size_t>();
      record.lag_order = j.at("p").get<std::size_t>();
      record.estimator = parse_method(j.at("estimator").get<std::string>());
      record.aggregation = parse_aggregation(j.at("aggregation").get<std::string>());
      record.chosen_model = j.at("chosen_model").get<std::string>();
      record.oracle_model = j.at("oracle_model").get<std::string>();
      record.chosen_test_rmse = j.at("chosen_test_rmse").get<double>();
      record.oracle_test_rmse = j.at("oracle_test_rmse").get<double>();
      if (j.at("loss_percent").is_null()) {
        record.loss_defined = false;
        record.loss_percent = std::numeric_limits<double>::quiet_NaN();
      } else {
        record.loss_defined = true;
        record.loss_percent = j.at("loss_percent").get<double>();
      }
      record.hit = j.at("hit").get<bool>();
      record.wall_time_seconds = j.at("wall_time_seconds").get<double>();
      record.fit_count = j.at("fit_count").get<std::size_t>();
      records.push_back(std::move(record));
    } catch (const nlohmann::json::exception& e) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

void emit_summaries(const std::vector<RunRecord>& records, const std::filesystem::path& output_dir,
                    std::size_t stratify_threshold) {
  if (records.empty()) throw IoError("no records to report");
  std::filesystem::create_directories(output_dir);
  write_summary_csv(records, output_dir / "summary.csv");
  write_strata_csv(records, output_dir / "strata.csv", stratify_threshold);
  write_timing_csv(records, output_dir / "timing.csv");
}

void emit_reports(const std::vector<RunRecord>& records, const std::filesystem::path& output_dir,
                  std::size_t stratify_threshold) {
  if (records.empty()) throw IoError("no records to report");
  std::filesystem::create_directories(output_dir);
  write_runs_jsonl(records, output_dir / "runs.jsonl");
  emit_summaries(records, output_dir, stratify_threshold);
}

void write_run_config(const ExperimentConfig& config, const std::vector<LearnerSpec>& pool,
                      const std::filesystem::path& path) {
  nlohmann::json j;
  j["data_dir"] = config.data_dir.string();
  j["output_dir"] = config.output_dir.string();
  j["k"] = config.fold_count;
  j["test_ratio"] = config.test_ratio;
  j["seed"] = config.seed;
  j["min_length"] = config.min_length;
  j["stratify_threshold"] = config.stratify_threshold;
  j["workers"] = config.workers;
  if (config.lag_override) {
    j["p"] = *config.lag_override;
  } else {
    j["p"] = nullptr;
    j["fnn"] = {{"max_lag", config.fnn.max_lag},
                {"distance_ratio_tol", config.fnn.distance_ratio_tol},
                {"spread_tol", config.fnn.spread_tol},
                {"false_fraction_threshold", config.fnn.false_fraction_threshold}};
  }
  for (const Method m : config.estimators) j["estimators"].push_back(std::string(method_id(m)));
  for (const Aggregation a : config.aggregations) {
    j["aggregations"].push_back(std::string(aggregation_id(a)));
  }
  for (const auto& spec : pool) {
    j["pool"].push_back({{"algorithm", spec.algorithm},
                         {"hyperparameters", spec.hyperparameters},
                         {"display_name", spec.display_name}});
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace tsselect
