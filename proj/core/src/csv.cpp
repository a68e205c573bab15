#include "tsselect/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "tsselect/errors.hpp"

namespace tsselect {

namespace {

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ' || s.back() == '\t')) {
    s.pop_back();
  }
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

// Strips a UTF-8 BOM if present.
void strip_bom(std::string& s) {
  if (s.size() >= 3 && s[0] == '\xef' && s[1] == '\xbb' && s[2] == '\xbf') s.erase(0, 3);
}

double parse_value(const std::string& field, const std::filesystem::path& path, std::size_t line_no) {
  const std::string t = strip(field);
  if (t.empty()) {
    throw CsvError(path.string() + ":" + std::to_string(line_no) + ": empty value field");
  }
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw CsvError(path.string() + ":" + std::to_string(line_no) + ": cannot parse value '" + t + "'");
  }
  if (!std::isfinite(out)) {
    throw CsvError(path.string() + ":" + std::to_string(line_no) + ": non-finite value '" + t + "'");
  }
  return out;
}

}  // namespace

TimeSeries load_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw CsvError(path.string() + ": empty file");
  strip_bom(line);
  const std::string header = strip(line);

  bool has_timestamp = false;
  if (header == "value") {
    has_timestamp = false;
  } else if (header == "timestamp,value") {
    has_timestamp = true;
  } else {
    throw CsvError(path.string() + ":1: header must be 'value' or 'timestamp,value', got '" +
                   header + "'");
  }

  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty()) {
      throw CsvError(path.string() + ":" + std::to_string(line_no) + ": blank row");
    }
    if (has_timestamp) {
      const auto comma = line.find(',');
      if (comma == std::string::npos) {
        throw CsvError(path.string() + ":" + std::to_string(line_no) + ": expected 'timestamp,value'");
      }
      if (line.find(',', comma + 1) != std::string::npos) {
        throw CsvError(path.string() + ":" + std::to_string(line_no) + ": too many columns");
      }
      values.push_back(parse_value(line.substr(comma + 1), path, line_no));
    } else {
      if (line.find(',') != std::string::npos) {
        throw CsvError(path.string() + ":" + std::to_string(line_no) + ": too many columns");
      }
      values.push_back(parse_value(line, path, line_no));
    }
  }

  try {
    return TimeSeries(path.stem().string(), std::move(values), path.string());
  } catch (const ValidationError& e) {
    throw CsvError(path.string() + ": " + e.what());
  }
}

void write_series_csv(const TimeSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "value\r\n";
  char buf[32];
  for (const double v : series.values()) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
    out << "\r\n";
  }
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace tsselect
