#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include "tsselect/csv.hpp"
#include "tsselect/embedding.hpp"
#include "tsselect/errors.hpp"
#include "tsselect/rng.hpp"
#include "tsselect/time_series.hpp"

using namespace tsselect;

namespace {

TimeSeries make_series(std::vector<double> values, std::string id = "s") {
  return TimeSeries(std::move(id), std::move(values));
}

std::vector<double> ramp(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i + 1);
  return v;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE("core-data") {

TEST_CASE("series rejects short input") {
  CHECK_THROWS_AS(make_series(std::vector<double>(29, 1.0)), ValidationError);
  CHECK_NOTHROW(make_series(std::vector<double>(30, 1.0)));
}

TEST_CASE("series rejects non-finite values") {
  auto v = ramp(40);
  v[17] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(make_series(v), ValidationError);
  v[17] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(make_series(v), ValidationError);
}

TEST_CASE("embedding of a short ramp") {
  // [1,2,3,4,5,...] with p=2 gives rows [2,1]->3, [3,2]->4, [4,3]->5
  const auto series = make_series(ramp(30));
  const auto ds = embed(series, 2);
  REQUIRE(ds.rows() == 28);
  CHECK(ds.features(0, 0) == 2.0);
  CHECK(ds.features(0, 1) == 1.0);
  CHECK(ds.targets[0] == 3.0);
  CHECK(ds.features(1, 0) == 3.0);
  CHECK(ds.features(1, 1) == 2.0);
  CHECK(ds.targets[1] == 4.0);
  CHECK(ds.features(2, 0) == 4.0);
  CHECK(ds.features(2, 1) == 3.0);
  CHECK(ds.targets[2] == 5.0);
  CHECK(ds.origin[0] == 2);
}

TEST_CASE("embedding with p=1 keeps n-1 rows") {
  const auto series = make_series(ramp(45));
  const auto ds = embed(series, 1);
  CHECK(ds.rows() == 44);
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    CHECK(ds.features(i, 0) == series.values()[i]);
    CHECK(ds.targets[i] == series.values()[i + 1]);
  }
}

TEST_CASE("embedding a constant series") {
  const auto series = make_series(std::vector<double>(40, 5.0));
  const auto ds = embed(series, 3);
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    CHECK(ds.targets[i] == 5.0);
    for (std::size_t j = 0; j < 3; ++j) CHECK(ds.features(i, j) == 5.0);
  }
}

TEST_CASE("embedding rejects out-of-range lag") {
  const auto series = make_series(ramp(40));
  CHECK_THROWS_AS(embed(series, 0), EmbeddingError);
  CHECK_THROWS_AS(embed(series, 31), EmbeddingError);  // leaves < 10 rows
  CHECK_NOTHROW(embed(series, 30));
  try {
    embed(series, 31);
  } catch (const EmbeddingError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("31") != std::string::npos);
    CHECK(msg.find("40") != std::string::npos);
  }
}

TEST_CASE("embedding round-trips the covered region") {
  Rng rng(77);
  std::vector<double> values(120);
  for (double& v : values) v = rng.gaussian();
  const auto series = make_series(values);

  for (const std::size_t p : {1u, 3u, 7u}) {
    const auto ds = embed(series, p);
    REQUIRE(ds.rows() == values.size() - p);
    for (std::size_t i = 0; i < ds.rows(); ++i) {
      const std::size_t t = ds.origin[i];
      CHECK(ds.targets[i] == values[t]);
      for (std::size_t j = 0; j < p; ++j) CHECK(ds.features(i, j) == values[t - j - 1]);
      if (i > 0) CHECK(ds.origin[i] == ds.origin[i - 1] + 1);
    }
    // targets are exactly the series tail from index p
    for (std::size_t i = 0; i < ds.rows(); ++i) CHECK(ds.targets[i] == values[p + i]);
  }
}

TEST_CASE("embed is pure") {
  const auto series = make_series(ramp(60));
  const auto a = embed(series, 4);
  const auto b = embed(series, 4);
  CHECK(a.features == b.features);
  CHECK(a.targets == b.targets);
  CHECK(a.origin == b.origin);
}

TEST_CASE("partition splits at the floor boundary") {
  const auto series = make_series(ramp(40));

  SUBCASE("10 rows, ratio 0.7") {
    const auto ds = embed(series, 30);  // exactly 10 rows
    const auto part = partition(ds, 0.7);
    CHECK(part.estimation.rows() == 7);
    CHECK(part.test.rows() == 3);
    CHECK(part.estimation.origin.front() == 30);
    CHECK(part.test.origin.back() == 39);
  }

  SUBCASE("100 rows, ratio 0.7") {
    const auto big = make_series(ramp(103));
    const auto ds = embed(big, 3);
    REQUIRE(ds.rows() == 100);
    const auto part = partition(ds, 0.7);
    CHECK(part.estimation.rows() == 70);
    CHECK(part.test.rows() == 30);
  }

  SUBCASE("3 rows, ratio 0.5") {
    // floor(1.5) = 1: estimation {0}, test {1,2}
    const auto tiny = make_series(ramp(33));
    const auto ds = embed(tiny, 30);
    REQUIRE(ds.rows() == 3);
    const auto part = partition(ds, 0.5);
    CHECK(part.estimation.rows() == 1);
    CHECK(part.test.rows() == 2);
  }
}

TEST_CASE("partition keeps temporal order") {
  const auto series = make_series(ramp(80));
  const auto part = partition(embed(series, 2), 0.5);
  CHECK(part.estimation.origin.back() < part.test.origin.front());
}

TEST_CASE("floor boundary arithmetic") {
  CHECK(floor_frac(0.7, 10) == 7);
  CHECK(floor_frac(0.7, 100) == 70);
  CHECK(floor_frac(0.5, 3) == 1);
  CHECK(floor_frac(0.6, 100) == 60);
  CHECK(floor_frac(0.1, 100) == 10);
  CHECK(ceil_frac(0.6, 4) == 3);
  CHECK(ceil_frac(0.6, 9) == 6);
  CHECK(ceil_frac(0.6, 5) == 3);
  CHECK(ceil_frac(0.6, 10) == 6);
}

TEST_CASE("partition rejects degenerate splits") {
  const auto series = make_series(ramp(40));
  const auto ds = embed(series, 30);  // 10 rows
  CHECK_THROWS_AS(partition(ds, 0.01), PartitionError);
  CHECK_THROWS_AS(partition(ds, 0.0), PartitionError);
  CHECK_THROWS_AS(partition(ds, 1.0), PartitionError);
}

TEST_CASE("csv ingestion value column") {
  const auto path = temp_file("tsselect_value.csv");
  {
    std::ofstream out(path);
    out << "value\n";
    for (const double v : ramp(35)) out << v << "\n";
  }
  const auto series = load_series_csv(path);
  CHECK(series.size() == 35);
  CHECK(series.values()[0] == 1.0);
  CHECK(series.values()[34] == 35.0);
  CHECK(series.id() == "tsselect_value");
  std::filesystem::remove(path);
}

TEST_CASE("csv ingestion timestamp,value columns") {
  const auto path = temp_file("tsselect_ts.csv");
  {
    std::ofstream out(path);
    out << "timestamp,value\r\n";  // CRLF input must parse too
    for (std::size_t i = 0; i < 32; ++i) out << "2024-01-" << i + 1 << "," << i * 0.5 << "\r\n";
  }
  const auto series = load_series_csv(path);
  CHECK(series.size() == 32);
  CHECK(series.values()[2] == 1.0);
  std::filesystem::remove(path);
}

TEST_CASE("csv ingestion rejects malformed rows with line numbers") {
  const auto path = temp_file("tsselect_bad.csv");

  SUBCASE("bad header") {
    std::ofstream(path) << "wert\n1\n2\n";
    CHECK_THROWS_WITH_AS(load_series_csv(path), doctest::Contains(":1:"), CsvError);
  }
  SUBCASE("non-numeric value") {
    std::ofstream out(path);
    out << "value\n1\n2\notter\n";
    out.close();
    CHECK_THROWS_WITH_AS(load_series_csv(path), doctest::Contains(":4:"), CsvError);
  }
  SUBCASE("too many columns") {
    std::ofstream out(path);
    out << "value\n1\n2,3\n";
    out.close();
    CHECK_THROWS_WITH_AS(load_series_csv(path), doctest::Contains(":3:"), CsvError);
  }
  SUBCASE("non-finite value") {
    std::ofstream out(path);
    out << "value\n1\ninf\n";
    out.close();
    CHECK_THROWS_AS(load_series_csv(path), CsvError);
  }
  std::filesystem::remove(path);
}

TEST_CASE("csv round trip") {
  const auto path = temp_file("tsselect_rt.csv");
  Rng rng(5);
  std::vector<double> values(64);
  for (double& v : values) v = rng.gaussian();
  const auto series = make_series(values, "rt");
  write_series_csv(series, path);
  const auto loaded = load_series_csv(path);
  CHECK(loaded.values() == series.values());  // to_chars shortest form is exact
  std::filesystem::remove(path);
}

}  // TEST_SUITE
