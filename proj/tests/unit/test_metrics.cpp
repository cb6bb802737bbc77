#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "skysentry/metrics.hpp"

using namespace skysentry;

TEST_CASE("windows accumulate inserts and selects then reset") {
  MetricsCollector collector("track", 3);
  collector.record_insert(2.5);
  collector.record_select(1.5, 4, 5, 1000);  // 4 rows x 5 patterns = 20
  collector.close_window(5.0, 100.0, 10.0);

  collector.close_window(10.0, 0.0, 0.0);  // an idle window

  const auto& samples = collector.samples();
  REQUIRE(samples.size() == 2);
  CHECK(samples[0].t_s == 5.0);
  CHECK(samples[0].constraint == "track");
  CHECK(samples[0].ghosts == 3);
  CHECK(samples[0].query_time_ms == doctest::Approx(4.0));
  CHECK(samples[0].triples_downloaded == 20);
  CHECK(samples[0].complexity_iters == 1000);
  CHECK(samples[0].reads_per_s == 100.0);

  CHECK(samples[1].t_s == 10.0);
  CHECK(samples[1].query_time_ms == 0.0);
  CHECK(samples[1].triples_downloaded == 0);
}

TEST_CASE("csv output has the fixed header and one line per window") {
  MetricsCollector collector("flight", 0);
  collector.record_select(0.25, 2, 5, 50);
  collector.close_window(5.0, 1.0, 2.0);
  collector.close_window(10.0, 0.0, 0.0);

  const auto path = std::filesystem::temp_directory_path() / "skysentry_m.csv";
  write_metrics_csv(path, collector.samples());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == kMetricsCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 2);
  std::filesystem::remove(path);
}

TEST_CASE("mean aggregation is the exact arithmetic mean per window") {
  std::vector<std::vector<MetricsSample>> runs(2);
  for (int r = 0; r < 2; ++r) {
    MetricsCollector collector("radar", 2);
    collector.record_select(r == 0 ? 1.0 : 3.0, r == 0 ? 10 : 20, 6,
                            r == 0 ? 100 : 300);
    collector.close_window(5.0, r == 0 ? 10.0 : 30.0, 2.0);
    runs[r] = collector.samples();
  }
  const auto mean = mean_metrics(runs);
  REQUIRE(mean.size() == 1);
  CHECK(mean[0].query_time_ms == doctest::Approx(2.0));
  CHECK(mean[0].triples_downloaded == 90);  // (60 + 120) / 2
  CHECK(mean[0].complexity_iters == 200);
  CHECK(mean[0].reads_per_s == doctest::Approx(20.0));
  CHECK(mean[0].writes_per_s == doctest::Approx(2.0));

  runs[1].clear();
  CHECK_THROWS(mean_metrics(runs));
}
