#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

namespace skysentry {

// One 5-second measurement window. query_time_ms sums insert and select
// wall time; triples_downloaded sums rows x positive-pattern-count over the
// window's selects; complexity_iters sums evaluator candidate iterations.
struct MetricsSample {
  double t_s = 0.0;  // window end, simulated time
  std::string constraint;
  int ghosts = 0;
  double query_time_ms = 0.0;
  std::uint64_t triples_downloaded = 0;
  std::uint64_t complexity_iters = 0;
  double reads_per_s = 0.0;
  double writes_per_s = 0.0;
};

inline constexpr const char* kMetricsCsvHeader =
    "t_s,constraint,ghosts,query_time_ms,triples_downloaded,complexity_iters,"
    "reads_per_s,writes_per_s";

class MetricsCollector {
 public:
  MetricsCollector(std::string constraint_label, int ghosts,
                   double window_s = 5.0);

  void record_insert(double wall_ms);
  void record_select(double wall_ms, std::uint64_t rows,
                     std::uint64_t pattern_count, std::uint64_t iterations);
  void close_window(double window_end_s, double reads_per_s,
                    double writes_per_s);

  const std::vector<MetricsSample>& samples() const { return samples_; }
  double window_s() const { return window_s_; }

 private:
  std::string constraint_label_;
  int ghosts_;
  double window_s_;
  std::mutex mutex_;
  MetricsSample current_;
  std::vector<MetricsSample> samples_;
};

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<MetricsSample>& samples);

// Per-window arithmetic mean across runs; all runs must have the same
// window layout.
std::vector<MetricsSample> mean_metrics(
    const std::vector<std::vector<MetricsSample>>& runs);

}  // namespace skysentry
