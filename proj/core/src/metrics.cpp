#include "skysentry/metrics.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace skysentry {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

MetricsCollector::MetricsCollector(std::string constraint_label, int ghosts,
                                   double window_s)
    : constraint_label_(std::move(constraint_label)),
      ghosts_(ghosts),
      window_s_(window_s) {}

void MetricsCollector::record_insert(double wall_ms) {
  std::lock_guard lock(mutex_);
  current_.query_time_ms += wall_ms;
}

void MetricsCollector::record_select(double wall_ms, std::uint64_t rows,
                                     std::uint64_t pattern_count,
                                     std::uint64_t iterations) {
  std::lock_guard lock(mutex_);
  current_.query_time_ms += wall_ms;
  current_.triples_downloaded += rows * pattern_count;
  current_.complexity_iters += iterations;
}

void MetricsCollector::close_window(double window_end_s, double reads_per_s,
                                    double writes_per_s) {
  std::lock_guard lock(mutex_);
  current_.t_s = window_end_s;
  current_.constraint = constraint_label_;
  current_.ghosts = ghosts_;
  current_.reads_per_s = reads_per_s;
  current_.writes_per_s = writes_per_s;
  samples_.push_back(current_);
  current_ = MetricsSample{};
}

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<MetricsSample>& samples) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write metrics file: " + path.string());
  }
  out << kMetricsCsvHeader << '\n';
  for (const MetricsSample& s : samples) {
    out << format_double(s.t_s) << ',' << s.constraint << ',' << s.ghosts
        << ',' << format_double(s.query_time_ms) << ',' << s.triples_downloaded
        << ',' << s.complexity_iters << ',' << format_double(s.reads_per_s)
        << ',' << format_double(s.writes_per_s) << '\n';
  }
}

std::vector<MetricsSample> mean_metrics(
    const std::vector<std::vector<MetricsSample>>& runs) {
  if (runs.empty()) return {};
  const std::size_t windows = runs.front().size();
  for (const auto& run : runs) {
    if (run.size() != windows) {
      throw std::invalid_argument("mean_metrics: runs have different layouts");
    }
  }
  std::vector<MetricsSample> out = runs.front();
  for (std::size_t w = 0; w < windows; ++w) {
    double time_ms = 0.0;
    double downloaded = 0.0;
    double ioutput = 0.0;
    double reads = 0.0;
    double writes = 0.0;
    for (const auto& run : runs) {
      time_ms += run[w].query_time_ms;
      downloaded += static_cast<double>(run[w].triples_downloaded);
      ioutput += static_cast<double>(run[w].complexity_iters);
      reads += run[w].reads_per_s;
      writes += run[w].writes_per_s;
    }
    const auto n = static_cast<double>(runs.size());
    out[w].query_time_ms = time_ms / n;
    out[w].triples_downloaded =
        static_cast<std::uint64_t>(downloaded / n + 0.5);
    out[w].complexity_iters = static_cast<std::uint64_t>(ioutput / n + 0.5);
    out[w].reads_per_s = reads / n;
    out[w].writes_per_s = writes / n;
  }
  return out;
}

}  // namespace skysentry
