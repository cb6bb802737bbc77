#include <doctest.h>

#include <numeric>
#include <sstream>
#include <string>

#include "skysentry/pipeline.hpp"
#include "skysentry/report_log.hpp"

using namespace skysentry;

namespace {

const std::string kDataDir = SKYSENTRY_DATA_DIR;

Scenario reference() {
  return load_scenario_file(kDataDir + "/scenarios/reference.scn");
}

}  // namespace

TEST_CASE("clean runs raise no alerts and fill every metrics window") {
  const Scenario scenario = reference();
  PipelineConfig config;
  config.ghosts = 0;
  const PipelineResult result = run_pipeline(scenario, config);

  CHECK(result.alerts.empty());
  CHECK(result.metrics.size() == 80);  // 400 s / 5 s windows
  for (std::size_t i = 0; i < result.metrics.size(); ++i) {
    CHECK(result.metrics[i].t_s == doctest::Approx(5.0 * (i + 1)));
    CHECK(result.metrics[i].constraint == "all");
    CHECK(result.metrics[i].ghosts == 0);
  }
  CHECK(result.base_triples > 0);
  CHECK(result.store_triples ==
        result.base_triples + result.ingest_totals.report_triples +
            result.ingest_totals.association_triples);
}

TEST_CASE("batching follows the init-then-batches pattern and conserves") {
  const Scenario scenario = reference();
  PipelineConfig config;
  config.ghosts = 5;
  std::ostringstream log;
  const PipelineResult result = run_pipeline(scenario, config, &log);

  REQUIRE(!result.batch_sizes.empty());
  CHECK(result.batch_sizes.front() == 400);
  for (std::size_t i = 1; i + 1 < result.batch_sizes.size(); ++i) {
    CHECK(result.batch_sizes[i] == 50);
  }
  CHECK(result.batch_sizes.back() <= 50);
  const auto delivered = std::accumulate(result.batch_sizes.begin(),
                                         result.batch_sizes.end(), 0ULL);
  CHECK(delivered == result.sim.reports);
  CHECK(result.ingest_totals.reports == result.sim.reports);

  // the report log carries exactly the emitted reports
  std::istringstream in(log.str());
  CHECK(read_report_log(in).size() == result.sim.reports);
}

TEST_CASE("initialization batch triples recount from the recorded stream") {
  const Scenario scenario = reference();
  PipelineConfig config;
  config.ghosts = 5;
  std::ostringstream log;
  const PipelineResult result = run_pipeline(scenario, config, &log);

  // brute-force recount: 9 triples per ADS-B report, 8 per SSR, 6 per PSR,
  // over the first 400 recorded reports (the initialization batch)
  std::istringstream in(log.str());
  const auto reports = read_report_log(in);
  REQUIRE(reports.size() >= 400);
  std::size_t expected = 0;
  for (std::size_t i = 0; i < 400; ++i) {
    switch (reports[i].kind()) {
      case ReportKind::Adsb:
        expected += 9;
        break;
      case ReportKind::Ssr:
        expected += 8;
        break;
      case ReportKind::Psr:
        expected += 6;
        break;
    }
  }

  kg::TripleStore store;
  Ingestor ingestor(store);
  ReportBatch init;
  init.seq = 0;
  init.reports.assign(reports.begin(), reports.begin() + 400);
  init.emitted_at_s = init.reports.back().timestamp_s;
  const IngestSummary summary = ingestor.ingest(init);
  CHECK(summary.report_triples == expected);
  CHECK(store.size() == expected + summary.association_triples);

  // the initialization batch fills near the three-minute mark
  CHECK(reports[399].timestamp_s > 150);
  CHECK(reports[399].timestamp_s < 200);
}

TEST_CASE("identical configurations produce identical artifacts") {
  const Scenario scenario = reference();
  PipelineConfig config;
  config.ghosts = 4;
  auto capture = [&]() {
    std::ostringstream log;
    const PipelineResult result = run_pipeline(scenario, config, &log);
    std::string alerts;
    for (const auto& alert : result.alerts) {
      alerts += format_alert_line(alert) + "\n";
    }
    return std::pair{log.str(), alerts};
  };
  const auto first = capture();
  const auto second = capture();
  CHECK(first.first == second.first);
  CHECK(first.second == second.second);
  CHECK_FALSE(first.second.empty());
}

TEST_CASE("replaying a recorded run reproduces its alerts") {
  const Scenario scenario = reference();
  PipelineConfig config;
  config.ghosts = 5;
  std::ostringstream log;
  const PipelineResult original = run_pipeline(scenario, config, &log);

  std::istringstream in(log.str());
  const auto reports = read_report_log(in);
  const PipelineResult replayed = replay_pipeline(reports, scenario, config);

  REQUIRE(replayed.alerts.size() == original.alerts.size());
  for (std::size_t i = 0; i < original.alerts.size(); ++i) {
    CHECK(format_alert_line(replayed.alerts[i]) ==
          format_alert_line(original.alerts[i]));
  }
  CHECK(replayed.batch_sizes == original.batch_sizes);
}

TEST_CASE("a truncated log replays only its prefix") {
  const Scenario scenario = reference();
  PipelineConfig config;
  config.ghosts = 5;
  config.constraints = ConstraintSelection::only(ConstraintKind::FlightPlan);
  std::ostringstream log;
  run_pipeline(scenario, config, &log);

  std::istringstream in(log.str());
  auto reports = read_report_log(in);
  // keep reports up to t=250 only
  std::erase_if(reports,
                [](const PositionReport& r) { return r.timestamp_s > 250; });
  const PipelineResult replayed = replay_pipeline(reports, scenario, config);
  for (const auto& alert : replayed.alerts) {
    CHECK(alert.report_time_s <= 250);
  }
  CHECK_FALSE(replayed.alerts.empty());
}

TEST_CASE("paced mode produces the same detection outcome") {
  Scenario scenario = reference();
  PipelineConfig config;
  config.ghosts = 5;
  config.duration_s = 260;  // enough for the static-ghost detections
  config.speedup = 2000.0;  // paced but fast
  const PipelineResult paced = run_pipeline(scenario, config);

  config.speedup = 0.0;
  const PipelineResult direct = run_pipeline(scenario, config);

  CHECK(paced.metrics.size() == direct.metrics.size());
  CHECK(paced.sim.reports == direct.sim.reports);

  auto ghost_set = [](const PipelineResult& r) {
    std::set<std::string> out;
    for (const auto& a : r.alerts) out.insert(a.callsign);
    return out;
  };
  CHECK(ghost_set(paced) == ghost_set(direct));
}
