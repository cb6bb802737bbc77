#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "skysentry/kg/parser.hpp"
#include "skysentry/pipeline.hpp"
#include "skysentry/report_log.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitRuntime = 3;

using namespace skysentry;

ConstraintSelection parse_constraints(const std::string& name) {
  if (name == "all") return ConstraintSelection::all();
  if (name == "track") return ConstraintSelection::only(ConstraintKind::TrackOrigin);
  if (name == "radar") return ConstraintSelection::only(ConstraintKind::RadarConsistency);
  if (name == "flight") return ConstraintSelection::only(ConstraintKind::FlightPlan);
  throw CLI::ValidationError("--constraint must be track, radar, flight or all");
}

std::string with_run_suffix(const std::string& path, int run,
                            int repetitions) {
  if (repetitions <= 1) return path;
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  const std::string tag = ".run" + std::to_string(run);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + tag;
  }
  return path.substr(0, dot) + tag + path.substr(dot);
}

void write_alerts_file(const std::string& path,
                       const std::vector<Alert>& alerts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write alerts file: " + path);
  for (const Alert& alert : alerts) {
    out << format_alert_line(alert) << '\n';
  }
}

std::set<std::string> spawned_ghosts(const Scenario& scenario,
                                     std::size_t ghosts) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < std::min(ghosts, scenario.ghost_flights.size());
       ++i) {
    out.insert(scenario.ghost_flights[i].callsign);
  }
  return out;
}

void print_summary(const Scenario& scenario, const PipelineConfig& config,
                   const PipelineResult& result) {
  const auto ghosts = spawned_ghosts(scenario, config.ghosts);
  std::cout << "scenario: " << (scenario.name.empty() ? "-" : scenario.name)
            << " (" << scenario.legit_flights.size() << " flights, "
            << config.ghosts << " ghosts)\n";
  std::cout << "reports: " << result.sim.reports
            << " (adsb " << result.sim.adsb_reports << ", ssr "
            << result.sim.ssr_reports << ", psr " << result.sim.psr_reports
            << ")\n";
  std::cout << "batches: " << result.batch_sizes.size()
            << ", store triples: " << result.store_triples << "\n";

  std::map<ConstraintKind, std::set<std::string>> detected;
  std::set<std::string> non_ghost;
  for (const Alert& alert : result.alerts) {
    if (ghosts.count(alert.callsign)) {
      detected[alert.constraint].insert(alert.callsign);
    } else {
      non_ghost.insert(alert.callsign.empty() ? "-" : alert.callsign);
    }
  }
  for (ConstraintKind kind :
       {ConstraintKind::TrackOrigin, ConstraintKind::RadarConsistency,
        ConstraintKind::FlightPlan}) {
    std::cout << to_string(kind) << ": {";
    bool first = true;
    for (const auto& callsign : detected[kind]) {
      if (!first) std::cout << ", ";
      std::cout << callsign;
      first = false;
    }
    std::cout << "}\n";
  }
  std::cout << "alerts: " << result.alerts.size()
            << ", non-ghost callsigns alerted: " << non_ghost.size() << "\n";
}

struct RunOptions {
  std::string scenario_path;
  std::size_t ghosts = 0;
  std::string constraint = "all";
  double duration_s = 0;
  double speedup = 0;
  std::uint64_t seed = 0;
  std::string metrics_path = "metrics.csv";
  std::string alerts_path = "alerts.log";
  std::string report_log_path = "reports.log";
  std::string snapshot_path;
  int repetitions = 1;
};

int cmd_run(const RunOptions& opt) {
  const Scenario scenario = load_scenario_file(opt.scenario_path);
  if (opt.ghosts > scenario.ghost_flights.size()) {
    std::cerr << "error: scenario provides only "
              << scenario.ghost_flights.size() << " ghosts\n";
    return kExitUsage;
  }
  PipelineConfig config;
  config.ghosts = opt.ghosts;
  config.constraints = parse_constraints(opt.constraint);
  config.duration_s = opt.duration_s;
  config.speedup = opt.speedup;
  config.seed = opt.seed;

  std::vector<std::vector<MetricsSample>> metric_runs;
  PipelineResult last;
  for (int run = 1; run <= opt.repetitions; ++run) {
    std::ofstream report_log(
        with_run_suffix(opt.report_log_path, run, opt.repetitions));
    if (!report_log) {
      throw std::runtime_error("cannot write report log: " +
                               opt.report_log_path);
    }
    kg::TripleStore store;
    PipelineResult result =
        run_pipeline(scenario, config, &report_log, {}, &store);
    write_alerts_file(with_run_suffix(opt.alerts_path, run, opt.repetitions),
                      result.alerts);
    write_metrics_csv(with_run_suffix(opt.metrics_path, run, opt.repetitions),
                      result.metrics);
    metric_runs.push_back(result.metrics);
    if (run == opt.repetitions && !opt.snapshot_path.empty()) {
      std::ofstream snapshot(opt.snapshot_path);
      if (!snapshot) {
        throw std::runtime_error("cannot write snapshot: " + opt.snapshot_path);
      }
      store.dump(snapshot);
    }
    last = std::move(result);
  }
  if (opt.repetitions > 1) {
    write_metrics_csv(opt.metrics_path, mean_metrics(metric_runs));
  }
  print_summary(scenario, config, last);
  return kExitOk;
}

struct ReplayOptions {
  std::string log_path;
  std::string scenario_path;
  std::size_t ghosts = 0;
  std::string constraint = "all";
  double duration_s = 0;
  std::string metrics_path = "metrics.csv";
  std::string alerts_path = "alerts.log";
};

int cmd_replay(const ReplayOptions& opt) {
  const Scenario scenario = load_scenario_file(opt.scenario_path);
  std::ifstream log(opt.log_path);
  if (!log) {
    std::cerr << "error: cannot open report log " << opt.log_path << "\n";
    return kExitParse;
  }
  const std::vector<PositionReport> reports = read_report_log(log);

  PipelineConfig config;
  config.ghosts = opt.ghosts;
  config.constraints = parse_constraints(opt.constraint);
  config.duration_s = opt.duration_s;
  PipelineResult result = replay_pipeline(reports, scenario, config);
  write_alerts_file(opt.alerts_path, result.alerts);
  write_metrics_csv(opt.metrics_path, result.metrics);
  print_summary(scenario, config, result);
  return kExitOk;
}

struct QueryOptions {
  std::string snapshot_path;
  std::string query_path;
  std::string query_text;
};

int cmd_query(const QueryOptions& opt) {
  std::string text = opt.query_text;
  if (!opt.query_path.empty()) {
    std::ifstream in(opt.query_path);
    if (!in) {
      std::cerr << "error: cannot open query file " << opt.query_path << "\n";
      return kExitParse;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  if (text.empty()) {
    std::cerr << "error: provide --query <file> or --text <query>\n";
    return kExitUsage;
  }
  const kg::QueryAst ast = kg::parse_query(text);

  kg::TripleStore store;
  std::ifstream snapshot(opt.snapshot_path);
  if (!snapshot) {
    std::cerr << "error: cannot open snapshot " << opt.snapshot_path << "\n";
    return kExitParse;
  }
  store.load(snapshot);

  const kg::SolutionSet result = store.evaluate(ast);
  for (std::size_t i = 0; i < result.variables.size(); ++i) {
    std::cout << (i ? "\t" : "") << "?" << result.variables[i];
  }
  std::cout << "\n";
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::cout << (i ? "\t" : "") << kg::to_string(row[i]);
    }
    std::cout << "\n";
  }
  std::cout << "rows: " << result.rows.size()
            << ", iterations: " << result.stats.iterations
            << ", triples read: " << result.stats.triples_read
            << ", elapsed: "
            << std::chrono::duration<double, std::milli>(result.stats.elapsed)
                   .count()
            << " ms\n";
  return kExitOk;
}

int cmd_scenario_check(const std::string& path) {
  const Scenario scenario = load_scenario_file(path);
  std::cout << "ok: " << (scenario.name.empty() ? "-" : scenario.name) << " ("
            << scenario.airports.size() << " airports, "
            << scenario.reporters.size() << " reporters, "
            << scenario.flight_plans.size() << " plans, "
            << scenario.legit_flights.size() << " flights, "
            << scenario.ghost_flights.size() << " ghosts, "
            << scenario.duration_s << " s)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Airspace surveillance testbed: simulates ADS-B/PSR/SSR traffic with "
      "ghost injections and detects spoofed reports with graph queries"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "simulate a scenario and detect");
  run->add_option("--scenario", run_opt.scenario_path, "scenario file")
      ->required();
  run->add_option("--ghosts", run_opt.ghosts, "ghost aircraft to inject")
      ->check(CLI::Range(0, 5));
  run->add_option("--constraint", run_opt.constraint,
                  "track | radar | flight | all");
  run->add_option("--duration", run_opt.duration_s,
                  "override scenario duration (s)");
  run->add_option("--speedup", run_opt.speedup,
                  "real-time multiplier; 0 = as fast as possible");
  run->add_option("--seed", run_opt.seed, "override scenario seed");
  run->add_option("--metrics", run_opt.metrics_path, "metrics CSV path");
  run->add_option("--alerts", run_opt.alerts_path, "alerts file path");
  run->add_option("--report-log", run_opt.report_log_path,
                  "report log path (replay input)");
  run->add_option("--snapshot", run_opt.snapshot_path,
                  "dump the final store to this path");
  run->add_option("--repetitions", run_opt.repetitions, "repeated runs")
      ->check(CLI::PositiveNumber);

  ReplayOptions replay_opt;
  auto* replay =
      app.add_subcommand("replay", "re-run detection on a recorded report log");
  replay->add_option("--log", replay_opt.log_path, "report log")->required();
  replay->add_option("--scenario", replay_opt.scenario_path,
                     "scenario file (geometry and flight plans)")
      ->required();
  replay->add_option("--ghosts", replay_opt.ghosts,
                     "ghost count label for metrics");
  replay->add_option("--constraint", replay_opt.constraint,
                     "track | radar | flight | all");
  replay->add_option("--duration", replay_opt.duration_s,
                     "override scenario duration (s)");
  replay->add_option("--metrics", replay_opt.metrics_path, "metrics CSV path");
  replay->add_option("--alerts", replay_opt.alerts_path, "alerts file path");

  QueryOptions query_opt;
  auto* query = app.add_subcommand("query", "run a query on a store snapshot");
  query->add_option("--snapshot", query_opt.snapshot_path, "store snapshot")
      ->required();
  query->add_option("--query", query_opt.query_path, "query file");
  query->add_option("--text", query_opt.query_text, "inline query text");

  std::string check_path;
  auto* check = app.add_subcommand("scenario-check", "validate a scenario file");
  check->add_option("scenario", check_path, "scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (replay->parsed()) return cmd_replay(replay_opt);
    if (query->parsed()) return cmd_query(query_opt);
    if (check->parsed()) return cmd_scenario_check(check_path);
    return kExitUsage;
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitParse;
  } catch (const kg::QueryParseError& e) {
    std::cerr << "query error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ReportLogError& e) {
    std::cerr << "report log error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
