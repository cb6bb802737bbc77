// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "skysentry/kg/parser.hpp"
#include "skysentry/pipeline.hpp"
#include "skysentry/queries.hpp"
#include "skysentry/report_log.hpp"
#include "skysentry/vocab.hpp"
#include "support/eval_oracle.hpp"
#include "support/geo_oracles.hpp"
#include "support/random_kg.hpp"

using namespace skysentry;
using namespace skysentry::testing;

namespace {

const std::string kDataDir = SKYSENTRY_DATA_DIR;

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& text) { g_notes.push_back(text); }

void criterion(int number, const std::string& title, bool ok) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << title << "\n";
  if (!ok) {
    for (const auto& n : g_notes) std::cout << "       " << n << "\n";
    ++g_failures;
  }
  g_notes.clear();
}

Scenario reference() {
  return load_scenario_file(kDataDir + "/scenarios/reference.scn");
}

std::set<std::string> ghost_callsigns(const Scenario& s, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < std::min(n, s.ghost_flights.size()); ++i) {
    out.insert(s.ghost_flights[i].callsign);
  }
  return out;
}

std::set<std::string> alerted_callsigns(const std::vector<Alert>& alerts,
                                        ConstraintKind kind) {
  std::set<std::string> out;
  for (const auto& a : alerts) {
    if (a.constraint == kind) out.insert(a.callsign);
  }
  return out;
}

std::string join(const std::set<std::string>& items) {
  std::string out = "{";
  for (const auto& s : items) {
    if (out.size() > 1) out += ",";
    out += s;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

bool criterion_detection_matrix(const Scenario& scenario,
                                PipelineResult& out_result) {
  const auto start = std::chrono::steady_clock::now();
  PipelineConfig config;
  config.ghosts = 5;
  out_result = run_pipeline(scenario, config);
  const double elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  const auto ghosts = ghost_callsigns(scenario, 5);
  const std::set<std::string> expected_track{"GHOST1", "GHOST2"};
  const std::set<std::string> expected_radar{"GHOST1", "GHOST2", "GHOST3",
                                             "GHOST4"};
  const std::set<std::string>& expected_flight = ghosts;

  const auto track =
      alerted_callsigns(out_result.alerts, ConstraintKind::TrackOrigin);
  const auto radar =
      alerted_callsigns(out_result.alerts, ConstraintKind::RadarConsistency);
  const auto flight =
      alerted_callsigns(out_result.alerts, ConstraintKind::FlightPlan);

  bool ok = true;
  if (track != expected_track) {
    note("track detected " + join(track) + ", wanted " + join(expected_track));
    ok = false;
  }
  if (radar != expected_radar) {
    note("radar detected " + join(radar) + ", wanted " + join(expected_radar));
    ok = false;
  }
  if (flight != expected_flight) {
    note("flight detected " + join(flight) + ", wanted " +
         join(expected_flight));
    ok = false;
  }
  for (const auto& alert : out_result.alerts) {
    if (!ghosts.count(alert.callsign)) {
      note("legitimate aircraft alerted: " + alert.callsign);
      ok = false;
      break;
    }
  }
  // sub-rule attribution: the static ghosts are caught because they never
  // move, the crossing ghost because no radar track pairs with it
  for (const auto& alert : out_result.alerts) {
    if (alert.constraint != ConstraintKind::RadarConsistency) continue;
    const std::string expected_reason =
        alert.callsign == "GHOST4" ? "no_radar_track" : "stationary_track";
    if (alert.reason != expected_reason) {
      note("radar alerted " + alert.callsign + " with reason " + alert.reason);
      ok = false;
      break;
    }
  }
  if (elapsed_s >= 30.0) {
    note("run took " + std::to_string(elapsed_s) + " s, limit 30 s");
    ok = false;
  }
  return ok;
}

bool criterion_ghost_sweep(
    const Scenario& scenario,
    std::map<std::pair<std::string, int>, PipelineResult>& sweep) {
  const auto start = std::chrono::steady_clock::now();
  const std::map<std::string, std::set<std::string>> full_matrix{
      {"track", {"GHOST1", "GHOST2"}},
      {"radar", {"GHOST1", "GHOST2", "GHOST3", "GHOST4"}},
      {"flight", {"GHOST1", "GHOST2", "GHOST3", "GHOST4", "GHOST5"}},
  };
  const std::map<std::string, ConstraintKind> kinds{
      {"track", ConstraintKind::TrackOrigin},
      {"radar", ConstraintKind::RadarConsistency},
      {"flight", ConstraintKind::FlightPlan},
  };

  bool ok = true;
  for (const auto& [name, kind] : kinds) {
    for (int ghosts = 0; ghosts <= 5; ++ghosts) {
      PipelineConfig config;
      config.ghosts = static_cast<std::size_t>(ghosts);
      config.constraints = ConstraintSelection::only(kind);
      PipelineResult result = run_pipeline(scenario, config);

      const auto spawned = ghost_callsigns(scenario, config.ghosts);
      std::set<std::string> expected;
      for (const auto& cs : full_matrix.at(name)) {
        if (spawned.count(cs)) expected.insert(cs);
      }
      const auto detected = alerted_callsigns(result.alerts, kind);
      if (detected != expected) {
        note(name + " @" + std::to_string(ghosts) + " ghosts: detected " +
             join(detected) + ", wanted " + join(expected));
        ok = false;
      }
      if (ghosts == 0 && !result.alerts.empty()) {
        note(name + " @0 ghosts raised " +
             std::to_string(result.alerts.size()) + " alerts");
        ok = false;
      }
      for (const auto& alert : result.alerts) {
        if (!spawned.count(alert.callsign)) {
          note(name + " alerted non-ghost " + alert.callsign);
          ok = false;
          break;
        }
      }
      sweep.emplace(std::make_pair(name, ghosts), std::move(result));
    }
  }
  const double elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (elapsed_s >= 300.0) {
    note("sweep took " + std::to_string(elapsed_s) + " s, limit 300 s");
    ok = false;
  }
  return ok;
}

bool criterion_oracle_equivalence() {
  KgCaseGenerator gen(20260810);
  bool ok = true;
  for (int i = 0; i < 1000; ++i) {
    const auto c = gen.next();
    kg::TripleStore store;
    store.insert(c.triples);

    std::vector<kg::Triple> unique;
    std::set<std::string> seen;
    for (const auto& t : c.triples) {
      if (seen.insert(kg::to_string(t)).second) unique.push_back(t);
    }

    const auto got = store.evaluate(c.query);
    const auto want = oracle_evaluate(unique, c.query);
    if (row_multiset(got.rows) != row_multiset(want)) {
      note("case " + std::to_string(i) + " disagrees (" +
           std::to_string(got.rows.size()) + " vs " +
           std::to_string(want.size()) + " rows): " +
           kg::pretty_print(c.query));
      ok = false;
      if (g_notes.size() > 4) break;
    }
  }
  return ok;
}

bool criterion_query_fidelity() {
  bool ok = true;
  auto read_file = [&](const std::string& path) {
    std::ifstream in(path);
    if (!in) {
      note("missing query file " + path);
      ok = false;
      return std::string{};
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };

  const auto track =
      kg::parse_query(read_file(kDataDir + "/queries/track_origin.rq"));
  if (track.pattern_count() != 7) {
    note("track query has " + std::to_string(track.pattern_count()) +
         " patterns, wanted 7");
    ok = false;
  }
  const kg::Filter* filter = track.first_filter();
  if (!filter || filter->clauses.size() != 1 ||
      filter->clauses[0].size() != 1 ||
      !(filter->clauses[0][0].lhs == kg::Term{kg::Variable{"rank"}}) ||
      filter->clauses[0][0].op != kg::CompareOp::Eq ||
      !(filter->clauses[0][0].rhs == kg::Term{kg::Literal::integer(1)})) {
    note("track query filter is not ?rank = 1");
    ok = false;
  }
  if (track.minus_count() != 0) {
    note("track query must have no MINUS");
    ok = false;
  }

  const auto radar =
      kg::parse_query(read_file(kDataDir + "/queries/radar_consistency.rq"));
  if (radar.pattern_count() != 6 || radar.minus_count() != 1) {
    note("radar query shape wrong");
    ok = false;
  }
  bool radar_minus_ok = false;
  for (const auto& el : radar.where.elements) {
    if (const auto* m = std::get_if<kg::Minus>(&el)) {
      if (m->group.elements.size() == 1) {
        const auto& p = std::get<kg::TriplePattern>(m->group.elements[0]);
        radar_minus_ok = p.predicate == kg::Term{vocab::has_similar_track()};
      }
    }
  }
  if (!radar_minus_ok) {
    note("radar MINUS is not over hasSimilarTrack");
    ok = false;
  }
  if (radar.order_by !=
      std::vector<kg::OrderKey>{{"track", kg::SortDirection::Ascending},
                                {"time", kg::SortDirection::Ascending}}) {
    note("radar ORDER BY is not ?track then ASC(?time)");
    ok = false;
  }

  const auto flight =
      kg::parse_query(read_file(kDataDir + "/queries/flight_plan.rq"));
  if (flight.pattern_count() != 5 || flight.minus_count() != 1) {
    note("flight query shape wrong");
    ok = false;
  }
  bool flight_minus_ok = false;
  for (const auto& el : flight.where.elements) {
    if (const auto* m = std::get_if<kg::Minus>(&el)) {
      if (m->group.elements.size() == 1) {
        const auto& p = std::get<kg::TriplePattern>(m->group.elements[0]);
        flight_minus_ok =
            p.predicate == kg::Term{vocab::core_has_callsign()} &&
            p.object == kg::Term{kg::Variable{"callsign"}};
      }
    }
  }
  if (!flight_minus_ok) {
    note("flight MINUS is not over the flight-plan callsign");
    ok = false;
  }

  // the engine evaluates exactly the bundled texts
  if (!(track == kg::parse_query(queries::track_origin())) ||
      !(radar == kg::parse_query(queries::radar_consistency())) ||
      !(flight == kg::parse_query(queries::flight_plan()))) {
    note("bundled files differ from the embedded constraint queries");
    ok = false;
  }
  return ok;
}

bool criterion_buffering(const PipelineResult& result) {
  bool ok = true;
  if (result.batch_sizes.empty()) {
    note("no batches delivered");
    return false;
  }
  if (result.batch_sizes.front() != 400) {
    note("batch 0 held " + std::to_string(result.batch_sizes.front()) +
         " reports, wanted 400");
    ok = false;
  }
  for (std::size_t i = 1; i + 1 < result.batch_sizes.size(); ++i) {
    if (result.batch_sizes[i] != 50) {
      note("batch " + std::to_string(i) + " held " +
           std::to_string(result.batch_sizes[i]) + ", wanted 50");
      ok = false;
      break;
    }
  }
  if (result.batch_sizes.size() > 1 && result.batch_sizes.back() > 50) {
    note("final batch exceeds the batch size");
    ok = false;
  }
  const auto delivered = std::accumulate(result.batch_sizes.begin(),
                                         result.batch_sizes.end(), 0ULL);
  if (delivered != result.sim.reports) {
    note("delivered " + std::to_string(delivered) + " of " +
         std::to_string(result.sim.reports) + " reports");
    ok = false;
  }
  return ok;
}

double post_injection_mean_time(const std::vector<MetricsSample>& samples) {
  double sum = 0;
  int n = 0;
  for (const auto& s : samples) {
    if (s.t_s > 180.0) {
      sum += s.query_time_ms;
      ++n;
    }
  }
  return n ? sum / n : 0.0;
}

double complexity_slope(const std::vector<MetricsSample>& samples) {
  // least-squares slope of complexity over window time, post-injection
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& s : samples) {
    if (s.t_s <= 180.0) continue;
    const double x = s.t_s;
    const double y = static_cast<double>(s.complexity_iters);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double run_mean(const std::vector<MetricsSample>& samples,
                double MetricsSample::*field) {
  double sum = 0;
  for (const auto& s : samples) sum += s.*field;
  return samples.empty() ? 0.0 : sum / samples.size();
}

bool criterion_metric_trends(
    const std::map<std::pair<std::string, int>, PipelineResult>& sweep) {
  bool ok = true;
  for (const std::string name : {"track", "radar", "flight"}) {
    for (int ghosts : {0, 5}) {
      const double slope =
          complexity_slope(sweep.at({name, ghosts}).metrics);
      if (!(slope > 0.0)) {
        note(name + " @" + std::to_string(ghosts) +
             ": complexity slope " + std::to_string(slope) + " not positive");
        ok = false;
      }
    }
  }
  for (const std::string name : {"track", "radar"}) {
    const double t0 = post_injection_mean_time(sweep.at({name, 0}).metrics);
    const double t5 = post_injection_mean_time(sweep.at({name, 5}).metrics);
    if (!(t5 > t0)) {
      note(name + ": mean post-injection query time did not grow (" +
           std::to_string(t0) + " -> " + std::to_string(t5) + " ms)");
      ok = false;
    }
  }
  const double track_reads =
      run_mean(sweep.at({"track", 0}).metrics, &MetricsSample::reads_per_s);
  const double radar_reads =
      run_mean(sweep.at({"radar", 0}).metrics, &MetricsSample::reads_per_s);
  const double flight_reads =
      run_mean(sweep.at({"flight", 0}).metrics, &MetricsSample::reads_per_s);
  const double track_writes =
      run_mean(sweep.at({"track", 0}).metrics, &MetricsSample::writes_per_s);
  const double radar_writes =
      run_mean(sweep.at({"radar", 0}).metrics, &MetricsSample::writes_per_s);

  if (!(track_reads > 10.0 * track_writes)) {
    note("track reads/s " + std::to_string(track_reads) +
         " not >10x writes/s " + std::to_string(track_writes));
    ok = false;
  }
  if (!(radar_reads > 10.0 * radar_writes)) {
    note("radar reads/s " + std::to_string(radar_reads) +
         " not >10x writes/s " + std::to_string(radar_writes));
    ok = false;
  }
  if (!(flight_reads <= track_reads / 10.0)) {
    note("flight reads/s " + std::to_string(flight_reads) +
         " not an order below track's " + std::to_string(track_reads));
    ok = false;
  }
  return ok;
}

bool criterion_determinism(const Scenario& scenario) {
  auto capture = [&]() {
    PipelineConfig config;
    config.ghosts = 5;
    std::ostringstream log;
    const PipelineResult result = run_pipeline(scenario, config, &log);
    std::string alerts;
    for (const auto& alert : result.alerts) {
      alerts += format_alert_line(alert) + "\n";
    }
    return std::pair{log.str(), alerts};
  };
  const auto a = capture();
  const auto b = capture();
  if (a.first != b.first) {
    note("report logs differ between identical runs");
    return false;
  }
  if (a.second != b.second) {
    note("alert files differ between identical runs");
    return false;
  }
  if (a.second.empty()) {
    note("no alerts recorded");
    return false;
  }
  return true;
}

bool criterion_geodesy() {
  bool ok = true;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lat(-85.0, 85.0);
  std::uniform_real_distribution<double> lon(-179.0, 179.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const GeoPoint a{lat(rng), lon(rng)};
    const GeoPoint b{lat(rng), lon(rng)};
    worst = std::max(worst,
                     std::abs(haversine_nm(a, b) - law_of_cosines_nm(a, b)));
  }
  if (worst >= 0.1) {
    note("worst oracle disagreement " + std::to_string(worst) + " NM");
    ok = false;
  }
  const double degree = haversine_nm({0, 0}, {0, 1});
  if (std::abs(degree - 60.0) > 0.01) {
    note("equator degree measures " + std::to_string(degree) + " NM");
    ok = false;
  }
  return ok;
}

bool criterion_association(const Scenario& scenario) {
  struct PairState {
    double ready_t = -1;
    double assoc_t = -1;
  };
  std::map<std::string, PairState> pairs;  // legit equipment -> timing
  std::set<std::string> ghost_equipment;
  for (const auto& g : scenario.ghost_flights) {
    ghost_equipment.insert(g.equipment_id);
  }
  bool ghost_associated = false;

  auto observer = [&](const CycleObservation& obs) {
    const auto& tracks = obs.registry.tracks();
    std::map<std::string, const Track*> adsb_by_eq;
    std::map<std::string, const Track*> ssr_by_eq;
    for (const auto& t : tracks) {
      if (t.source == TrackSource::Adsb) {
        const auto bar = t.key.find('|', 2);
        adsb_by_eq[t.key.substr(2, bar - 2)] = &t;
      } else if (t.source == TrackSource::Ssr) {
        ssr_by_eq[t.key.substr(2)] = &t;
      }
    }
    std::set<std::pair<std::string, std::string>> associated;
    for (const auto& [a, r] : obs.registry.associated_pairs()) {
      associated.insert({a.value, r.value});
    }
    for (const auto& [eq, adsb] : adsb_by_eq) {
      if (ghost_equipment.count(eq)) {
        // ground truth: a ghost track must never associate with anything
        for (const auto& [a, r] : associated) {
          if (a == adsb->id.value) ghost_associated = true;
        }
        continue;
      }
      auto it = ssr_by_eq.find(eq);
      if (it == ssr_by_eq.end()) continue;
      const Track* ssr = it->second;
      PairState& state = pairs[eq];
      if (state.ready_t < 0 && ssr->samples.size() >= 2) {
        const auto lo = std::max(adsb->samples.front().timestamp_s,
                                 ssr->samples.front().timestamp_s);
        const auto hi = std::min(adsb->samples.back().timestamp_s,
                                 ssr->samples.back().timestamp_s);
        int overlap = 0;
        for (const auto& s : adsb->samples) {
          if (s.timestamp_s >= lo && s.timestamp_s <= hi) ++overlap;
        }
        if (overlap >= 3) state.ready_t = obs.t_s;
      }
      if (state.assoc_t < 0 &&
          associated.count({adsb->id.value, ssr->id.value})) {
        state.assoc_t = obs.t_s;
      }
    }
  };

  PipelineConfig config;
  config.ghosts = 5;
  config.constraints = ConstraintSelection::only(ConstraintKind::RadarConsistency);
  run_pipeline(scenario, config, nullptr, observer);

  bool ok = true;
  if (pairs.empty()) {
    note("no legitimate ADS-B/SSR pairs observed");
    ok = false;
  }
  int ready_pairs = 0;
  for (const auto& [eq, state] : pairs) {
    if (state.ready_t < 0) continue;
    ++ready_pairs;
    if (state.assoc_t < 0) {
      note("pair " + eq + " never associated");
      ok = false;
    } else if (state.assoc_t > state.ready_t + 3 * 5.0) {
      note("pair " + eq + " associated " +
           std::to_string(state.assoc_t - state.ready_t) + " s after ready");
      ok = false;
    }
  }
  if (ready_pairs == 0) {
    note("no pair ever reached the overlap threshold");
    ok = false;
  }
  if (ghost_associated) {
    note("a ghost track acquired an association");
    ok = false;
  }
  return ok;
}

}  // namespace

int main() {
  const Scenario scenario = reference();

  PipelineResult matrix_run;
  criterion(1, "detection matrix on the reference scenario",
            criterion_detection_matrix(scenario, matrix_run));

  std::map<std::pair<std::string, int>, PipelineResult> sweep;
  criterion(2, "ghost sweep 0..5 per constraint",
            criterion_ghost_sweep(scenario, sweep));

  criterion(3, "query engine equals the exhaustive oracle on 1000 cases",
            criterion_oracle_equivalence());

  criterion(4, "bundled constraint queries have the pinned structure",
            criterion_query_fidelity());

  criterion(5, "report buffering follows 400-then-50 with conservation",
            criterion_buffering(matrix_run));

  criterion(6, "metric trends: slopes, ghost cost growth, read/write shape",
            criterion_metric_trends(sweep));

  criterion(7, "identical runs are byte-identical",
            criterion_determinism(scenario));

  criterion(8, "geodesy vs independent oracle", criterion_geodesy());

  criterion(9, "legit tracks associate promptly, ghosts never",
            criterion_association(scenario));

  if (g_failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << g_failures << " acceptance check(s) failed\n";
  return 1;
}
