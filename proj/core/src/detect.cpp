#include "skysentry/detect.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "skysentry/kg/parser.hpp"
#include "skysentry/queries.hpp"
#include "skysentry/vocab.hpp"

namespace skysentry {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

double literal_number(const kg::Term& t) {
  const auto* lit = std::get_if<kg::Literal>(&t);
  return lit && lit->is_numeric() ? lit->numeric_value() : 0.0;
}

std::string literal_string(const kg::Term& t) {
  const auto* lit = std::get_if<kg::Literal>(&t);
  return lit && lit->type() == kg::Literal::Type::String ? lit->as_string()
                                                         : std::string{};
}

}  // namespace

std::string to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::TrackOrigin:
      return "TRACK_ORIGIN";
    case ConstraintKind::RadarConsistency:
      return "RADAR_CONSISTENCY";
    case ConstraintKind::FlightPlan:
      return "FLIGHT_PLAN";
  }
  return "?";
}

ConstraintSelection ConstraintSelection::only(ConstraintKind kind) {
  ConstraintSelection sel{false, false, false};
  switch (kind) {
    case ConstraintKind::TrackOrigin:
      sel.track = true;
      break;
    case ConstraintKind::RadarConsistency:
      sel.radar = true;
      break;
    case ConstraintKind::FlightPlan:
      sel.flight = true;
      break;
  }
  return sel;
}

ScenarioGeometry ScenarioGeometry::from(const Scenario& scenario) {
  ScenarioGeometry geometry;
  geometry.airports = scenario.airports;
  geometry.adsb_areas = scenario.adsb_areas();
  geometry.radar_areas = scenario.radar_areas();
  return geometry;
}

DetectionEngine::DetectionEngine(const kg::TripleStore& store,
                                 ScenarioGeometry geometry, DetectConfig cfg)
    : store_(store),
      geometry_(std::move(geometry)),
      cfg_(cfg),
      track_query_(kg::parse_query(queries::track_origin())),
      radar_query_(kg::parse_query(queries::radar_consistency())),
      flight_query_(kg::parse_query(queries::flight_plan())) {}

kg::SolutionSet DetectionEngine::timed_evaluate(const kg::QueryAst& ast) {
  const auto start = Clock::now();
  kg::SolutionSet result = store_.evaluate(ast);
  records_.push_back(QueryRecord{ms_since(start), result.rows.size(),
                                 ast.pattern_count(),
                                 result.stats.iterations});
  return result;
}

std::optional<std::int64_t> DetectionEngine::report_timestamp(
    const kg::Iri& report_iri) {
  const auto start = Clock::now();
  const std::uint64_t reads_before = store_.reads();
  auto triples = store_.match(report_iri,
                              vocab::has_time_stamp(ReportKind::Adsb),
                              std::nullopt);
  records_.push_back(QueryRecord{ms_since(start), triples.size(), 1,
                                 store_.reads() - reads_before});
  if (triples.empty()) return std::nullopt;
  const auto* lit = std::get_if<kg::Literal>(&triples.front().object);
  if (!lit || !lit->is_numeric()) return std::nullopt;
  return static_cast<std::int64_t>(lit->numeric_value());
}

std::optional<std::string> DetectionEngine::report_callsign(
    const kg::Iri& report_iri) {
  const auto start = Clock::now();
  const std::uint64_t reads_before = store_.reads();
  auto triples =
      store_.match(report_iri, vocab::adsb_has_callsign(), std::nullopt);
  records_.push_back(QueryRecord{ms_since(start), triples.size(), 1,
                                 store_.reads() - reads_before});
  if (triples.empty()) return std::nullopt;
  const auto* lit = std::get_if<kg::Literal>(&triples.front().object);
  if (!lit || lit->type() != kg::Literal::Type::String) return std::nullopt;
  return lit->as_string();
}

std::optional<double> DetectionEngine::report_altitude(
    const kg::Iri& report_iri) {
  const auto start = Clock::now();
  const std::uint64_t reads_before = store_.reads();
  auto triples = store_.match(report_iri, vocab::has_altitude(ReportKind::Adsb),
                              std::nullopt);
  records_.push_back(QueryRecord{ms_since(start), triples.size(), 1,
                                 store_.reads() - reads_before});
  if (triples.empty()) return std::nullopt;
  const auto* lit = std::get_if<kg::Literal>(&triples.front().object);
  if (!lit || !lit->is_numeric()) return std::nullopt;
  return lit->numeric_value();
}

bool DetectionEngine::in_any(const GeoPoint& p,
                             const std::vector<CoverageArea>& areas) const {
  return std::any_of(areas.begin(), areas.end(), [&](const CoverageArea& a) {
    return within_coverage(p, a);
  });
}

std::vector<Alert> DetectionEngine::run_track_constraint(double now_s) {
  std::vector<Alert> alerts;
  const kg::SolutionSet rows = timed_evaluate(track_query_);
  // select list: ?report ?lat ?long ?alt ?eID ?call
  for (const auto& row : rows.rows) {
    const auto& report_iri = std::get<kg::Iri>(row[0]);
    if (!track_adjudicated_.insert(report_iri.value).second) continue;

    const GeoPoint origin{literal_number(row[1]), literal_number(row[2])};
    bool legal = false;
    for (const Airport& airport : geometry_.airports) {
      if (haversine_nm(origin, airport.location) <= cfg_.airport_radius_nm) {
        legal = true;
      }
    }
    for (const CoverageArea& area : geometry_.adsb_areas) {
      if (std::abs(distance_to_border_nm(origin, area)) <=
          cfg_.border_band_nm) {
        legal = true;
      }
    }
    if (legal) continue;

    Alert alert;
    alert.constraint = ConstraintKind::TrackOrigin;
    alert.report = report_iri;
    alert.callsign = literal_string(row[5]);
    alert.position = origin;
    alert.report_time_s = report_timestamp(report_iri).value_or(0);
    alert.detected_at_s = now_s;
    alert.reason = "invalid_origin";
    alerts.push_back(std::move(alert));
  }
  return alerts;
}

std::vector<Alert> DetectionEngine::run_radar_constraint(double now_s) {
  std::vector<Alert> alerts;
  const kg::SolutionSet rows = timed_evaluate(radar_query_);
  // select list: ?track ?report ?lat ?long ?time, ordered by track then time

  struct TrackRow {
    const kg::Iri* report;
    GeoPoint position;
    std::int64_t time_s;
  };
  const double grace_s = cfg_.radar_grace_sweeps * cfg_.radar_sweep_s;

  auto flush_track = [&](const kg::Iri& track,
                         const std::vector<TrackRow>& samples) {
    if (samples.empty()) return;
    (void)track;

    // unassociated track seen inside radar coverage beyond the grace window
    std::optional<std::int64_t> first_in_radar;
    for (const TrackRow& s : samples) {
      if (!in_any(s.position, geometry_.radar_areas)) continue;
      if (!first_in_radar) first_in_radar = s.time_s;
      if (static_cast<double>(s.time_s - *first_in_radar) < grace_s) continue;
      if (!radar_alerted_.insert(s.report->value).second) continue;
      Alert alert;
      alert.constraint = ConstraintKind::RadarConsistency;
      alert.report = *s.report;
      alert.callsign = report_callsign(*s.report).value_or("");
      alert.position = s.position;
      alert.report_time_s = s.time_s;
      alert.detected_at_s = now_s;
      alert.reason = "no_radar_track";
      alerts.push_back(std::move(alert));
    }

    // stationary track: enough reports over a long enough window that
    // never move, while claiming to be airborne
    if (static_cast<int>(samples.size()) < cfg_.stationary_min_reports) return;
    if (static_cast<double>(samples.back().time_s - samples.front().time_s) <
        cfg_.stationary_window_s) {
      return;
    }
    double max_displacement = 0.0;
    for (std::size_t i = 0; i < samples.size() && max_displacement <
                                cfg_.stationary_displacement_nm; ++i) {
      for (std::size_t j = i + 1; j < samples.size(); ++j) {
        max_displacement = std::max(
            max_displacement,
            haversine_nm(samples[i].position, samples[j].position));
        if (max_displacement >= cfg_.stationary_displacement_nm) break;
      }
    }
    if (max_displacement >= cfg_.stationary_displacement_nm) return;
    const TrackRow& latest = samples.back();
    if (report_altitude(*latest.report).value_or(0.0) <= 0.0) return;
    if (!radar_alerted_.insert(latest.report->value).second) return;
    Alert alert;
    alert.constraint = ConstraintKind::RadarConsistency;
    alert.report = *latest.report;
    alert.callsign = report_callsign(*latest.report).value_or("");
    alert.position = latest.position;
    alert.report_time_s = latest.time_s;
    alert.detected_at_s = now_s;
    alert.reason = "stationary_track";
    alerts.push_back(std::move(alert));
  };

  const kg::Iri* current_track = nullptr;
  std::vector<TrackRow> samples;
  for (const auto& row : rows.rows) {
    const auto& track = std::get<kg::Iri>(row[0]);
    if (!current_track || !(track == *current_track)) {
      if (current_track) flush_track(*current_track, samples);
      current_track = &track;
      samples.clear();
    }
    samples.push_back(TrackRow{
        &std::get<kg::Iri>(row[1]),
        GeoPoint{literal_number(row[2]), literal_number(row[3])},
        static_cast<std::int64_t>(literal_number(row[4]))});
  }
  if (current_track) flush_track(*current_track, samples);
  return alerts;
}

std::vector<Alert> DetectionEngine::run_flight_constraint(double now_s) {
  std::vector<Alert> alerts;
  const kg::SolutionSet rows = timed_evaluate(flight_query_);
  // select list: ?callsign ?report ?lat ?long ?time
  for (const auto& row : rows.rows) {
    const auto& report_iri = std::get<kg::Iri>(row[1]);
    if (!flight_alerted_.insert(report_iri.value).second) continue;
    Alert alert;
    alert.constraint = ConstraintKind::FlightPlan;
    alert.report = report_iri;
    alert.callsign = literal_string(row[0]);
    alert.position = GeoPoint{literal_number(row[2]), literal_number(row[3])};
    alert.report_time_s = static_cast<std::int64_t>(literal_number(row[4]));
    alert.detected_at_s = now_s;
    alert.reason = "no_flight_plan";
    alerts.push_back(std::move(alert));
  }
  return alerts;
}

std::vector<Alert> DetectionEngine::run_cycle(double now_s,
                                              const ConstraintSelection& sel) {
  std::vector<Alert> alerts;
  auto append = [&](std::vector<Alert> more) {
    alerts.insert(alerts.end(), std::make_move_iterator(more.begin()),
                  std::make_move_iterator(more.end()));
  };
  if (sel.track) append(run_track_constraint(now_s));
  if (sel.radar) append(run_radar_constraint(now_s));
  if (sel.flight) append(run_flight_constraint(now_s));
  return alerts;
}

std::vector<QueryRecord> DetectionEngine::drain_records() {
  std::vector<QueryRecord> out = std::move(records_);
  records_.clear();
  return out;
}

}  // namespace skysentry
