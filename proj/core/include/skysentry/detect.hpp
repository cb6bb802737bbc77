#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "skysentry/geo.hpp"
#include "skysentry/kg/query.hpp"
#include "skysentry/kg/store.hpp"
#include "skysentry/model.hpp"
#include "skysentry/scenario.hpp"

namespace skysentry {

enum class ConstraintKind { TrackOrigin, RadarConsistency, FlightPlan };

std::string to_string(ConstraintKind kind);

struct ConstraintSelection {
  bool track = true;
  bool radar = true;
  bool flight = true;

  static ConstraintSelection all() { return {}; }
  static ConstraintSelection only(ConstraintKind kind);
};

struct Alert {
  ConstraintKind constraint = ConstraintKind::TrackOrigin;
  kg::Iri report;
  std::string callsign;  // empty when unknown
  GeoPoint position;
  std::int64_t report_time_s = 0;
  double detected_at_s = 0.0;
  std::string reason;
};

struct DetectConfig {
  double detection_interval_s = 5.0;
  double airport_radius_nm = 5.0;
  double border_band_nm = 2.0;
  double stationary_window_s = 30.0;
  int stationary_min_reports = 6;
  double stationary_displacement_nm = 0.1;
  int radar_grace_sweeps = 2;
  double radar_sweep_s = 10.0;
};

// The fixed geography a detection run reasons against.
struct ScenarioGeometry {
  std::vector<Airport> airports;
  std::vector<CoverageArea> adsb_areas;
  std::vector<CoverageArea> radar_areas;

  static ScenarioGeometry from(const Scenario& scenario);
};

// One store access performed during a detection cycle.
struct QueryRecord {
  double wall_ms = 0.0;
  std::uint64_t rows = 0;
  std::uint64_t pattern_count = 0;  // positive patterns of the query
  std::uint64_t iterations = 0;
};

// Evaluates the three constraint queries on demand and applies the
// geometric / if-else reasoning on the rows. Reports already adjudicated
// are remembered per constraint and never alerted twice.
class DetectionEngine {
 public:
  DetectionEngine(const kg::TripleStore& store, ScenarioGeometry geometry,
                  DetectConfig cfg = {});

  std::vector<Alert> run_track_constraint(double now_s);
  std::vector<Alert> run_radar_constraint(double now_s);
  std::vector<Alert> run_flight_constraint(double now_s);

  // Runs the selected constraints in order track, radar, flight.
  std::vector<Alert> run_cycle(double now_s, const ConstraintSelection& sel);

  // Store accesses recorded since the last drain.
  std::vector<QueryRecord> drain_records();

  const DetectConfig& config() const { return cfg_; }

 private:
  kg::SolutionSet timed_evaluate(const kg::QueryAst& ast);
  std::optional<std::int64_t> report_timestamp(const kg::Iri& report_iri);
  std::optional<std::string> report_callsign(const kg::Iri& report_iri);
  std::optional<double> report_altitude(const kg::Iri& report_iri);
  bool in_any(const GeoPoint& p, const std::vector<CoverageArea>& areas) const;

  const kg::TripleStore& store_;
  ScenarioGeometry geometry_;
  DetectConfig cfg_;

  kg::QueryAst track_query_;
  kg::QueryAst radar_query_;
  kg::QueryAst flight_query_;

  std::unordered_set<std::string> track_adjudicated_;
  std::unordered_set<std::string> radar_alerted_;
  std::unordered_set<std::string> flight_alerted_;
  std::vector<QueryRecord> records_;
};

}  // namespace skysentry
