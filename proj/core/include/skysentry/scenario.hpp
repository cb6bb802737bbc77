#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "skysentry/geo.hpp"
#include "skysentry/model.hpp"

namespace skysentry {

struct ReporterSpec {
  CoverageArea area;
  double cadence_s = 5.0;  // integer multiple of the tick
};

struct FlightScript {
  std::string callsign;
  std::string equipment_id;
  std::vector<TimedPoint> waypoints;  // strictly increasing times
  double altitude_ft = 0.0;
  double ground_speed_kt = 0.0;
};

enum class GhostBehavior {
  Static,
  StaticNearAirport,
  CrossIntoRadar,
  AdsbOnlyMoving,
};

std::string to_string(GhostBehavior behavior);

struct GhostScript {
  std::string callsign;  // never matches a flight plan
  std::string equipment_id;
  GhostBehavior behavior = GhostBehavior::Static;
  double spawn_time_s = 180.0;
  double altitude_ft = 0.0;
  double ground_speed_kt = 0.0;
  std::optional<GeoPoint> position;   // static behaviors
  std::vector<TimedPoint> waypoints;  // moving behaviors, absolute times
};

struct Scenario {
  std::string name;
  double duration_s = 400.0;
  double tick_s = 1.0;
  std::uint64_t seed = 0;
  double jitter_nm = 0.0;  // 0 disables position jitter

  std::vector<Airport> airports;
  std::vector<ReporterSpec> reporters;
  std::vector<FlightPlan> flight_plans;
  std::vector<FlightScript> legit_flights;
  std::vector<GhostScript> ghost_flights;

  std::vector<CoverageArea> adsb_areas() const;
  std::vector<CoverageArea> radar_areas() const;  // PSR and SSR
  double max_radar_cadence_s() const;
};

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what)
      : std::runtime_error(what) {}
  ScenarioError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what) {}
};

// Text format: bracketed section headers ([airspace], [airport], [reporter],
// [flightplan], [flight], [ghost]) each followed by key=value lines; '#'
// starts a comment; waypoint lists are `lat,lon@t` items joined with ';'.
// Unknown sections or keys are errors. The returned scenario is validated.
Scenario load_scenario(std::string_view text);
Scenario load_scenario_file(const std::filesystem::path& path);

// Invariants checked after parsing; throws ScenarioError naming the first
// violation. Exposed so programmatically built scenarios can be checked too.
void validate_scenario(const Scenario& scenario);

}  // namespace skysentry
