#include "skysentry/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace skysentry {

namespace {

// Origin legality used to validate legitimate flights; mirrors the detection
// defaults so scripted flights always pass the origin check.
constexpr double kOriginAirportRadiusNm = 5.0;
constexpr double kOriginBorderBandNm = 2.0;

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::string name;
  std::size_t line = 0;
  std::vector<KeyValue> entries;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ScenarioError(line_no, "malformed section header");
      }
      sections.push_back({line.substr(1, line.size() - 2), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ScenarioError(line_no, "expected key=value");
    }
    if (sections.empty()) {
      throw ScenarioError(line_no, "key=value before any section header");
    }
    sections.back().entries.push_back(
        {trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no});
  }
  return sections;
}

double parse_double(const KeyValue& kv) {
  double v = 0;
  const char* b = kv.value.data();
  const char* e = b + kv.value.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || p != e) {
    throw ScenarioError(kv.line, "bad number for '" + kv.key + "'");
  }
  return v;
}

std::uint64_t parse_u64(const KeyValue& kv) {
  std::uint64_t v = 0;
  const char* b = kv.value.data();
  const char* e = b + kv.value.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || p != e) {
    throw ScenarioError(kv.line, "bad unsigned integer for '" + kv.key + "'");
  }
  return v;
}

GeoPoint parse_geo(const KeyValue& kv, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ScenarioError(kv.line, "expected lat,lon");
  }
  KeyValue lat{kv.key, trim(text.substr(0, comma)), kv.line};
  KeyValue lon{kv.key, trim(text.substr(comma + 1)), kv.line};
  GeoPoint p{parse_double(lat), parse_double(lon)};
  if (!valid_geo_point(p)) {
    throw ScenarioError(kv.line, "lat/lon out of range");
  }
  return p;
}

std::vector<TimedPoint> parse_waypoints(const KeyValue& kv) {
  std::vector<TimedPoint> out;
  std::istringstream items(kv.value);
  std::string item;
  while (std::getline(items, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto at = item.find('@');
    if (at == std::string::npos) {
      throw ScenarioError(kv.line, "waypoint must be lat,lon@t");
    }
    GeoPoint p = parse_geo(kv, item.substr(0, at));
    KeyValue t{kv.key, trim(item.substr(at + 1)), kv.line};
    out.push_back(TimedPoint{parse_double(t), p});
  }
  if (out.empty()) {
    throw ScenarioError(kv.line, "empty waypoint list");
  }
  return out;
}

SensorKind parse_kind(const KeyValue& kv) {
  if (kv.value == "ADSB") return SensorKind::Adsb;
  if (kv.value == "PSR") return SensorKind::Psr;
  if (kv.value == "SSR") return SensorKind::Ssr;
  throw ScenarioError(kv.line, "reporter kind must be ADSB, PSR or SSR");
}

GhostBehavior parse_behavior(const KeyValue& kv) {
  if (kv.value == "STATIC") return GhostBehavior::Static;
  if (kv.value == "STATIC_NEAR_AIRPORT") return GhostBehavior::StaticNearAirport;
  if (kv.value == "CROSS_INTO_RADAR") return GhostBehavior::CrossIntoRadar;
  if (kv.value == "ADSB_ONLY_MOVING") return GhostBehavior::AdsbOnlyMoving;
  throw ScenarioError(kv.line, "unknown ghost behavior '" + kv.value + "'");
}

[[noreturn]] void unknown_key(const Section& section, const KeyValue& kv) {
  throw ScenarioError(kv.line, "unknown key '" + kv.key + "' in [" +
                                   section.name + "]");
}

}  // namespace

std::string to_string(GhostBehavior behavior) {
  switch (behavior) {
    case GhostBehavior::Static:
      return "STATIC";
    case GhostBehavior::StaticNearAirport:
      return "STATIC_NEAR_AIRPORT";
    case GhostBehavior::CrossIntoRadar:
      return "CROSS_INTO_RADAR";
    case GhostBehavior::AdsbOnlyMoving:
      return "ADSB_ONLY_MOVING";
  }
  return "?";
}

std::vector<CoverageArea> Scenario::adsb_areas() const {
  std::vector<CoverageArea> out;
  for (const auto& r : reporters) {
    if (r.area.kind == SensorKind::Adsb) out.push_back(r.area);
  }
  return out;
}

std::vector<CoverageArea> Scenario::radar_areas() const {
  std::vector<CoverageArea> out;
  for (const auto& r : reporters) {
    if (r.area.kind != SensorKind::Adsb) out.push_back(r.area);
  }
  return out;
}

double Scenario::max_radar_cadence_s() const {
  double cadence = 0.0;
  for (const auto& r : reporters) {
    if (r.area.kind != SensorKind::Adsb) cadence = std::max(cadence, r.cadence_s);
  }
  return cadence;
}

Scenario load_scenario(std::string_view text) {
  Scenario scenario;
  for (const Section& section : split_sections(text)) {
    if (section.name == "airspace") {
      for (const auto& kv : section.entries) {
        if (kv.key == "name") scenario.name = kv.value;
        else if (kv.key == "duration_s") scenario.duration_s = parse_double(kv);
        else if (kv.key == "tick_s") scenario.tick_s = parse_double(kv);
        else if (kv.key == "seed") scenario.seed = parse_u64(kv);
        else if (kv.key == "jitter_nm") scenario.jitter_nm = parse_double(kv);
        else unknown_key(section, kv);
      }
    } else if (section.name == "airport") {
      Airport airport;
      std::optional<double> lat, lon;
      for (const auto& kv : section.entries) {
        if (kv.key == "id") airport.id = kv.value;
        else if (kv.key == "lat") lat = parse_double(kv);
        else if (kv.key == "lon") lon = parse_double(kv);
        else unknown_key(section, kv);
      }
      if (airport.id.empty() || !lat || !lon) {
        throw ScenarioError(section.line, "[airport] needs id, lat, lon");
      }
      airport.location = GeoPoint{*lat, *lon};
      scenario.airports.push_back(std::move(airport));
    } else if (section.name == "reporter") {
      ReporterSpec reporter;
      std::optional<double> lat, lon;
      bool have_kind = false;
      for (const auto& kv : section.entries) {
        if (kv.key == "id") reporter.area.id = kv.value;
        else if (kv.key == "kind") { reporter.area.kind = parse_kind(kv); have_kind = true; }
        else if (kv.key == "lat") lat = parse_double(kv);
        else if (kv.key == "lon") lon = parse_double(kv);
        else if (kv.key == "radius_nm") reporter.area.radius_nm = parse_double(kv);
        else if (kv.key == "cadence_s") reporter.cadence_s = parse_double(kv);
        else unknown_key(section, kv);
      }
      if (reporter.area.id.empty() || !have_kind || !lat || !lon) {
        throw ScenarioError(section.line,
                            "[reporter] needs id, kind, lat, lon, radius_nm");
      }
      reporter.area.center = GeoPoint{*lat, *lon};
      scenario.reporters.push_back(std::move(reporter));
    } else if (section.name == "flightplan") {
      FlightPlan plan;
      for (const auto& kv : section.entries) {
        if (kv.key == "callsign") plan.callsign = kv.value;
        else if (kv.key == "equipment") plan.equipment_id = kv.value;
        else if (kv.key == "origin") plan.origin = kv.value;
        else if (kv.key == "destination") plan.destination = kv.value;
        else unknown_key(section, kv);
      }
      if (plan.callsign.empty()) {
        throw ScenarioError(section.line, "[flightplan] needs callsign");
      }
      scenario.flight_plans.push_back(std::move(plan));
    } else if (section.name == "flight") {
      FlightScript flight;
      for (const auto& kv : section.entries) {
        if (kv.key == "callsign") flight.callsign = kv.value;
        else if (kv.key == "equipment") flight.equipment_id = kv.value;
        else if (kv.key == "altitude_ft") flight.altitude_ft = parse_double(kv);
        else if (kv.key == "ground_speed_kt") flight.ground_speed_kt = parse_double(kv);
        else if (kv.key == "waypoints") flight.waypoints = parse_waypoints(kv);
        else unknown_key(section, kv);
      }
      if (flight.callsign.empty() || flight.waypoints.empty()) {
        throw ScenarioError(section.line, "[flight] needs callsign, waypoints");
      }
      scenario.legit_flights.push_back(std::move(flight));
    } else if (section.name == "ghost") {
      GhostScript ghost;
      for (const auto& kv : section.entries) {
        if (kv.key == "callsign") ghost.callsign = kv.value;
        else if (kv.key == "equipment") ghost.equipment_id = kv.value;
        else if (kv.key == "behavior") ghost.behavior = parse_behavior(kv);
        else if (kv.key == "spawn_time_s") ghost.spawn_time_s = parse_double(kv);
        else if (kv.key == "altitude_ft") ghost.altitude_ft = parse_double(kv);
        else if (kv.key == "ground_speed_kt") ghost.ground_speed_kt = parse_double(kv);
        else if (kv.key == "position") ghost.position = parse_geo(kv, kv.value);
        else if (kv.key == "waypoints") ghost.waypoints = parse_waypoints(kv);
        else unknown_key(section, kv);
      }
      if (ghost.callsign.empty()) {
        throw ScenarioError(section.line, "[ghost] needs callsign");
      }
      scenario.ghost_flights.push_back(std::move(ghost));
    } else {
      throw ScenarioError(section.line, "unknown section [" + section.name + "]");
    }
  }
  validate_scenario(scenario);
  return scenario;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("cannot open scenario file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

void validate_scenario(const Scenario& scenario) {
  if (scenario.duration_s <= 0) throw ScenarioError("duration_s must be > 0");
  if (scenario.tick_s <= 0) throw ScenarioError("tick_s must be > 0");
  if (scenario.jitter_nm < 0) throw ScenarioError("jitter_nm must be >= 0");

  const auto adsb = scenario.adsb_areas();
  if (adsb.empty()) {
    throw ScenarioError("scenario needs at least one ADSB coverage area");
  }

  std::set<std::string> airport_ids;
  for (const auto& airport : scenario.airports) {
    if (!valid_geo_point(airport.location)) {
      throw ScenarioError("airport " + airport.id + ": invalid location");
    }
    if (!airport_ids.insert(airport.id).second) {
      throw ScenarioError("duplicate airport id " + airport.id);
    }
  }

  for (const auto& reporter : scenario.reporters) {
    if (reporter.area.radius_nm <= 0) {
      throw ScenarioError("reporter " + reporter.area.id + ": radius must be > 0");
    }
    if (!valid_geo_point(reporter.area.center)) {
      throw ScenarioError("reporter " + reporter.area.id + ": invalid center");
    }
    const double ratio = reporter.cadence_s / scenario.tick_s;
    if (reporter.cadence_s <= 0 ||
        std::abs(ratio - std::round(ratio)) > 1e-9) {
      throw ScenarioError("reporter " + reporter.area.id +
                          ": cadence must be a positive multiple of the tick");
    }
  }

  std::set<std::string> plan_callsigns;
  for (const auto& plan : scenario.flight_plans) {
    if (plan.callsign.empty()) throw ScenarioError("flight plan with empty callsign");
    if (!plan_callsigns.insert(plan.callsign).second) {
      throw ScenarioError("duplicate flight plan callsign " + plan.callsign);
    }
  }

  auto check_waypoints = [](const std::string& who,
                            const std::vector<TimedPoint>& wps) {
    for (std::size_t i = 0; i < wps.size(); ++i) {
      if (!valid_geo_point(wps[i].point)) {
        throw ScenarioError(who + ": invalid waypoint coordinates");
      }
      if (i > 0 && !(wps[i - 1].t_s < wps[i].t_s)) {
        throw ScenarioError(who + ": waypoint times must be strictly increasing");
      }
    }
  };

  for (const auto& flight : scenario.legit_flights) {
    if (!plan_callsigns.count(flight.callsign)) {
      throw ScenarioError("flight " + flight.callsign +
                          " has no matching flight plan");
    }
    check_waypoints("flight " + flight.callsign, flight.waypoints);
    if (flight.altitude_ft < 0 || flight.ground_speed_kt < 0) {
      throw ScenarioError("flight " + flight.callsign +
                          ": altitude and speed must be >= 0");
    }
    // legitimate flights must start where the origin constraint allows
    const GeoPoint& start = flight.waypoints.front().point;
    bool legal = false;
    for (const auto& airport : scenario.airports) {
      if (haversine_nm(start, airport.location) <= kOriginAirportRadiusNm) {
        legal = true;
      }
    }
    for (const auto& area : adsb) {
      if (std::abs(distance_to_border_nm(start, area)) <= kOriginBorderBandNm) {
        legal = true;
      }
    }
    if (!legal) {
      throw ScenarioError("flight " + flight.callsign +
                          ": first waypoint is neither near an airport nor in "
                          "an ADSB border band");
    }
  }

  for (const auto& ghost : scenario.ghost_flights) {
    if (plan_callsigns.count(ghost.callsign)) {
      throw ScenarioError("ghost " + ghost.callsign +
                          " must not match a flight plan callsign");
    }
    if (!(ghost.spawn_time_s < scenario.duration_s)) {
      throw ScenarioError("ghost " + ghost.callsign +
                          ": spawn_time_s must be before the scenario end");
    }
    const bool moving = ghost.behavior == GhostBehavior::CrossIntoRadar ||
                        ghost.behavior == GhostBehavior::AdsbOnlyMoving;
    if (moving) {
      if (ghost.waypoints.size() < 2) {
        throw ScenarioError("ghost " + ghost.callsign +
                            ": moving behavior needs at least 2 waypoints");
      }
      check_waypoints("ghost " + ghost.callsign, ghost.waypoints);
      if (ghost.waypoints.front().t_s != ghost.spawn_time_s) {
        throw ScenarioError("ghost " + ghost.callsign +
                            ": first waypoint time must equal spawn_time_s");
      }
    } else {
      if (!ghost.position) {
        throw ScenarioError("ghost " + ghost.callsign +
                            ": static behavior needs a position");
      }
      if (!valid_geo_point(*ghost.position)) {
        throw ScenarioError("ghost " + ghost.callsign + ": invalid position");
      }
    }
  }

  // Longitude interpolation is not unwrapped, so the whole scenario must
  // stay clear of the antimeridian.
  double lon_min = std::numeric_limits<double>::infinity();
  double lon_max = -std::numeric_limits<double>::infinity();
  auto see = [&](const GeoPoint& p) {
    lon_min = std::min(lon_min, p.lon_deg);
    lon_max = std::max(lon_max, p.lon_deg);
  };
  for (const auto& a : scenario.airports) see(a.location);
  for (const auto& r : scenario.reporters) see(r.area.center);
  for (const auto& f : scenario.legit_flights) {
    for (const auto& w : f.waypoints) see(w.point);
  }
  for (const auto& g : scenario.ghost_flights) {
    if (g.position) see(*g.position);
    for (const auto& w : g.waypoints) see(w.point);
  }
  if (lon_min < lon_max && lon_max - lon_min >= 180.0) {
    throw ScenarioError("scenario spans too much longitude; keep it within "
                        "one hemisphere away from the antimeridian");
  }
}

}  // namespace skysentry
