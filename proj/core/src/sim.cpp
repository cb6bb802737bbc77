#include "skysentry/sim.hpp"

#include <cmath>
#include <numbers>

#include "skysentry/geo.hpp"

namespace skysentry {

namespace {

double initial_bearing_deg(const GeoPoint& from, const GeoPoint& to) {
  constexpr double d2r = std::numbers::pi / 180.0;
  const double lat1 = from.lat_deg * d2r;
  const double lat2 = to.lat_deg * d2r;
  const double dlon = (to.lon_deg - from.lon_deg) * d2r;
  const double y = std::sin(dlon) * std::cos(lat2);
  const double x = std::cos(lat1) * std::sin(lat2) -
                   std::sin(lat1) * std::cos(lat2) * std::cos(dlon);
  double deg = std::atan2(y, x) / d2r;
  if (deg < 0) deg += 360.0;
  return deg >= 360.0 ? 0.0 : deg;
}

double heading_along(const std::vector<TimedPoint>& waypoints, double now_s) {
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    if (now_s <= waypoints[i + 1].t_s) {
      if (waypoints[i].point == waypoints[i + 1].point) return 0.0;
      return initial_bearing_deg(waypoints[i].point, waypoints[i + 1].point);
    }
  }
  return 0.0;
}

bool cadence_fires(double now_s, double tick_s, double cadence_s) {
  const auto tick = static_cast<std::int64_t>(std::llround(now_s / tick_s));
  const auto every = static_cast<std::int64_t>(std::llround(cadence_s / tick_s));
  return every > 0 && tick % every == 0;
}

}  // namespace

std::vector<ActiveAircraft> step(const Scenario& scenario,
                                 std::size_t ghost_count, double now_s) {
  std::vector<ActiveAircraft> out;
  for (const FlightScript& flight : scenario.legit_flights) {
    if (now_s < flight.waypoints.front().t_s ||
        now_s > flight.waypoints.back().t_s) {
      continue;
    }
    AircraftState state;
    state.callsign = flight.callsign;
    state.equipment_id = flight.equipment_id;
    state.position = interpolate_position(flight.waypoints, now_s);
    state.altitude_ft = flight.altitude_ft;
    state.ground_speed_kt = flight.ground_speed_kt;
    state.heading_deg = heading_along(flight.waypoints, now_s);
    out.push_back({std::move(state), false});
  }
  const std::size_t ghosts =
      std::min(ghost_count, scenario.ghost_flights.size());
  for (std::size_t i = 0; i < ghosts; ++i) {
    const GhostScript& ghost = scenario.ghost_flights[i];
    if (now_s < ghost.spawn_time_s) continue;
    AircraftState state;
    state.callsign = ghost.callsign;
    state.equipment_id = ghost.equipment_id;
    state.altitude_ft = ghost.altitude_ft;
    state.ground_speed_kt = ghost.ground_speed_kt;
    if (ghost.position) {
      state.position = *ghost.position;
      state.heading_deg = 0.0;
    } else {
      if (now_s > ghost.waypoints.back().t_s) continue;
      state.position = interpolate_position(ghost.waypoints, now_s);
      state.heading_deg = heading_along(ghost.waypoints, now_s);
    }
    out.push_back({std::move(state), true});
  }
  return out;
}

PositionReport ReportFactory::make(ReportKind kind,
                                   const ActiveAircraft& aircraft,
                                   const std::string& reporter_id,
                                   double now_s) {
  PositionReport report;
  report.report_id = next_id_++;
  report.timestamp_s = static_cast<std::int64_t>(std::llround(now_s));
  const GeoPoint pos = jitter(aircraft.state.position);
  switch (kind) {
    case ReportKind::Psr:
      report.body = PsrReport{reporter_id, pos};
      break;
    case ReportKind::Ssr:
      report.body = SsrReport{reporter_id, pos, aircraft.state.altitude_ft,
                              aircraft.state.equipment_id};
      break;
    case ReportKind::Adsb:
      report.body = AdsbReport{reporter_id,
                               pos,
                               aircraft.state.altitude_ft,
                               aircraft.state.callsign,
                               aircraft.state.equipment_id,
                               aircraft.state.ground_speed_kt};
      break;
  }
  return report;
}

GeoPoint ReportFactory::jitter(const GeoPoint& p) {
  if (jitter_nm_ <= 0.0) return p;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = jitter_nm_ * std::sqrt(unit(rng_));
  const double angle = 2.0 * std::numbers::pi * unit(rng_);
  constexpr double nm_per_deg = 60.0;
  const double dlat = r * std::cos(angle) / nm_per_deg;
  const double cos_lat = std::cos(p.lat_deg * std::numbers::pi / 180.0);
  const double dlon =
      cos_lat > 1e-9 ? r * std::sin(angle) / (nm_per_deg * cos_lat) : 0.0;
  return GeoPoint{p.lat_deg + dlat, p.lon_deg + dlon};
}

std::vector<PositionReport> emit_reports(
    std::span<const ActiveAircraft> aircraft, const Scenario& scenario,
    double now_s, ReportFactory& factory) {
  std::vector<PositionReport> out;
  for (const ActiveAircraft& craft : aircraft) {
    for (const ReporterSpec& reporter : scenario.reporters) {
      if (!cadence_fires(now_s, scenario.tick_s, reporter.cadence_s)) continue;
      if (!within_coverage(craft.state.position, reporter.area)) continue;
      if (craft.ghost && reporter.area.kind != SensorKind::Adsb) continue;
      ReportKind kind = ReportKind::Adsb;
      switch (reporter.area.kind) {
        case SensorKind::Psr:
          kind = ReportKind::Psr;
          break;
        case SensorKind::Ssr:
          kind = ReportKind::Ssr;
          break;
        case SensorKind::Adsb:
          kind = ReportKind::Adsb;
          break;
      }
      out.push_back(factory.make(kind, craft, reporter.area.id, now_s));
    }
  }
  return out;
}

RunSummary run_simulation(const Scenario& scenario, std::size_t ghosts,
                          const ReportSink& sink,
                          std::uint64_t seed_override) {
  const std::uint64_t seed =
      seed_override != 0 ? seed_override : scenario.seed;
  ReportFactory factory(seed, scenario.jitter_nm);
  RunSummary summary;
  SimClock clock{0.0, scenario.tick_s, 0.0};
  const auto ticks = static_cast<std::int64_t>(
      std::llround(scenario.duration_s / scenario.tick_s));
  for (std::int64_t k = 0; k < ticks; ++k) {
    clock.now_s = static_cast<double>(k) * clock.tick_s;
    const double now_s = clock.now_s;
    const auto aircraft = step(scenario, ghosts, now_s);
    for (const PositionReport& report :
         emit_reports(aircraft, scenario, now_s, factory)) {
      switch (report.kind()) {
        case ReportKind::Psr:
          ++summary.psr_reports;
          break;
        case ReportKind::Ssr:
          ++summary.ssr_reports;
          break;
        case ReportKind::Adsb:
          ++summary.adsb_reports;
          break;
      }
      ++summary.reports;
      sink(report);
    }
    ++summary.ticks;
  }
  return summary;
}

}  // namespace skysentry
