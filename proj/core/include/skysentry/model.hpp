#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "skysentry/geo.hpp"

namespace skysentry {

struct Airport {
  std::string id;  // ICAO-style, unique within a scenario
  GeoPoint location;
};

struct FlightPlan {
  std::string callsign;  // non-empty, unique among loaded plans
  std::string equipment_id;
  std::string origin;
  std::string destination;
};

struct AircraftState {
  std::string callsign;
  std::string equipment_id;
  GeoPoint position;
  double altitude_ft = 0.0;      // >= 0
  double ground_speed_kt = 0.0;  // >= 0
  double heading_deg = 0.0;      // [0, 360)
};

enum class ReportKind { Psr, Ssr, Adsb };

inline std::string to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::Psr:
      return "PSR";
    case ReportKind::Ssr:
      return "SSR";
    case ReportKind::Adsb:
      return "ADSB";
  }
  return "?";
}

// Primary radar return: position only, no altitude, no identity.
struct PsrReport {
  std::string reporter_id;
  GeoPoint position;
};

// Transponder interrogation: position, altitude and the aircraft identity.
struct SsrReport {
  std::string reporter_id;
  GeoPoint position;
  double altitude_ft = 0.0;
  std::string identity;  // equipment id
};

// Self-reported broadcast: everything the aircraft claims about itself.
struct AdsbReport {
  std::string antenna_id;
  GeoPoint position;
  double altitude_ft = 0.0;
  std::string callsign;
  std::string equipment_id;
  double ground_speed_kt = 0.0;
};

struct PositionReport {
  std::uint64_t report_id = 0;  // globally unique per run
  std::int64_t timestamp_s = 0;
  std::variant<PsrReport, SsrReport, AdsbReport> body;

  ReportKind kind() const {
    return static_cast<ReportKind>(body.index());
  }
  const GeoPoint& position() const {
    return std::visit(
        [](const auto& b) -> const GeoPoint& { return b.position; }, body);
  }
  const std::string& reporter_id() const {
    if (const auto* a = std::get_if<AdsbReport>(&body)) {
      return a->antenna_id;
    }
    if (const auto* s = std::get_if<SsrReport>(&body)) {
      return s->reporter_id;
    }
    return std::get<PsrReport>(body).reporter_id;
  }
};

}  // namespace skysentry
