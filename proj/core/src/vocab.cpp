#include "skysentry/vocab.hpp"

#include "skysentry/kg/query.hpp"

namespace skysentry::vocab {

namespace {

const char* broadcast_ns(ReportKind kind) {
  switch (kind) {
    case ReportKind::Psr:
      return kPsrNs;
    case ReportKind::Ssr:
      return kSsrNs;
    case ReportKind::Adsb:
      return kAdsbNs;
  }
  return kAdsbNs;
}

kg::Iri in_ns(const char* ns, const char* local) {
  return kg::Iri{std::string(ns) + local};
}

}  // namespace

kg::Iri rdf_type() { return kg::Iri{kg::kRdfTypeIri}; }

kg::Iri adsb_position_class() { return in_ns(kAdsbNs, "ADSBFlightPosition"); }
kg::Iri psr_position_class() { return in_ns(kPsrNs, "PSRPosition"); }
kg::Iri ssr_position_class() { return in_ns(kSsrNs, "SSRPosition"); }

kg::Iri position_class(ReportKind kind) {
  switch (kind) {
    case ReportKind::Psr:
      return psr_position_class();
    case ReportKind::Ssr:
      return ssr_position_class();
    case ReportKind::Adsb:
      return adsb_position_class();
  }
  return adsb_position_class();
}

kg::Iri track_class() { return in_ns(kCoreNs, "Track"); }
kg::Iri flight_plan_class() { return in_ns(kCoreNs, "FlightPlan"); }
kg::Iri airport_class() { return in_ns(kCoreNs, "Airport"); }
kg::Iri coverage_area_class() { return in_ns(kCoreNs, "CoverageArea"); }

kg::Iri has_track_rank() { return in_ns(kCoreNs, "hasTrackRank"); }
kg::Iri is_associated_with_track() {
  return in_ns(kCoreNs, "isAssociatedWithTrack");
}
kg::Iri has_similar_track() { return in_ns(kCoreNs, "hasSimilarTrack"); }
kg::Iri core_has_callsign() { return in_ns(kCoreNs, "hasCallsign"); }
kg::Iri core_has_equipment_id() { return in_ns(kCoreNs, "hasEquipmentID"); }
kg::Iri has_origin() { return in_ns(kCoreNs, "hasOrigin"); }
kg::Iri has_destination() { return in_ns(kCoreNs, "hasDestination"); }
kg::Iri core_has_latitude() { return in_ns(kCoreNs, "hasLatitude"); }
kg::Iri core_has_longitude() { return in_ns(kCoreNs, "hasLongitude"); }
kg::Iri has_radius_nm() { return in_ns(kCoreNs, "hasRadiusNM"); }
kg::Iri has_kind() { return in_ns(kCoreNs, "hasKind"); }

kg::Iri has_latitude(ReportKind kind) {
  return in_ns(broadcast_ns(kind), "hasLatitude");
}
kg::Iri has_longitude(ReportKind kind) {
  return in_ns(broadcast_ns(kind), "hasLongitude");
}
kg::Iri has_altitude(ReportKind kind) {
  return in_ns(broadcast_ns(kind), "hasAltitude");
}
kg::Iri has_time_stamp(ReportKind kind) {
  return in_ns(broadcast_ns(kind), "hasTimeStamp");
}
kg::Iri has_equipment_id(ReportKind kind) {
  return in_ns(broadcast_ns(kind), "hasEquipmentID");
}
kg::Iri adsb_has_callsign() { return in_ns(kAdsbNs, "hasCallsign"); }

kg::Iri report_iri(std::uint64_t report_id) {
  return in_ns(kDataNs, ("report-" + std::to_string(report_id)).c_str());
}
kg::Iri track_iri(std::uint64_t track_number) {
  return in_ns(kDataNs, ("track-" + std::to_string(track_number)).c_str());
}
kg::Iri flight_plan_iri(const std::string& callsign) {
  return in_ns(kDataNs, ("flightplan-" + callsign).c_str());
}
kg::Iri airport_iri(const std::string& id) {
  return in_ns(kDataNs, ("airport-" + id).c_str());
}
kg::Iri coverage_iri(const std::string& id) {
  return in_ns(kDataNs, ("coverage-" + id).c_str());
}

}  // namespace skysentry::vocab
