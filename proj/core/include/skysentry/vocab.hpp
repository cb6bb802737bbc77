#pragma once

#include <cstdint>
#include <string>

#include "skysentry/kg/term.hpp"
#include "skysentry/model.hpp"

namespace skysentry::vocab {

// Namespaces of the airspace vocabulary. Each surveillance technology gets
// its own broadcast namespace; shared track/plan predicates live in core;
// entity instances live in data.
inline constexpr const char* kAdsbNs =
    "http://atcs.ex/atc/dds-topics/adsb-broadcast#";
inline constexpr const char* kPsrNs =
    "http://atcs.ex/atc/dds-topics/psr-broadcast#";
inline constexpr const char* kSsrNs =
    "http://atcs.ex/atc/dds-topics/ssr-broadcast#";
inline constexpr const char* kCoreNs = "http://atcs.ex/atc/atc-core#";
inline constexpr const char* kDataNs = "http://atcs.ex/atc/atc-data#";

kg::Iri rdf_type();

// report classes
kg::Iri adsb_position_class();
kg::Iri psr_position_class();
kg::Iri ssr_position_class();
kg::Iri position_class(ReportKind kind);

// base-data classes
kg::Iri track_class();
kg::Iri flight_plan_class();
kg::Iri airport_class();
kg::Iri coverage_area_class();

// core predicates
kg::Iri has_track_rank();
kg::Iri is_associated_with_track();
kg::Iri has_similar_track();
kg::Iri core_has_callsign();  // flight-plan callsign
kg::Iri core_has_equipment_id();
kg::Iri has_origin();
kg::Iri has_destination();
kg::Iri core_has_latitude();
kg::Iri core_has_longitude();
kg::Iri has_radius_nm();
kg::Iri has_kind();

// per-technology report predicates
kg::Iri has_latitude(ReportKind kind);
kg::Iri has_longitude(ReportKind kind);
kg::Iri has_altitude(ReportKind kind);
kg::Iri has_time_stamp(ReportKind kind);
kg::Iri has_equipment_id(ReportKind kind);
kg::Iri adsb_has_callsign();

// instance identifiers
kg::Iri report_iri(std::uint64_t report_id);
kg::Iri track_iri(std::uint64_t track_number);
kg::Iri flight_plan_iri(const std::string& callsign);
kg::Iri airport_iri(const std::string& id);
kg::Iri coverage_iri(const std::string& id);

}  // namespace skysentry::vocab
