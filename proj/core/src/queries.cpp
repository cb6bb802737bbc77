#include "skysentry/queries.hpp"

namespace skysentry::queries {

namespace {

constexpr std::string_view kTrackOrigin = R"(PREFIX atc-adsb: <http://atcs.ex/atc/dds-topics/adsb-broadcast#>
PREFIX atc-core: <http://atcs.ex/atc/atc-core#>
PREFIX atc-data: <http://atcs.ex/atc/atc-data#>
SELECT ?report ?lat ?long ?alt ?eID ?call WHERE {
  { ?report a atc-adsb:ADSBFlightPosition ;
            atc-core:hasTrackRank   ?rank ;
            atc-adsb:hasLatitude    ?lat ;
            atc-adsb:hasCallsign    ?call ;
            atc-adsb:hasLongitude   ?long ;
            atc-adsb:hasAltitude    ?alt ;
            atc-adsb:hasEquipmentID ?eID . }
  FILTER(?rank = 1)
}
)";

constexpr std::string_view kRadarConsistency = R"(PREFIX atc-adsb: <http://atcs.ex/atc/dds-topics/adsb-broadcast#>
PREFIX atc-core: <http://atcs.ex/atc/atc-core#>
SELECT ?track ?report ?lat ?long ?time WHERE {
  { ?report a atc-adsb:ADSBFlightPosition ;
            atc-core:hasTrackRank          ?rank ;
            atc-core:isAssociatedWithTrack ?track ;
            atc-adsb:hasLatitude           ?lat ;
            atc-adsb:hasLongitude          ?long ;
            atc-adsb:hasTimeStamp          ?time . }
  MINUS { ?track atc-core:hasSimilarTrack ?tk }
} ORDER BY ?track ASC(?time)
)";

constexpr std::string_view kFlightPlan = R"(PREFIX atc-adsb: <http://atcs.ex/atc/dds-topics/adsb-broadcast#>
PREFIX atc-core: <http://atcs.ex/atc/atc-core#>
SELECT ?callsign ?report ?lat ?long ?time WHERE {
  { ?report a atc-adsb:ADSBFlightPosition ;
            atc-adsb:hasCallsign  ?callsign ;
            atc-adsb:hasLatitude  ?lat ;
            atc-adsb:hasLongitude ?long ;
            atc-adsb:hasTimeStamp ?time . }
  MINUS { ?fp atc-core:hasCallsign ?callsign }
}
)";

}  // namespace

std::string_view track_origin() { return kTrackOrigin; }
std::string_view radar_consistency() { return kRadarConsistency; }
std::string_view flight_plan() { return kFlightPlan; }

}  // namespace skysentry::queries
