#pragma once

#include <string_view>

namespace skysentry::queries {

// First ADS-B report of every track (rank 1), with the fields the origin
// check needs.
std::string_view track_origin();

// All reports of ADS-B tracks that have no similar radar track, ordered by
// track then time.
std::string_view radar_consistency();

// All ADS-B reports whose callsign matches no filed flight plan.
std::string_view flight_plan();

}  // namespace skysentry::queries
