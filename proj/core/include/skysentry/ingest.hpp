#pragma once

#include <cstdint>
#include <vector>

#include "skysentry/bus.hpp"
#include "skysentry/kg/store.hpp"
#include "skysentry/model.hpp"
#include "skysentry/tracks.hpp"

namespace skysentry {

struct Scenario;

// Triple conversion per report kind:
//   ADS-B: type, rank, track, latitude, longitude, altitude, callsign,
//          equipment id, timestamp (9 triples)
//   SSR:   type, rank, track, latitude, longitude, altitude, equipment id,
//          timestamp (8 triples)
//   PSR:   type, rank, track, latitude, longitude, timestamp (6 triples)
// Timestamps become integer literals, coordinates and altitude decimals.
std::vector<kg::Triple> report_to_triples(const PositionReport& report,
                                          const kg::Iri& track_id, int rank);

struct IngestSummary {
  std::size_t reports = 0;
  std::size_t report_triples = 0;
  std::size_t association_triples = 0;
};

// Drains report batches into the store: assigns tracks, converts reports
// (one insert per batch), then materializes new track associations so the
// radar-consistency query can anti-join on hasSimilarTrack directly.
class Ingestor {
 public:
  explicit Ingestor(kg::TripleStore& store, AssociationConfig cfg = {})
      : store_(store), registry_(cfg) {}

  IngestSummary ingest(const ReportBatch& batch);

  const TrackRegistry& registry() const { return registry_; }

 private:
  kg::TripleStore& store_;
  TrackRegistry registry_;
};

// Static entities present before any traffic: flight plans, airports and
// coverage areas. Returns the number of triples presented.
std::size_t load_base_data(kg::TripleStore& store, const Scenario& scenario);

}  // namespace skysentry
