#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "skysentry/kg/term.hpp"
#include "skysentry/model.hpp"

namespace skysentry {

enum class TrackSource { Adsb, Psr, Ssr };

struct TrackSample {
  std::uint64_t report_id = 0;
  std::int64_t timestamp_s = 0;
  GeoPoint position;
};

struct Track {
  kg::Iri id;
  TrackSource source = TrackSource::Adsb;
  std::string key;  // ADS-B: equipment+callsign; SSR: identity; PSR: serial
  std::vector<TrackSample> samples;  // rank of samples[i] is i + 1
};

struct AssociationConfig {
  double assoc_threshold_nm = 0.5;  // mean interpolated distance
  int min_overlap_samples = 3;      // ADS-B samples inside the radar span
  double psr_gate_nm = 2.0;         // plot-to-track continuity gate
  double psr_sweep_s = 10.0;        // radar revisit period for the gate window
};

// Owns every live track and the pairwise ADS-B/radar association state.
// Single-writer: one ingestion worker feeds it.
class TrackRegistry {
 public:
  explicit TrackRegistry(AssociationConfig cfg = {}) : cfg_(cfg) {}

  // Appends the report to its track, creating one if needed. ADS-B and SSR
  // reports key on identity; PSR plots attach to the nearest PSR track whose
  // last plot is within the gate and fresher than three sweeps.
  // Returns the track id and the report's 1-based rank.
  std::pair<kg::Iri, int> assign(const PositionReport& report);

  // Pairs ADS-B tracks with radar tracks whose interpolated trajectories
  // stay within the association threshold over the overlap window. Returns
  // symmetric hasSimilarTrack triples for pairs not previously associated.
  std::vector<kg::Triple> associate();

  const std::vector<Track>& tracks() const { return tracks_; }
  const AssociationConfig& config() const { return cfg_; }

  // Ground-truth helpers for tests and alert enrichment.
  const Track* find_by_id(const kg::Iri& id) const;
  std::vector<std::pair<kg::Iri, kg::Iri>> associated_pairs() const;

 private:
  std::size_t create_track(TrackSource source, std::string key);

  AssociationConfig cfg_;
  std::vector<Track> tracks_;
  std::unordered_map<std::string, std::size_t> by_key_;
  std::set<std::pair<std::size_t, std::size_t>> associated_;  // (adsb, radar)
  std::uint64_t next_track_number_ = 1;
};

}  // namespace skysentry
