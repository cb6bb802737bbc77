#include "skysentry/tracks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skysentry/geo.hpp"
#include "skysentry/vocab.hpp"

namespace skysentry {

std::size_t TrackRegistry::create_track(TrackSource source, std::string key) {
  Track t;
  t.id = vocab::track_iri(next_track_number_++);
  t.source = source;
  t.key = key;
  tracks_.push_back(std::move(t));
  const std::size_t idx = tracks_.size() - 1;
  by_key_[std::move(key)] = idx;
  return idx;
}

std::pair<kg::Iri, int> TrackRegistry::assign(const PositionReport& report) {
  std::size_t idx;
  if (const auto* adsb = std::get_if<AdsbReport>(&report.body)) {
    std::string key = "A|" + adsb->equipment_id + "|" + adsb->callsign;
    auto it = by_key_.find(key);
    idx = it != by_key_.end() ? it->second
                              : create_track(TrackSource::Adsb, std::move(key));
  } else if (const auto* ssr = std::get_if<SsrReport>(&report.body)) {
    std::string key = "S|" + ssr->identity;
    auto it = by_key_.find(key);
    idx = it != by_key_.end() ? it->second
                              : create_track(TrackSource::Ssr, std::move(key));
  } else {
    // PSR plots carry no identity: nearest live PSR track within the gate,
    // last seen within three sweeps, smallest distance wins.
    const GeoPoint& pos = report.position();
    const double window_s = 3.0 * cfg_.psr_sweep_s;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = tracks_.size();
    for (std::size_t i = 0; i < tracks_.size(); ++i) {
      const Track& t = tracks_[i];
      if (t.source != TrackSource::Psr) continue;
      const TrackSample& last = t.samples.back();
      if (report.timestamp_s - last.timestamp_s >
          static_cast<std::int64_t>(window_s)) {
        continue;
      }
      const double d = haversine_nm(pos, last.position);
      if (d <= cfg_.psr_gate_nm && d < best) {
        best = d;
        best_idx = i;
      }
    }
    idx = best_idx < tracks_.size()
              ? best_idx
              : create_track(TrackSource::Psr,
                             "P|" + std::to_string(next_track_number_));
  }

  Track& track = tracks_[idx];
  track.samples.push_back(
      TrackSample{report.report_id, report.timestamp_s, report.position()});
  return {track.id, static_cast<int>(track.samples.size())};
}

std::vector<kg::Triple> TrackRegistry::associate() {
  std::vector<kg::Triple> out;
  for (std::size_t a = 0; a < tracks_.size(); ++a) {
    if (tracks_[a].source != TrackSource::Adsb) continue;
    for (std::size_t r = 0; r < tracks_.size(); ++r) {
      if (tracks_[r].source == TrackSource::Adsb) continue;
      if (associated_.count({a, r})) continue;

      const Track& adsb = tracks_[a];
      const Track& radar = tracks_[r];
      if (radar.samples.size() < 2) continue;

      const std::int64_t lo =
          std::max(adsb.samples.front().timestamp_s,
                   radar.samples.front().timestamp_s);
      const std::int64_t hi = std::min(adsb.samples.back().timestamp_s,
                                       radar.samples.back().timestamp_s);
      if (lo > hi) continue;

      std::vector<TimedPoint> radar_path;
      radar_path.reserve(radar.samples.size());
      for (const auto& s : radar.samples) {
        radar_path.push_back(
            TimedPoint{static_cast<double>(s.timestamp_s), s.position});
      }

      double sum = 0.0;
      int overlap = 0;
      for (const auto& s : adsb.samples) {
        if (s.timestamp_s < lo || s.timestamp_s > hi) continue;
        const GeoPoint interpolated = interpolate_position(
            radar_path, static_cast<double>(s.timestamp_s));
        sum += haversine_nm(s.position, interpolated);
        ++overlap;
      }
      if (overlap < cfg_.min_overlap_samples) continue;
      if (sum / overlap > cfg_.assoc_threshold_nm) continue;

      associated_.insert({a, r});
      out.push_back(
          kg::Triple{adsb.id, vocab::has_similar_track(), kg::Term{radar.id}});
      out.push_back(
          kg::Triple{radar.id, vocab::has_similar_track(), kg::Term{adsb.id}});
    }
  }
  return out;
}

const Track* TrackRegistry::find_by_id(const kg::Iri& id) const {
  for (const auto& t : tracks_) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

std::vector<std::pair<kg::Iri, kg::Iri>> TrackRegistry::associated_pairs()
    const {
  std::vector<std::pair<kg::Iri, kg::Iri>> out;
  out.reserve(associated_.size());
  for (const auto& [a, r] : associated_) {
    out.emplace_back(tracks_[a].id, tracks_[r].id);
  }
  return out;
}

}  // namespace skysentry
