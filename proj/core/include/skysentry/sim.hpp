#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "skysentry/model.hpp"
#include "skysentry/scenario.hpp"

namespace skysentry {

struct SimClock {
  double now_s = 0.0;
  double tick_s = 1.0;
  double speedup = 0.0;  // real-time multiplier; 0 = as fast as possible
};

// Simulator ground truth: the engine under test never sees the ghost flag.
struct ActiveAircraft {
  AircraftState state;
  bool ghost = false;
};

// Aircraft present at `now_s`, flights first (scenario order), then the
// first `ghost_count` ghosts. Ghosts are inactive before their spawn time;
// static ghosts hold their spawn position until the scenario ends.
std::vector<ActiveAircraft> step(const Scenario& scenario,
                                 std::size_t ghost_count, double now_s);

// Allocates report ids and applies optional position jitter.
class ReportFactory {
 public:
  ReportFactory(std::uint64_t seed, double jitter_nm)
      : rng_(seed), jitter_nm_(jitter_nm) {}

  PositionReport make(ReportKind kind, const ActiveAircraft& aircraft,
                      const std::string& reporter_id, double now_s);

 private:
  GeoPoint jitter(const GeoPoint& p);

  std::uint64_t next_id_ = 1;
  std::mt19937_64 rng_;
  double jitter_nm_ = 0.0;
};

// One report per covering reporter whose cadence fires at this tick.
// PSR and SSR observe physically present aircraft only, so ghosts yield
// ADS-B reports alone and only inside ADS-B coverage.
std::vector<PositionReport> emit_reports(
    std::span<const ActiveAircraft> aircraft, const Scenario& scenario,
    double now_s, ReportFactory& factory);

struct RunSummary {
  std::uint64_t ticks = 0;
  std::uint64_t reports = 0;
  std::uint64_t psr_reports = 0;
  std::uint64_t ssr_reports = 0;
  std::uint64_t adsb_reports = 0;
};

using ReportSink = std::function<void(const PositionReport&)>;

// Drives the clock over [0, duration) and publishes every report in
// timestamp order. Deterministic for a fixed (scenario, ghosts, seed).
RunSummary run_simulation(const Scenario& scenario, std::size_t ghosts,
                          const ReportSink& sink,
                          std::uint64_t seed_override = 0);

}  // namespace skysentry
