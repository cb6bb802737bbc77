#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "skysentry/bus.hpp"
#include "skysentry/detect.hpp"
#include "skysentry/ingest.hpp"
#include "skysentry/kg/store.hpp"
#include "skysentry/metrics.hpp"
#include "skysentry/scenario.hpp"
#include "skysentry/sim.hpp"
#include "skysentry/tracks.hpp"

namespace skysentry {

struct PipelineConfig {
  std::size_t ghosts = 0;
  ConstraintSelection constraints = ConstraintSelection::all();
  double duration_s = 0.0;    // 0 = scenario duration
  double speedup = 0.0;       // 0 = as fast as possible, single-threaded
  std::uint64_t seed = 0;     // 0 = scenario seed
  BusConfig bus;
  AssociationConfig association;
  DetectConfig detect;

  std::string constraint_label() const;
};

struct CycleObservation {
  double t_s = 0.0;
  const TrackRegistry& registry;
  const kg::TripleStore& store;
  const std::vector<Alert>& alerts;  // alerts of this cycle
};

using CycleObserver = std::function<void(const CycleObservation&)>;

struct PipelineResult {
  std::vector<Alert> alerts;
  std::vector<MetricsSample> metrics;
  std::vector<std::size_t> batch_sizes;  // in delivery order
  RunSummary sim;
  IngestSummary ingest_totals;
  std::size_t base_triples = 0;
  std::size_t store_triples = 0;
};

// Full run: simulate, buffer, ingest, detect, measure. With speedup 0
// everything executes on the calling thread in a tick-interleaved loop and
// the outputs are exactly reproducible; with speedup > 0 simulation+ingest
// run on a paced worker thread while detection runs concurrently.
PipelineResult run_pipeline(const Scenario& scenario,
                            const PipelineConfig& config,
                            std::ostream* report_log = nullptr,
                            const CycleObserver& observer = {},
                            kg::TripleStore* external_store = nullptr);

// Feeds previously recorded reports through the same bus/ingest/detect path
// the simulator would have used; always deterministic.
PipelineResult replay_pipeline(const std::vector<PositionReport>& reports,
                               const Scenario& scenario,
                               const PipelineConfig& config,
                               const CycleObserver& observer = {},
                               kg::TripleStore* external_store = nullptr);

}  // namespace skysentry
