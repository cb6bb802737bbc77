#include "skysentry/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <ostream>
#include <thread>

#include "skysentry/report_log.hpp"

namespace skysentry {

namespace {

using WallClock = std::chrono::steady_clock;

double ms_since(WallClock::time_point start) {
  return std::chrono::duration<double, std::milli>(WallClock::now() - start)
      .count();
}

struct Stages {
  kg::TripleStore* store;
  Ingestor ingestor;
  ReportBus bus;
  DetectionEngine engine;
  MetricsCollector metrics;
  PipelineResult result;
  std::ostream* report_log;
  const CycleObserver* observer;
  // Serializes a whole batch ingest against a detection cycle so a cycle
  // never sees report triples without the matching association state.
  std::mutex coherence;

  Stages(kg::TripleStore& s, const Scenario& scenario,
         const PipelineConfig& config, std::ostream* log,
         const CycleObserver* obs)
      : store(&s),
        ingestor(s, config.association),
        bus(config.bus),
        engine(s, ScenarioGeometry::from(scenario), [&] {
          DetectConfig d = config.detect;
          const double sweep = scenario.max_radar_cadence_s();
          if (sweep > 0) d.radar_sweep_s = sweep;
          return d;
        }()),
        metrics(config.constraint_label(), static_cast<int>(config.ghosts),
                config.detect.detection_interval_s),
        report_log(log),
        observer(obs) {}

  void publish(const PositionReport& report) {
    if (report_log) (*report_log) << format_report_line(report) << '\n';
    bus.publish(report);
  }

  void drain_bus() {
    while (auto batch = bus.poll_batch()) {
      std::lock_guard lock(coherence);
      const auto start = WallClock::now();
      const IngestSummary summary = ingestor.ingest(*batch);
      metrics.record_insert(ms_since(start));
      result.batch_sizes.push_back(batch->reports.size());
      result.ingest_totals.reports += summary.reports;
      result.ingest_totals.report_triples += summary.report_triples;
      result.ingest_totals.association_triples += summary.association_triples;
    }
  }

  void detection_cycle(double t_s, const ConstraintSelection& sel,
                       double window_len_s) {
    std::vector<Alert> alerts;
    {
      std::lock_guard lock(coherence);
      alerts = engine.run_cycle(t_s, sel);
    }
    for (const QueryRecord& record : engine.drain_records()) {
      metrics.record_select(record.wall_ms, record.rows, record.pattern_count,
                            record.iterations);
    }
    const auto [reads_ps, writes_ps] =
        store->read_write_rates(window_len_s > 0 ? window_len_s : 1.0);
    metrics.close_window(t_s, reads_ps, writes_ps);
    if (observer && *observer) {
      (*observer)(CycleObservation{t_s, ingestor.registry(), *store, alerts});
    }
    result.alerts.insert(result.alerts.end(),
                         std::make_move_iterator(alerts.begin()),
                         std::make_move_iterator(alerts.end()));
  }

  void finish() {
    result.metrics = metrics.samples();
    result.store_triples = store->size();
  }
};

double effective_duration(const Scenario& scenario,
                          const PipelineConfig& config) {
  return config.duration_s > 0 ? config.duration_s : scenario.duration_s;
}

}  // namespace

std::string PipelineConfig::constraint_label() const {
  if (constraints.track && constraints.radar && constraints.flight) {
    return "all";
  }
  std::string label;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!label.empty()) label += '+';
    label += name;
  };
  add(constraints.track, "track");
  add(constraints.radar, "radar");
  add(constraints.flight, "flight");
  return label.empty() ? "none" : label;
}

PipelineResult run_pipeline(const Scenario& scenario,
                            const PipelineConfig& config,
                            std::ostream* report_log,
                            const CycleObserver& observer,
                            kg::TripleStore* external_store) {
  kg::TripleStore local_store;
  kg::TripleStore& store = external_store ? *external_store : local_store;

  Scenario run_scenario = scenario;
  run_scenario.duration_s = effective_duration(scenario, config);

  Stages stages(store, run_scenario, config, report_log, &observer);
  stages.result.base_triples = load_base_data(store, run_scenario);
  store.read_write_rates(1.0);  // reset marks so window 0 excludes base data

  const double tick = run_scenario.tick_s;
  const auto ticks = static_cast<std::int64_t>(
      std::llround(run_scenario.duration_s / tick));
  const auto interval_ticks = static_cast<std::int64_t>(std::llround(
      stages.engine.config().detection_interval_s / tick));
  const std::uint64_t seed =
      config.seed != 0 ? config.seed : run_scenario.seed;
  ReportFactory factory(seed, run_scenario.jitter_nm);

  const bool paced = config.speedup > 0;
  std::atomic<std::int64_t> sim_tick{0};
  std::atomic<bool> producer_done{false};

  auto producer = [&]() {
    for (std::int64_t k = 0; k < ticks; ++k) {
      const double now_s = static_cast<double>(k) * tick;
      const auto aircraft = step(run_scenario, config.ghosts, now_s);
      for (const PositionReport& report :
           emit_reports(aircraft, run_scenario, now_s, factory)) {
        switch (report.kind()) {
          case ReportKind::Psr:
            ++stages.result.sim.psr_reports;
            break;
          case ReportKind::Ssr:
            ++stages.result.sim.ssr_reports;
            break;
          case ReportKind::Adsb:
            ++stages.result.sim.adsb_reports;
            break;
        }
        ++stages.result.sim.reports;
        stages.publish(report);
      }
      ++stages.result.sim.ticks;
      if (k == ticks - 1) {
        stages.bus.close();  // flush the tail before the final cycle
      }
      stages.drain_bus();
      sim_tick.store(k + 1, std::memory_order_release);
      if (paced) {
        std::this_thread::sleep_for(std::chrono::duration<double>(
            tick / config.speedup));
      } else if (interval_ticks > 0 &&
                 ((k + 1) % interval_ticks == 0 || k == ticks - 1)) {
        const double t_s = static_cast<double>(k + 1) * tick;
        const double prev = t_s - static_cast<double>(
            (k + 1) % interval_ticks == 0
                ? interval_ticks
                : (k + 1) % interval_ticks) * tick;
        stages.detection_cycle(t_s, config.constraints, t_s - prev);
      }
    }
    producer_done.store(true, std::memory_order_release);
  };

  if (!paced) {
    producer();
  } else {
    std::thread sim_thread(producer);
    std::int64_t next_cycle = interval_ticks;
    double prev_t = 0.0;
    auto run_cycles_up_to = [&](std::int64_t seen) {
      while (next_cycle <= seen) {
        const double t_s = static_cast<double>(next_cycle) * tick;
        stages.detection_cycle(t_s, config.constraints, t_s - prev_t);
        prev_t = t_s;
        next_cycle += interval_ticks;
      }
    };
    while (!producer_done.load(std::memory_order_acquire)) {
      run_cycles_up_to(sim_tick.load(std::memory_order_acquire));
      std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
    run_cycles_up_to(ticks);
    if (interval_ticks > 0 && ticks % interval_ticks != 0) {
      const double t_s = static_cast<double>(ticks) * tick;
      stages.detection_cycle(t_s, config.constraints, t_s - prev_t);
    }
    sim_thread.join();
    stages.drain_bus();
  }

  stages.finish();
  return stages.result;
}

PipelineResult replay_pipeline(const std::vector<PositionReport>& reports,
                               const Scenario& scenario,
                               const PipelineConfig& config,
                               const CycleObserver& observer,
                               kg::TripleStore* external_store) {
  kg::TripleStore local_store;
  kg::TripleStore& store = external_store ? *external_store : local_store;

  Scenario run_scenario = scenario;
  run_scenario.duration_s = effective_duration(scenario, config);

  Stages stages(store, run_scenario, config, nullptr, &observer);
  stages.result.base_triples = load_base_data(store, run_scenario);
  store.read_write_rates(1.0);

  const double tick = run_scenario.tick_s;
  const auto ticks = static_cast<std::int64_t>(
      std::llround(run_scenario.duration_s / tick));
  const auto interval_ticks = static_cast<std::int64_t>(std::llround(
      stages.engine.config().detection_interval_s / tick));

  std::size_t next = 0;
  for (std::int64_t k = 0; k < ticks; ++k) {
    const double now_s = static_cast<double>(k) * tick;
    while (next < reports.size() &&
           static_cast<double>(reports[next].timestamp_s) <= now_s) {
      ++stages.result.sim.reports;
      stages.publish(reports[next]);
      ++next;
    }
    ++stages.result.sim.ticks;
    if (k == ticks - 1) stages.bus.close();
    stages.drain_bus();
    if (interval_ticks > 0 &&
        ((k + 1) % interval_ticks == 0 || k == ticks - 1)) {
      const double t_s = static_cast<double>(k + 1) * tick;
      const double prev = t_s - static_cast<double>(
          (k + 1) % interval_ticks == 0
              ? interval_ticks
              : (k + 1) % interval_ticks) * tick;
      stages.detection_cycle(t_s, config.constraints, t_s - prev);
    }
  }
  stages.finish();
  return stages.result;
}

}  // namespace skysentry
