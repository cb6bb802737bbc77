#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "skysentry/geo.hpp"
#include "skysentry/ingest.hpp"
#include "skysentry/kg/parser.hpp"
#include "skysentry/kg/store.hpp"
#include "skysentry/queries.hpp"
#include "skysentry/tracks.hpp"
#include "skysentry/vocab.hpp"

namespace {

using namespace skysentry;

PositionReport synthetic_adsb(std::uint64_t id, std::int64_t t, int craft) {
  PositionReport r;
  r.report_id = id;
  r.timestamp_s = t;
  r.body = AdsbReport{"adsb-1",
                      GeoPoint{44.0 + craft * 0.2, -73.0 + t * 1e-4},
                      30000.0,
                      "AAA" + std::to_string(craft),
                      "C-" + std::to_string(craft),
                      420.0};
  return r;
}

// store holding `reports` ADS-B conversions over ten tracks
void fill_store(kg::TripleStore& store, int reports) {
  TrackRegistry registry;
  std::vector<kg::Triple> triples;
  for (int i = 0; i < reports; ++i) {
    const auto report = synthetic_adsb(static_cast<std::uint64_t>(i + 1),
                                       i / 10 * 5, i % 10);
    const auto [track, rank] = registry.assign(report);
    auto converted = report_to_triples(report, track, rank);
    triples.insert(triples.end(), converted.begin(), converted.end());
  }
  store.insert(triples);
}

void BM_Haversine(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lat(-80, 80), lon(-179, 179);
  GeoPoint a{lat(rng), lon(rng)};
  GeoPoint b{lat(rng), lon(rng)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(haversine_nm(a, b));
  }
}
BENCHMARK(BM_Haversine);

void BM_InsertBatch(benchmark::State& state) {
  const int reports = static_cast<int>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    kg::TripleStore store;
    state.ResumeTiming();
    fill_store(store, reports);
    benchmark::DoNotOptimize(store.size());
  }
  state.SetItemsProcessed(state.iterations() * reports);
}
BENCHMARK(BM_InsertBatch)->Arg(50)->Arg(400);

void BM_ConstraintQuery(benchmark::State& state) {
  kg::TripleStore store;
  fill_store(store, static_cast<int>(state.range(0)));
  const auto track = kg::parse_query(queries::track_origin());
  const auto radar = kg::parse_query(queries::radar_consistency());
  const auto flight = kg::parse_query(queries::flight_plan());
  const kg::QueryAst* queries[] = {&track, &radar, &flight};
  const auto* ast = queries[state.range(1)];
  for (auto _ : state) {
    benchmark::DoNotOptimize(store.evaluate(*ast).rows.size());
  }
}
BENCHMARK(BM_ConstraintQuery)
    ->Args({200, 0})
    ->Args({200, 1})
    ->Args({200, 2})
    ->Args({1000, 0})
    ->Args({1000, 1})
    ->Args({1000, 2});

void BM_AssociateTracks(benchmark::State& state) {
  for (auto _ : state) {
    state.PauseTiming();
    TrackRegistry registry;
    std::uint64_t id = 1;
    for (int craft = 0; craft < 10; ++craft) {
      for (int t = 0; t <= 200; t += 5) {
        registry.assign(synthetic_adsb(id++, t, craft));
        if (t % 10 == 0) {
          PositionReport ssr;
          ssr.report_id = id++;
          ssr.timestamp_s = t;
          ssr.body = SsrReport{"ssr-1",
                               GeoPoint{44.0 + craft * 0.2, -73.0 + t * 1e-4},
                               30000.0, "C-" + std::to_string(craft)};
          registry.assign(ssr);
        }
      }
    }
    state.ResumeTiming();
    benchmark::DoNotOptimize(registry.associate().size());
  }
}
BENCHMARK(BM_AssociateTracks);

}  // namespace

BENCHMARK_MAIN();
