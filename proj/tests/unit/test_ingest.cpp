#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "skysentry/ingest.hpp"
#include "skysentry/scenario.hpp"
#include "skysentry/vocab.hpp"
#include "support/geo_oracles.hpp"

using namespace skysentry;
using namespace skysentry::testing;
using kg::Term;
using kg::Triple;

namespace {

PositionReport adsb(std::uint64_t id, std::int64_t t, GeoPoint p,
                    const std::string& callsign,
                    const std::string& equipment) {
  PositionReport r;
  r.report_id = id;
  r.timestamp_s = t;
  r.body = AdsbReport{"adsb-1", p, 30000.0, callsign, equipment, 400.0};
  return r;
}

PositionReport ssr(std::uint64_t id, std::int64_t t, GeoPoint p,
                   const std::string& identity) {
  PositionReport r;
  r.report_id = id;
  r.timestamp_s = t;
  r.body = SsrReport{"ssr-1", p, 30000.0, identity};
  return r;
}

PositionReport psr(std::uint64_t id, std::int64_t t, GeoPoint p) {
  PositionReport r;
  r.report_id = id;
  r.timestamp_s = t;
  r.body = PsrReport{"psr-1", p};
  return r;
}

ReportBatch batch_of(std::vector<PositionReport> reports) {
  ReportBatch b;
  b.seq = 0;
  b.emitted_at_s = reports.empty() ? 0 : reports.back().timestamp_s;
  b.reports = std::move(reports);
  return b;
}

}  // namespace

TEST_CASE("conversion emits exactly the fields each technology carries") {
  const kg::Iri track = vocab::track_iri(1);
  const GeoPoint p{45.25, -73.5};

  const auto adsb_triples = report_to_triples(adsb(1, 100, p, "AAA111", "C-X"),
                                              track, 3);
  CHECK(adsb_triples.size() == 9);
  const auto ssr_triples = report_to_triples(ssr(2, 100, p, "C-X"), track, 1);
  CHECK(ssr_triples.size() == 8);
  const auto psr_triples = report_to_triples(psr(3, 100, p), track, 1);
  CHECK(psr_triples.size() == 6);

  // the rank is an integer literal
  bool saw_rank = false;
  for (const auto& t : adsb_triples) {
    if (t.predicate == vocab::has_track_rank()) {
      CHECK(t.object == Term{kg::Literal::integer(3)});
      saw_rank = true;
    }
  }
  CHECK(saw_rank);

  // PSR carries no altitude, callsign or equipment
  for (const auto& t : psr_triples) {
    CHECK(t.predicate.value.find("hasAltitude") == std::string::npos);
    CHECK(t.predicate.value.find("hasCallsign") == std::string::npos);
    CHECK(t.predicate.value.find("hasEquipmentID") == std::string::npos);
  }

  // distinct reports get distinct subjects
  CHECK_FALSE(adsb_triples[0].subject == ssr_triples[0].subject);
}

TEST_CASE("conversion is lossless for the represented fields") {
  const kg::Iri track = vocab::track_iri(7);
  const GeoPoint p{45.123456, -73.654321};
  const PositionReport original = adsb(41, 217, p, "AAA111", "C-GXYZ");
  const auto triples = report_to_triples(original, track, 5);

  GeoPoint read_back{};
  double altitude = 0;
  std::string callsign, equipment;
  std::int64_t timestamp = 0;
  for (const auto& t : triples) {
    const auto& pred = t.predicate.value;
    if (pred == vocab::has_latitude(ReportKind::Adsb).value) {
      read_back.lat_deg = std::get<kg::Literal>(t.object).as_decimal();
    } else if (pred == vocab::has_longitude(ReportKind::Adsb).value) {
      read_back.lon_deg = std::get<kg::Literal>(t.object).as_decimal();
    } else if (pred == vocab::has_altitude(ReportKind::Adsb).value) {
      altitude = std::get<kg::Literal>(t.object).as_decimal();
    } else if (pred == vocab::adsb_has_callsign().value) {
      callsign = std::get<kg::Literal>(t.object).as_string();
    } else if (pred == vocab::has_equipment_id(ReportKind::Adsb).value) {
      equipment = std::get<kg::Literal>(t.object).as_string();
    } else if (pred == vocab::has_time_stamp(ReportKind::Adsb).value) {
      timestamp = std::get<kg::Literal>(t.object).as_integer();
    }
  }
  CHECK(read_back == p);  // exact, not approximate
  CHECK(altitude == 30000.0);
  CHECK(callsign == "AAA111");
  CHECK(equipment == "C-GXYZ");
  CHECK(timestamp == 217);
}

TEST_CASE("track assignment keys on identity for ADS-B and SSR") {
  TrackRegistry registry;
  const GeoPoint p{45.0, -73.0};
  const auto [t1, r1] = registry.assign(adsb(1, 0, p, "AAA111", "C-X"));
  CHECK(r1 == 1);
  const auto [t2, r2] = registry.assign(adsb(2, 5, p, "AAA111", "C-X"));
  CHECK(r2 == 2);
  CHECK(t1 == t2);

  const auto [t3, r3] = registry.assign(ssr(3, 0, p, "C-X"));
  CHECK(r3 == 1);
  CHECK_FALSE(t3 == t1);  // different technology, different track
}

TEST_CASE("PSR plots gate on distance and recency") {
  TrackRegistry registry;  // gate 2 NM, sweep 10 s
  const GeoPoint a{45.0, -73.0};
  const GeoPoint far = destination_point(a, 90.0, 10.0);
  const auto [t1, r1] = registry.assign(psr(1, 0, a));
  const auto [t2, r2] = registry.assign(psr(2, 0, far));
  CHECK_FALSE(t1 == t2);  // 10 NM apart, outside the 2 NM gate

  const GeoPoint near = destination_point(a, 90.0, 1.2);
  const auto [t3, r3] = registry.assign(psr(3, 10, near));
  CHECK(t3 == t1);
  CHECK(r3 == 2);

  // within the gate but stale by more than three sweeps: new track
  const auto [t4, r4] = registry.assign(psr(4, 45, near));
  CHECK_FALSE(t4 == t1);
  CHECK(r4 == 1);
}

TEST_CASE("matching trajectories associate, offset ones do not") {
  const GeoPoint start{45.0, -73.0};
  auto trajectory = [&](double offset_nm) {
    std::vector<TimedPoint> wps;
    for (int i = 0; i <= 6; ++i) {
      GeoPoint p = destination_point(start, 90.0, 1.2 * i);
      if (offset_nm > 0) p = destination_point(p, 0.0, offset_nm);
      wps.push_back({static_cast<double>(i * 10), p});
    }
    return wps;
  };

  auto run_pair = [&](double offset_nm) {
    TrackRegistry registry;
    std::uint64_t id = 1;
    for (const auto& wp : trajectory(0.0)) {
      for (int k = 0; k < 2; ++k) {  // ADS-B twice per radar sweep
        const double t = wp.t_s + 5.0 * k;
        GeoPoint p = destination_point(start, 90.0, 1.2 * t / 10.0);
        registry.assign(adsb(id++, static_cast<std::int64_t>(t), p, "AAA111",
                             "C-X"));
      }
    }
    for (const auto& wp : trajectory(offset_nm)) {
      registry.assign(ssr(id++, static_cast<std::int64_t>(wp.t_s), wp.point,
                          "C-X"));
    }
    return registry.associate();
  };

  const auto same = run_pair(0.0);
  REQUIRE(same.size() == 2);  // symmetric pair
  CHECK(same[0].predicate == vocab::has_similar_track());
  CHECK(same[0].subject == std::get<kg::Iri>(same[1].object));
  CHECK(same[1].subject == std::get<kg::Iri>(same[0].object));

  CHECK(run_pair(1.0).empty());      // 1.0 NM offset exceeds the threshold
  CHECK_FALSE(run_pair(0.2).empty());  // 0.2 NM is within it
}

TEST_CASE("association is idempotent for unchanged tracks") {
  TrackRegistry registry;
  std::uint64_t id = 1;
  const GeoPoint start{45.0, -73.0};
  for (int i = 0; i <= 4; ++i) {
    const GeoPoint p = destination_point(start, 90.0, 1.0 * i);
    registry.assign(adsb(id++, i * 5, p, "AAA111", "C-X"));
    registry.assign(ssr(id++, i * 5, p, "C-X"));
  }
  CHECK_FALSE(registry.associate().empty());
  CHECK(registry.associate().empty());
}

TEST_CASE("ingest inserts batches once and materializes associations") {
  kg::TripleStore store;
  Ingestor ingestor(store);

  // establish ten ADS-B tracks
  std::vector<PositionReport> first;
  for (int i = 0; i < 10; ++i) {
    first.push_back(adsb(static_cast<std::uint64_t>(i + 1), 0,
                         GeoPoint{44.0 + i * 0.1, -73.0},
                         "AAA10" + std::to_string(i), "C-" + std::to_string(i)));
  }
  const auto s1 = ingestor.ingest(batch_of(first));
  CHECK(s1.reports == 10);
  CHECK(s1.report_triples == 90);
  CHECK(store.size() == 90);

  // fifty more reports over the same ten tracks: exactly 450 triples
  std::vector<PositionReport> second;
  std::uint64_t id = 100;
  for (int round = 1; round <= 5; ++round) {
    for (int i = 0; i < 10; ++i) {
      second.push_back(adsb(id++, round * 5,
                            GeoPoint{44.0 + i * 0.1 + round * 0.01, -73.0},
                            "AAA10" + std::to_string(i),
                            "C-" + std::to_string(i)));
    }
  }
  const auto s2 = ingestor.ingest(batch_of(second));
  CHECK(s2.report_triples == 450);
  CHECK(s2.association_triples == 0);  // no radar tracks yet
  CHECK(store.size() == 540);

  // an empty flush batch mutates nothing
  const auto before = store.size();
  const auto s3 = ingestor.ingest(batch_of({}));
  CHECK(s3.report_triples == 0);
  CHECK(store.size() == before);
}

TEST_CASE("similar-track triples appear symmetrically in the store") {
  kg::TripleStore store;
  Ingestor ingestor(store);
  std::vector<PositionReport> reports;
  std::uint64_t id = 1;
  const GeoPoint start{45.0, -73.0};
  for (int i = 0; i <= 4; ++i) {
    const GeoPoint p = destination_point(start, 90.0, 1.0 * i);
    reports.push_back(adsb(id++, i * 10, p, "AAA111", "C-X"));
    reports.push_back(ssr(id++, i * 10, p, "C-X"));
  }
  const auto summary = ingestor.ingest(batch_of(reports));
  CHECK(summary.association_triples == 2);
  const auto forward = store.match(std::nullopt, vocab::has_similar_track(),
                                   std::nullopt);
  REQUIRE(forward.size() == 2);
  for (const auto& t : forward) {
    const Triple reverse{std::get<kg::Iri>(t.object), t.predicate,
                         Term{t.subject}};
    CHECK(store.contains(reverse));
  }
}

TEST_CASE("ranks stay contiguous under interleaved random traffic") {
  std::mt19937_64 rng(3);
  TrackRegistry registry;
  std::map<std::string, int> expected_rank;
  std::uint64_t id = 1;
  for (int i = 0; i < 500; ++i) {
    const int craft = static_cast<int>(rng() % 7);
    const std::string callsign = "AAA" + std::to_string(craft);
    const auto [track, rank] =
        registry.assign(adsb(id++, i, GeoPoint{44.0 + craft, -73.0}, callsign,
                             "C-" + std::to_string(craft)));
    CHECK(rank == ++expected_rank[callsign]);
  }
  for (const auto& track : registry.tracks()) {
    for (std::size_t k = 0; k < track.samples.size(); ++k) {
      CHECK(track.samples[k].timestamp_s >=
            (k ? track.samples[k - 1].timestamp_s : 0));
    }
  }
}
