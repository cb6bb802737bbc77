#include "skysentry/ingest.hpp"

#include "skysentry/scenario.hpp"
#include "skysentry/vocab.hpp"

namespace skysentry {

namespace {

using kg::Literal;
using kg::Term;
using kg::Triple;

}  // namespace

std::vector<Triple> report_to_triples(const PositionReport& report,
                                      const kg::Iri& track_id, int rank) {
  const ReportKind kind = report.kind();
  const kg::Iri subject = vocab::report_iri(report.report_id);
  const GeoPoint& pos = report.position();

  std::vector<Triple> out;
  out.reserve(9);
  out.push_back({subject, vocab::rdf_type(), Term{vocab::position_class(kind)}});
  out.push_back({subject, vocab::has_track_rank(),
                 Term{Literal::integer(rank)}});
  out.push_back(
      {subject, vocab::is_associated_with_track(), Term{track_id}});
  out.push_back({subject, vocab::has_latitude(kind),
                 Term{Literal::decimal(pos.lat_deg)}});
  out.push_back({subject, vocab::has_longitude(kind),
                 Term{Literal::decimal(pos.lon_deg)}});
  if (const auto* adsb = std::get_if<AdsbReport>(&report.body)) {
    out.push_back({subject, vocab::has_altitude(kind),
                   Term{Literal::decimal(adsb->altitude_ft)}});
    out.push_back({subject, vocab::adsb_has_callsign(),
                   Term{Literal::str(adsb->callsign)}});
    out.push_back({subject, vocab::has_equipment_id(kind),
                   Term{Literal::str(adsb->equipment_id)}});
  } else if (const auto* ssr = std::get_if<SsrReport>(&report.body)) {
    out.push_back({subject, vocab::has_altitude(kind),
                   Term{Literal::decimal(ssr->altitude_ft)}});
    out.push_back({subject, vocab::has_equipment_id(kind),
                   Term{Literal::str(ssr->identity)}});
  }
  out.push_back({subject, vocab::has_time_stamp(kind),
                 Term{Literal::integer(report.timestamp_s)}});
  return out;
}

IngestSummary Ingestor::ingest(const ReportBatch& batch) {
  IngestSummary summary;
  summary.reports = batch.reports.size();
  if (batch.reports.empty()) return summary;

  std::vector<Triple> triples;
  triples.reserve(batch.reports.size() * 9);
  for (const PositionReport& report : batch.reports) {
    const auto [track_id, rank] = registry_.assign(report);
    auto converted = report_to_triples(report, track_id, rank);
    triples.insert(triples.end(), std::make_move_iterator(converted.begin()),
                   std::make_move_iterator(converted.end()));
  }
  summary.report_triples = triples.size();
  store_.insert(triples);

  const std::vector<Triple> associations = registry_.associate();
  summary.association_triples = associations.size();
  if (!associations.empty()) store_.insert(associations);
  return summary;
}

std::size_t load_base_data(kg::TripleStore& store, const Scenario& scenario) {
  std::vector<Triple> triples;
  for (const FlightPlan& plan : scenario.flight_plans) {
    const kg::Iri fp = vocab::flight_plan_iri(plan.callsign);
    triples.push_back({fp, vocab::rdf_type(), Term{vocab::flight_plan_class()}});
    triples.push_back(
        {fp, vocab::core_has_callsign(), Term{Literal::str(plan.callsign)}});
    triples.push_back({fp, vocab::core_has_equipment_id(),
                       Term{Literal::str(plan.equipment_id)}});
    triples.push_back(
        {fp, vocab::has_origin(), Term{vocab::airport_iri(plan.origin)}});
    triples.push_back({fp, vocab::has_destination(),
                       Term{vocab::airport_iri(plan.destination)}});
  }
  for (const Airport& airport : scenario.airports) {
    const kg::Iri ap = vocab::airport_iri(airport.id);
    triples.push_back({ap, vocab::rdf_type(), Term{vocab::airport_class()}});
    triples.push_back({ap, vocab::core_has_latitude(),
                       Term{Literal::decimal(airport.location.lat_deg)}});
    triples.push_back({ap, vocab::core_has_longitude(),
                       Term{Literal::decimal(airport.location.lon_deg)}});
  }
  for (const ReporterSpec& reporter : scenario.reporters) {
    const kg::Iri cv = vocab::coverage_iri(reporter.area.id);
    triples.push_back(
        {cv, vocab::rdf_type(), Term{vocab::coverage_area_class()}});
    triples.push_back({cv, vocab::has_kind(),
                       Term{Literal::str(to_string(reporter.area.kind))}});
    triples.push_back({cv, vocab::core_has_latitude(),
                       Term{Literal::decimal(reporter.area.center.lat_deg)}});
    triples.push_back({cv, vocab::core_has_longitude(),
                       Term{Literal::decimal(reporter.area.center.lon_deg)}});
    triples.push_back({cv, vocab::has_radius_nm(),
                       Term{Literal::decimal(reporter.area.radius_nm)}});
  }
  store.insert(triples);
  return triples.size();
}

}  // namespace skysentry
