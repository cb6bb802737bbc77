#include "skysentry/geo.hpp"

#include <algorithm>
#include <cmath>

namespace skysentry {

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

}  // namespace

bool valid_geo_point(const GeoPoint& p) {
  return std::isfinite(p.lat_deg) && std::isfinite(p.lon_deg) &&
         p.lat_deg >= -90.0 && p.lat_deg <= 90.0 && p.lon_deg > -180.0 &&
         p.lon_deg <= 180.0;
}

std::string to_string(SensorKind kind) {
  switch (kind) {
    case SensorKind::Adsb:
      return "ADSB";
    case SensorKind::Psr:
      return "PSR";
    case SensorKind::Ssr:
      return "SSR";
  }
  return "?";
}

double haversine_nm(const GeoPoint& a, const GeoPoint& b) {
  const double lat1 = a.lat_deg * kDegToRad;
  const double lat2 = b.lat_deg * kDegToRad;
  const double dlat = (b.lat_deg - a.lat_deg) * kDegToRad;
  const double dlon = (b.lon_deg - a.lon_deg) * kDegToRad;
  const double s1 = std::sin(dlat / 2.0);
  const double s2 = std::sin(dlon / 2.0);
  const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  return 2.0 * kEarthRadiusNm * std::asin(std::min(1.0, std::sqrt(h)));
}

bool within_coverage(const GeoPoint& p, const CoverageArea& area) {
  return haversine_nm(p, area.center) <= area.radius_nm;
}

double distance_to_border_nm(const GeoPoint& p, const CoverageArea& area) {
  return area.radius_nm - haversine_nm(p, area.center);
}

GeoPoint interpolate_position(std::span<const TimedPoint> samples, double t_s) {
  if (samples.size() < 2) {
    throw InterpolationError("interpolate_position: need at least 2 samples");
  }
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i - 1].t_s < samples[i].t_s)) {
      throw InterpolationError(
          "interpolate_position: timestamps must be strictly increasing");
    }
  }
  if (t_s < samples.front().t_s || t_s > samples.back().t_s) {
    throw InterpolationError("interpolate_position: t outside sample span");
  }
  auto it = std::lower_bound(
      samples.begin(), samples.end(), t_s,
      [](const TimedPoint& s, double t) { return s.t_s < t; });
  if (it->t_s == t_s) {
    return it->point;
  }
  const TimedPoint& hi = *it;
  const TimedPoint& lo = *(it - 1);
  const double f = (t_s - lo.t_s) / (hi.t_s - lo.t_s);
  return GeoPoint{lo.point.lat_deg + f * (hi.point.lat_deg - lo.point.lat_deg),
                  lo.point.lon_deg + f * (hi.point.lon_deg - lo.point.lon_deg)};
}

}  // namespace skysentry
