#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace skysentry {

// Spherical earth sized so that one arcminute of great circle is exactly one
// nautical mile (radius = 10800/pi NM).
inline constexpr double kEarthRadiusNm = 3437.7467707849396;

struct GeoPoint {
  double lat_deg = 0.0;  // [-90, 90]
  double lon_deg = 0.0;  // (-180, 180]

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

bool valid_geo_point(const GeoPoint& p);

enum class SensorKind { Adsb, Psr, Ssr };

std::string to_string(SensorKind kind);

struct CoverageArea {
  std::string id;
  SensorKind kind = SensorKind::Adsb;
  GeoPoint center;
  double radius_nm = 0.0;  // > 0
};

// Great-circle distance, symmetric and non-negative.
double haversine_nm(const GeoPoint& a, const GeoPoint& b);

// Boundary inclusive: a point exactly radius_nm from the center is covered.
bool within_coverage(const GeoPoint& p, const CoverageArea& area);

// Positive inside the area, negative outside, zero on the border.
double distance_to_border_nm(const GeoPoint& p, const CoverageArea& area);

struct TimedPoint {
  double t_s = 0.0;
  GeoPoint point;
};

class InterpolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Piecewise-linear interpolation of latitude and longitude independently.
// Requires at least two samples with strictly increasing timestamps and
// t within [samples.front().t_s, samples.back().t_s]; longitude is not
// unwrapped across the antimeridian.
GeoPoint interpolate_position(std::span<const TimedPoint> samples, double t_s);

}  // namespace skysentry
