#include "crmls/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace crmls {

namespace {
double to_radians(double degrees) {
  return degrees * std::numbers::pi / 180.0;
}
}  // namespace

double haversine_angle(double lat1_deg, double lon1_deg, double lat2_deg,
                       double lon2_deg) {
  const double phi1 = to_radians(lat1_deg);
  const double phi2 = to_radians(lat2_deg);
  const double dphi = to_radians(lat2_deg - lat1_deg);
  const double deta = to_radians(lon2_deg - lon1_deg);

  const double sin_dphi = std::sin(dphi / 2.0);
  const double sin_deta = std::sin(deta / 2.0);
  double a = sin_dphi * sin_dphi +
             std::cos(phi1) * std::cos(phi2) * sin_deta * sin_deta;
  // Rounding can push a just outside [0, 1]; asin needs it inside.
  a = std::clamp(a, 0.0, 1.0);
  return 2.0 * std::asin(std::sqrt(a));
}

double geo_similarity(const Venue& a, const Venue& b) {
  const double angle =
      haversine_angle(a.latitude, a.longitude, b.latitude, b.longitude);
  return 1.0 / (1.0 + angle * kEarthRadiusKm);
}

}  // namespace crmls
