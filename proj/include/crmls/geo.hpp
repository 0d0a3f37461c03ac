#pragma once

#include "crmls/dataset.hpp"

namespace crmls {

inline constexpr double kEarthRadiusKm = 6371.0;

// Haversine central angle between two points, in radians.
double haversine_angle(double lat1_deg, double lon1_deg, double lat2_deg,
                       double lon2_deg);

// 1 / (1 + angle * R). Decreasing in distance, 1 at zero distance,
// always in (0, 1].
double geo_similarity(const Venue& a, const Venue& b);

}  // namespace crmls
