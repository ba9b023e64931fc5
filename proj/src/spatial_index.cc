#include "mdtm/spatial_index.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "boost/geometry.hpp"
#include "boost/geometry/index/rtree.hpp"

namespace mdtm {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace {

constexpr auto kEarthRadiusM = 6'371'000.0;

double to_rad(double const deg) { return deg * std::numbers::pi / 180.0; }

using point = bg::model::point<double, 2, bg::cs::cartesian>;  // (lon, lat)
using box = bg::model::box<point>;
using value = std::pair<point, std::uint32_t>;

}  // namespace

double haversine_m(geo_point const a, geo_point const b) {
  auto const dlat = to_rad(b.lat_ - a.lat_);
  auto const dlon = to_rad(b.lon_ - a.lon_);
  auto const h = std::sin(dlat / 2.0) * std::sin(dlat / 2.0) +
                 std::cos(to_rad(a.lat_)) * std::cos(to_rad(b.lat_)) *
                     std::sin(dlon / 2.0) * std::sin(dlon / 2.0);
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

struct spatial_index::impl {
  bgi::rtree<value, bgi::quadratic<16>> rtree_;
};

spatial_index::spatial_index(std::span<geo_point const> points)
    : points_{begin(points), end(points)}, impl_{std::make_unique<impl>()} {
  auto values = std::vector<value>{};
  values.reserve(points_.size());
  for (auto i = 0U; i != points_.size(); ++i) {
    values.emplace_back(point{points_[i].lon_, points_[i].lat_}, i);
  }
  impl_->rtree_ = bgi::rtree<value, bgi::quadratic<16>>{values};
}

spatial_index::~spatial_index() = default;
spatial_index::spatial_index(spatial_index&&) noexcept = default;
spatial_index& spatial_index::operator=(spatial_index&&) noexcept = default;

std::vector<std::uint32_t> spatial_index::within(geo_point const center,
                                                 double const radius_m) const {
  auto out = std::vector<std::uint32_t>{};
  if (radius_m < 0.0) {
    return out;
  }

  // Slightly enlarged degree box, exact filter afterwards.
  auto const dlat = radius_m / kEarthRadiusM * 180.0 / std::numbers::pi * 1.01;
  auto const lat_lo = std::max(-90.0, center.lat_ - dlat);
  auto const lat_hi = std::min(90.0, center.lat_ + dlat);
  auto const max_abs_lat = std::max(std::abs(lat_lo), std::abs(lat_hi));
  auto const cos_lat = std::cos(to_rad(std::min(max_abs_lat, 90.0)));
  auto const dlon = cos_lat < 1e-9 || lat_lo <= -90.0 || lat_hi >= 90.0
                        ? 360.0
                        : dlat / cos_lat;

  auto boxes = std::vector<box>{};
  if (dlon >= 180.0) {
    boxes.emplace_back(point{-180.0, lat_lo}, point{180.0, lat_hi});
  } else {
    auto const lo = center.lon_ - dlon;
    auto const hi = center.lon_ + dlon;
    boxes.emplace_back(point{std::max(lo, -180.0), lat_lo},
                       point{std::min(hi, 180.0), lat_hi});
    if (lo < -180.0) {
      boxes.emplace_back(point{lo + 360.0, lat_lo}, point{180.0, lat_hi});
    }
    if (hi > 180.0) {
      boxes.emplace_back(point{-180.0, lat_lo}, point{hi - 360.0, lat_hi});
    }
  }

  auto hits = std::vector<value>{};
  for (auto const& b : boxes) {
    impl_->rtree_.query(bgi::intersects(b), std::back_inserter(hits));
  }
  for (auto const& [p, i] : hits) {
    if (haversine_m(center, points_[i]) <= radius_m) {
      out.push_back(i);
    }
  }
  std::sort(begin(out), end(out));
  out.erase(std::unique(begin(out), end(out)), end(out));
  return out;
}

}  // namespace mdtm
