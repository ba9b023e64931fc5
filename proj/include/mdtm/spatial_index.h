#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mdtm/types.h"

namespace mdtm {

struct geo_point {
  double lat_, lon_;
};

// Great-circle distance in meters.
double haversine_m(geo_point, geo_point);

// R-tree over stop coordinates.
class spatial_index {
public:
  explicit spatial_index(std::span<geo_point const>);
  ~spatial_index();
  spatial_index(spatial_index&&) noexcept;
  spatial_index& operator=(spatial_index&&) noexcept;

  // Indices of all points within `radius_m` of `center`, ascending.
  std::vector<std::uint32_t> within(geo_point center, double radius_m) const;

  std::size_t size() const { return points_.size(); }

private:
  struct impl;
  std::vector<geo_point> points_;
  std::unique_ptr<impl> impl_;
};

}  // namespace mdtm
