#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdtm/links.h"
#include "mdtm/timetable.h"

namespace mdtm {

struct mode_share {
  std::string mode_;
  double share_;
};

struct synthetic_params {
  std::uint32_t stops_{50U};
  std::uint32_t vehicles_{200U};
  std::uint32_t connections_per_vehicle_{25U};
  std::vector<mode_share> mode_mix_{
      {"bus", 0.76}, {"train", 0.15}, {"tram", 0.09}};
  duration min_transfer_{60}, max_transfer_{300};
  double walk_link_density_{0.5};  // probability of keeping an eligible pair
  std::uint32_t ev_stations_{0U};
  std::uint64_t seed_{1U};
  period period_{kDefaultPeriod};
  double grid_spacing_m_{300.0};
  std::uint32_t vehicles_per_route_{8U};
  link_config links_{};
};

// Throws validation_error on infeasible parameters.
void check_params(synthetic_params const&);

// Splits `total` proportionally to `shares` (largest remainder method).
std::vector<std::uint32_t> apportion(std::vector<double> const& shares,
                                     std::uint32_t total);

// Grid city: stops on a jittered grid, routes as random walks over grid
// neighbours, vehicles of a route spread over the period.
timetable gen_synthetic(synthetic_params const&);

}  // namespace mdtm
