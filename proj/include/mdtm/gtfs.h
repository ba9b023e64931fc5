#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mdtm/timetable.h"

namespace mdtm {

struct gtfs_config {
  period period_{kDefaultPeriod};
  duration default_transfer_{60};
  // route_type -> mode name; consulted before the built-in mapping.
  std::map<int, std::string> route_type_modes_;
  // Mode for route types without any mapping; empty rejects them.
  std::string unknown_route_type_mode_;
};

struct gtfs_result {
  timetable tt_;
  std::vector<std::string> warnings_;
};

// Built-in mapping of basic and extended GTFS route types.
std::optional<mode> default_route_type_mode(int route_type);

// Reads stops.txt, routes.txt, trips.txt, stop_times.txt and, if present,
// transfers.txt (from_stop_id == to_stop_id rows set the stop's transfer
// time). Times are reduced modulo the period.
gtfs_result parse_gtfs(std::filesystem::path const& dir,
                       gtfs_config const& = {});

}  // namespace mdtm
