#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mdtm/spatial_index.h"
#include "mdtm/timetable.h"

namespace mdtm {

struct link_config {
  double walk_speed_mps_{1.0};
  duration max_walk_{600};
  double ev_speed_kmh_{30.0};
  duration max_ev_{3600};
  std::vector<std::string> ev_station_ids_;
  bool transitive_closure_{false};
};

void check_link_config(link_config const&);

// Undirected network edge; node ids equal to a stop id attach that stop.
struct network_edge {
  std::string from_, to_;
  double length_m_;
};

// CSV `node_id,node_id,length_m`, header optional.
std::vector<network_edge> read_edge_list(std::filesystem::path const&);

spatial_index make_stop_index(timetable const&);

// Symmetric walk links between stop pairs within max_walk, sorted by
// (from, to).
std::vector<unrestricted_link> generate_walk_links(
    timetable const&, spatial_index const&, link_config const&,
    std::vector<network_edge> const* pedestrian = nullptr);

// Marks the configured EV stations. Throws on an unknown stop id.
void mark_ev_stations(timetable&, std::vector<std::string> const& ids);

// EV links among EV stations within max_ev, sorted by (from, to).
std::vector<unrestricted_link> generate_ev_links(
    timetable const&, spatial_index const&, link_config const&,
    std::vector<network_edge> const* road = nullptr);

// Replaces the links of each mode by shortest paths over them, keeping
// pairs within the mode's cap (walk: max_walk, ev: max_ev, others: no cap).
std::vector<unrestricted_link> close_links(
    std::vector<unrestricted_link> const&, std::size_t n_stops,
    link_config const&);

}  // namespace mdtm
