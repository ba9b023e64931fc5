#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdtm/mode.h"
#include "mdtm/timetable.h"
#include "mdtm/types.h"

namespace mdtm {

using group_idx_t = strong<std::uint32_t, struct group_idx_tag>;

// One node per elementary connection. The node id is the connection index.
struct departure_node {
  friend bool operator==(departure_node const&, departure_node const&) = default;

  // Arrival time at the head switch node, not reduced mod T_p. Overnight
  // connections sort after the ones arriving on the same day.
  std::int32_t arr_key() const { return dep_.v_ + travel_.v_; }

  vehicle_idx_t vehicle_;
  stop_idx_t from_, to_;
  mode mode_;
  time_point dep_, arr_;
  duration travel_;  // weight of the connection arc (d, σ_to)
  connection_idx_t next_{connection_idx_t::invalid()};  // vehicle arc head
  duration vehicle_weight_{0};  // weight of the vehicle arc (d, next)
  group_idx_t group_;
  std::uint32_t pos_{0U};  // position inside the group's node slice
};

struct ea_index_entry {
  friend bool operator==(ea_index_entry const&, ea_index_entry const&) = default;

  std::uint32_t pos_{0U};  // position of the node in the group's arrival order
  time_point dep_;
  std::int32_t arr_key_{0};
};

// Departure nodes of one stop that share the head switch node and the mode,
// sorted by (arr_key, dep, connection index).
struct departure_group {
  friend bool operator==(departure_group const&,
                         departure_group const&) = default;

  stop_idx_t from_, to_;
  mode mode_;
  std::uint32_t begin_{0U}, size_{0U};  // slice of group nodes and index
  std::uint32_t index_size_{0U};
};

// Unrestricted-departure connection as a switch-switch arc.
struct switch_arc {
  friend bool operator==(switch_arc const&, switch_arc const&) = default;

  stop_idx_t to_;
  duration duration_;
  mode mode_;
  link_idx_t link_;
};

// Earliest arrival index over an arrival-ordered sequence: keeps an entry
// iff its departure is strictly later than every departure kept before it.
// Returns the number of entries written to `out`.
std::size_t build_ea_index(std::span<ea_index_entry const> arrival_ordered,
                           std::span<ea_index_entry> out);
std::vector<ea_index_entry> build_ea_index(
    std::span<ea_index_entry const> arrival_ordered);

struct ea_lookup {
  std::uint32_t entry_;  // v_i
  std::uint32_t pos_;  // v_i's position in the group's arrival order
  bool wrapped_;  // t lies before the first entry (cyclic case v_l)
};

// Finds v_i with t in [dep(v_i), dep(v_{i+1})); before dep(v_1) the
// interval wraps around and v_l is returned. Throws on an empty table.
ea_lookup ea_index_lookup(std::span<ea_index_entry const> table, time_point t);

class mdtm_graph {
public:
  std::size_t n_switch_nodes() const { return transfer_.size(); }
  std::size_t n_departure_nodes() const { return dep_nodes_.size(); }
  std::size_t n_nodes() const { return n_switch_nodes() + n_departure_nodes(); }

  std::size_t n_connection_arcs() const { return dep_nodes_.size(); }
  std::size_t n_switch_arcs() const { return dep_nodes_.size(); }
  std::size_t n_vehicle_arcs() const { return n_vehicle_arcs_; }
  std::size_t n_switch_switch_arcs() const { return links_.size(); }
  std::size_t n_arcs() const {
    return n_connection_arcs() + n_switch_arcs() + n_vehicle_arcs() +
           n_switch_switch_arcs();
  }

  period get_period() const { return period_; }
  duration transfer_time(stop_idx_t const s) const {
    return transfer_[to_idx(s)];
  }

  departure_node const& node(connection_idx_t const c) const {
    return dep_nodes_[to_idx(c)];
  }

  std::span<departure_group const> groups_of(stop_idx_t const s) const {
    return {groups_.data() + group_offsets_[to_idx(s)],
            groups_.data() + group_offsets_[to_idx(s) + 1U]};
  }
  departure_group const& group(group_idx_t const g) const {
    return groups_[to_idx(g)];
  }
  group_idx_t group_idx(departure_group const& g) const {
    return group_idx_t{static_cast<std::uint32_t>(&g - groups_.data())};
  }
  std::size_t n_groups() const { return groups_.size(); }

  std::span<connection_idx_t const> group_nodes(departure_group const& g) const {
    return {group_nodes_.data() + g.begin_, g.size_};
  }
  std::span<ea_index_entry const> ea_index(departure_group const& g) const {
    return {index_.data() + g.begin_, g.index_size_};
  }

  std::span<switch_arc const> links_of(stop_idx_t const s) const {
    return {links_.data() + link_offsets_[to_idx(s)],
            links_.data() + link_offsets_[to_idx(s) + 1U]};
  }

  // Structural invariants: group membership, arrival order, index tables,
  // time references and arc weights. Empty iff all hold.
  std::vector<std::string> check_invariants() const;

  // Graph mutation (used by the delay update).
  departure_node& mutable_node(connection_idx_t const c) {
    return dep_nodes_[to_idx(c)];
  }
  void reposition(connection_idx_t);
  void rebuild_index(group_idx_t);

  friend mdtm_graph build_graph(timetable const&);
  friend bool operator==(mdtm_graph const&, mdtm_graph const&) = default;

private:
  bool node_less(connection_idx_t, connection_idx_t) const;

  period period_{kDefaultPeriod};
  std::vector<duration> transfer_;
  std::vector<departure_node> dep_nodes_;
  std::size_t n_vehicle_arcs_{0U};

  std::vector<std::uint32_t> group_offsets_;  // per stop, CSR
  std::vector<departure_group> groups_;
  std::vector<connection_idx_t> group_nodes_;
  std::vector<ea_index_entry> index_;

  std::vector<std::uint32_t> link_offsets_;  // per stop, CSR
  std::vector<switch_arc> links_;
};

// Validates the timetable first; throws validation_error on failure.
mdtm_graph build_graph(timetable const&);

// Stops as nodes; one arc per related stop pair weighted with the minimum
// travel time of any connection or unrestricted link between them.
struct condensed_graph {
  struct arc {
    friend bool operator==(arc const&, arc const&) = default;
    stop_idx_t to_;
    duration weight_;
  };

  std::size_t n_stops() const { return offsets_.size() - 1U; }
  std::span<arc const> arcs_of(stop_idx_t const s) const {
    return {arcs_.data() + offsets_[to_idx(s)],
            arcs_.data() + offsets_[to_idx(s) + 1U]};
  }
  std::optional<duration> weight(stop_idx_t from, stop_idx_t to) const;

  std::vector<std::uint32_t> offsets_{0U};
  std::vector<arc> arcs_;
};

condensed_graph condense(mdtm_graph const&);

// One node or arc per line:
//   S <stop> transfer=<s>
//   G <from> <to> <mode> size=<n> index=<m>
//   D <conn> vehicle=<v> dep=<t> arr=<t> travel=<w> next=<c|-> vw=<w>
//   I <conn> dep=<t> arr_key=<k>
//   L <from> <to> <duration> <mode>
// Stops, modes, vehicles and connections are printed with source ids.
std::string dump_graph(mdtm_graph const&, timetable const&);

}  // namespace mdtm
