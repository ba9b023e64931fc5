#include "mdtm/update.h"

#include <algorithm>

#include "fmt/core.h"

namespace mdtm {

std::vector<connection_idx_t> affected_connections(mdtm_graph const& g,
                                                   connection_idx_t const c0) {
  if (!c0.valid() || to_idx(c0) >= g.n_departure_nodes()) {
    throw error{fmt::format("unknown connection {}", c0.v_)};
  }
  auto out = std::vector<connection_idx_t>{};
  for (auto c = c0; c.valid(); c = g.node(c).next_) {
    out.push_back(c);
    if (out.size() > g.n_departure_nodes()) {
      throw error{"vehicle itinerary contains a cycle"};
    }
  }
  return out;
}

update_report apply_delay(mdtm_graph& g, delay_event const& ev) {
  auto const start = std::chrono::steady_clock::now();
  auto const p = g.get_period();
  auto const delta = ev.delta_;

  auto affected = affected_connections(g, ev.connection_);
  if (delta.v_ < 0 || delta.v_ >= p.v_) {
    throw validation_error{
        fmt::format("delay {} outside [0, {})", delta.v_, p.v_)};
  }
  if (delta.v_ == 0) {
    return {};
  }

  auto const& n0 = g.node(ev.connection_);
  if (n0.travel_.v_ + delta.v_ >= p.v_) {
    throw validation_error{fmt::format(
        "delay {} on connection {} makes its travel time reach the period",
        delta.v_, ev.connection_.v_)};
  }
  if (n0.next_.valid() && n0.vehicle_weight_.v_ + delta.v_ >= p.v_) {
    throw validation_error{fmt::format(
        "delay {} on connection {} makes its vehicle arc reach the period",
        delta.v_, ev.connection_.v_)};
  }

  auto groups = std::vector<group_idx_t>{};
  for (auto i = 0U; i != affected.size(); ++i) {
    auto& d = g.mutable_node(affected[i]);
    if (i == 0U) {
      d.travel_ = d.travel_ + delta;
    } else {
      d.dep_ = shift(d.dep_, delta, p);
    }
    d.arr_ = shift(d.arr_, delta, p);
    g.reposition(affected[i]);
    groups.push_back(d.group_);
  }

  for (auto const c : affected) {
    auto& d = g.mutable_node(c);
    if (d.next_.valid()) {
      d.vehicle_weight_ = cyclic_delta(d.dep_, g.node(d.next_).dep_, p);
    }
  }

  std::sort(begin(groups), end(groups));
  groups.erase(std::unique(begin(groups), end(groups)), end(groups));
  for (auto const gi : groups) {
    g.rebuild_index(gi);
  }

  return {std::move(affected), std::move(groups),
          std::chrono::steady_clock::now() - start};
}

}  // namespace mdtm
