#include "mdtm/graph.h"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "fmt/core.h"

namespace mdtm {

std::size_t build_ea_index(std::span<ea_index_entry const> arrival_ordered,
                           std::span<ea_index_entry> out) {
  auto n = std::size_t{0U};
  auto t_max = std::int32_t{0};
  for (auto const& e : arrival_ordered) {
    if (n == 0U || e.dep_.v_ > t_max) {
      t_max = e.dep_.v_;
      out[n++] = e;
    }
  }
  return n;
}

std::vector<ea_index_entry> build_ea_index(
    std::span<ea_index_entry const> arrival_ordered) {
  auto out = std::vector<ea_index_entry>(arrival_ordered.size());
  out.resize(build_ea_index(arrival_ordered, out));
  return out;
}

ea_lookup ea_index_lookup(std::span<ea_index_entry const> table,
                          time_point const t) {
  if (table.empty()) {
    throw error{"earliest arrival index lookup on an empty table"};
  }
  auto const it = std::upper_bound(
      begin(table), end(table), t,
      [](time_point const x, ea_index_entry const& e) { return x < e.dep_; });
  if (it == begin(table)) {
    auto const last = static_cast<std::uint32_t>(table.size() - 1U);
    return {last, table[last].pos_, true};
  }
  auto const i = static_cast<std::uint32_t>(std::distance(begin(table), it) - 1);
  return {i, table[i].pos_, false};
}

bool mdtm_graph::node_less(connection_idx_t const a,
                           connection_idx_t const b) const {
  auto const& x = node(a);
  auto const& y = node(b);
  return std::tuple{x.arr_key(), x.dep_.v_, to_idx(a)} <
         std::tuple{y.arr_key(), y.dep_.v_, to_idx(b)};
}

mdtm_graph build_graph(timetable const& tt) {
  ensure_valid(tt);

  auto g = mdtm_graph{};
  g.period_ = tt.period_;

  auto const n_stops = tt.stops_.size();
  auto const n_conns = tt.connections_.size();

  g.transfer_.reserve(n_stops);
  for (auto const& s : tt.stops_) {
    g.transfer_.push_back(s.transfer_time_);
  }

  g.dep_nodes_.resize(n_conns);
  for (auto i = 0U; i != n_conns; ++i) {
    auto const& c = tt.connections_[i];
    auto& d = g.dep_nodes_[i];
    d.vehicle_ = c.vehicle_;
    d.from_ = c.from_;
    d.to_ = c.to_;
    d.mode_ = tt.vehicles_[to_idx(c.vehicle_)].mode_;
    d.dep_ = c.dep_;
    d.arr_ = c.arr_;
    d.travel_ = tt.travel_time(c);
  }

  for (auto const& itinerary : tt.itineraries()) {
    for (auto i = 1U; i < itinerary.size(); ++i) {
      auto& d = g.dep_nodes_[to_idx(itinerary[i - 1])];
      d.next_ = itinerary[i];
      d.vehicle_weight_ =
          cyclic_delta(d.dep_, g.node(itinerary[i]).dep_, g.period_);
      ++g.n_vehicle_arcs_;
    }
  }

  // Γ1 (head switch node), then Γ2 (mode), then arrival order.
  g.group_nodes_.reserve(n_conns);
  for (auto i = 0U; i != n_conns; ++i) {
    g.group_nodes_.emplace_back(i);
  }
  std::sort(begin(g.group_nodes_), end(g.group_nodes_),
            [&](connection_idx_t const a, connection_idx_t const b) {
              auto const& x = g.node(a);
              auto const& y = g.node(b);
              if (std::tuple{x.from_, x.to_, x.mode_} !=
                  std::tuple{y.from_, y.to_, y.mode_}) {
                return std::tuple{x.from_, x.to_, x.mode_} <
                       std::tuple{y.from_, y.to_, y.mode_};
              }
              return g.node_less(a, b);
            });

  g.group_offsets_.assign(n_stops + 1U, 0U);
  for (auto i = 0U; i != n_conns; ++i) {
    auto const c = g.group_nodes_[i];
    auto const& d = g.node(c);
    if (g.groups_.empty() || g.groups_.back().from_ != d.from_ ||
        g.groups_.back().to_ != d.to_ || g.groups_.back().mode_ != d.mode_) {
      g.groups_.push_back({d.from_, d.to_, d.mode_, i, 0U, 0U});
      ++g.group_offsets_[to_idx(d.from_) + 1U];
    }
    auto& grp = g.groups_.back();
    auto& dm = g.dep_nodes_[to_idx(c)];
    dm.group_ = group_idx_t{static_cast<std::uint32_t>(g.groups_.size() - 1U)};
    dm.pos_ = grp.size_++;
  }
  std::partial_sum(begin(g.group_offsets_), end(g.group_offsets_),
                   begin(g.group_offsets_));

  g.index_.resize(n_conns);
  for (auto i = 0U; i != g.groups_.size(); ++i) {
    g.rebuild_index(group_idx_t{i});
  }

  auto link_order = std::vector<std::uint32_t>(tt.links_.size());
  std::iota(begin(link_order), end(link_order), 0U);
  std::stable_sort(begin(link_order), end(link_order),
                   [&](std::uint32_t const a, std::uint32_t const b) {
                     return tt.links_[a].from_ < tt.links_[b].from_;
                   });
  g.link_offsets_.assign(n_stops + 1U, 0U);
  for (auto const l : link_order) {
    auto const& link = tt.links_[l];
    g.links_.push_back({link.to_, link.duration_, link.mode_, link_idx_t{l}});
    ++g.link_offsets_[to_idx(link.from_) + 1U];
  }
  std::partial_sum(begin(g.link_offsets_), end(g.link_offsets_),
                   begin(g.link_offsets_));

  return g;
}

void mdtm_graph::rebuild_index(group_idx_t const gi) {
  auto& grp = groups_[to_idx(gi)];
  auto entries = std::vector<ea_index_entry>{};
  entries.reserve(grp.size_);
  for (auto i = 0U; i != grp.size_; ++i) {
    auto const& d = node(group_nodes_[grp.begin_ + i]);
    entries.push_back({i, d.dep_, d.arr_key()});
  }
  auto const slice = std::span{index_.data() + grp.begin_, grp.size_};
  grp.index_size_ = static_cast<std::uint32_t>(build_ea_index(entries, slice));
  std::fill(begin(slice) + grp.index_size_, end(slice), ea_index_entry{});
}

void mdtm_graph::reposition(connection_idx_t const c) {
  auto const& d = node(c);
  auto const& grp = groups_[to_idx(d.group_)];
  auto const first = begin(group_nodes_) + grp.begin_;
  auto const last = first + grp.size_;
  auto const at = first + d.pos_;
  auto const less = [&](connection_idx_t const a, connection_idx_t const b) {
    return node_less(a, b);
  };

  auto moved_begin = at;
  auto moved_end = at + 1;
  if (auto const ins = std::lower_bound(first, at, c, less); ins != at) {
    std::rotate(ins, at, at + 1);
    moved_begin = ins;
  } else if (auto const ins2 = std::lower_bound(at + 1, last, c, less);
             ins2 != at + 1) {
    std::rotate(at, at + 1, ins2);
    moved_end = ins2;
  }
  for (auto it = moved_begin; it != moved_end; ++it) {
    dep_nodes_[to_idx(*it)].pos_ =
        static_cast<std::uint32_t>(std::distance(first, it));
  }
}

std::vector<std::string> mdtm_graph::check_invariants() const {
  auto issues = std::vector<std::string>{};
  auto const p = period_;

  for (auto i = 0U; i != dep_nodes_.size(); ++i) {
    auto const& d = dep_nodes_[i];
    if (d.arr_ != shift(d.dep_, d.travel_, p)) {
      issues.push_back(fmt::format("node {}: arr != dep + travel", i));
    }
    if (d.travel_.v_ < 0 || d.travel_.v_ >= p.v_) {
      issues.push_back(fmt::format("node {}: travel {} outside [0, T_p)", i,
                                   d.travel_.v_));
    }
    if (d.next_.valid() &&
        d.vehicle_weight_ != cyclic_delta(d.dep_, node(d.next_).dep_, p)) {
      issues.push_back(fmt::format("node {}: stale vehicle arc weight", i));
    }
    if (group_nodes_[groups_[to_idx(d.group_)].begin_ + d.pos_] !=
        connection_idx_t{i}) {
      issues.push_back(fmt::format("node {}: wrong group position", i));
    }
  }

  for (auto gi = 0U; gi != groups_.size(); ++gi) {
    auto const& grp = groups_[gi];
    auto const nodes = group_nodes(grp);
    for (auto i = 0U; i != nodes.size(); ++i) {
      auto const& d = node(nodes[i]);
      if (d.from_ != grp.from_ || d.to_ != grp.to_ || d.mode_ != grp.mode_) {
        issues.push_back(fmt::format("group {}: foreign node {}", gi,
                                     to_idx(nodes[i])));
      }
      if (i != 0U && !node_less(nodes[i - 1], nodes[i])) {
        issues.push_back(fmt::format("group {}: not arrival ordered at {}", gi,
                                     i));
      }
    }

    auto const table = ea_index(grp);
    for (auto i = 1U; i < table.size(); ++i) {
      if (table[i].dep_ <= table[i - 1].dep_ ||
          table[i].arr_key_ < table[i - 1].arr_key_ ||
          table[i].pos_ <= table[i - 1].pos_) {
        issues.push_back(fmt::format("group {}: index not monotone at {}", gi,
                                     i));
      }
    }
    auto entries = std::vector<ea_index_entry>{};
    for (auto i = 0U; i != nodes.size(); ++i) {
      entries.push_back({i, node(nodes[i]).dep_, node(nodes[i]).arr_key()});
    }
    auto const expected = build_ea_index(entries);
    if (!std::equal(begin(table), end(table), begin(expected), end(expected))) {
      issues.push_back(fmt::format("group {}: stale index table", gi));
    }
  }

  return issues;
}

std::optional<duration> condensed_graph::weight(stop_idx_t const from,
                                                stop_idx_t const to) const {
  for (auto const& a : arcs_of(from)) {
    if (a.to_ == to) {
      return a.weight_;
    }
  }
  return std::nullopt;
}

condensed_graph condense(mdtm_graph const& g) {
  auto const n = g.n_switch_nodes();
  auto cg = condensed_graph{};
  cg.offsets_.assign(n + 1U, 0U);

  auto best = std::vector<std::pair<stop_idx_t, duration>>{};
  for (auto s = 0U; s != n; ++s) {
    best.clear();
    for (auto const& grp : g.groups_of(stop_idx_t{s})) {
      auto min = duration{std::numeric_limits<std::int32_t>::max()};
      for (auto const c : g.group_nodes(grp)) {
        min = std::min(min, g.node(c).travel_);
      }
      best.emplace_back(grp.to_, min);
    }
    for (auto const& l : g.links_of(stop_idx_t{s})) {
      best.emplace_back(l.to_, l.duration_);
    }
    std::sort(begin(best), end(best));
    for (auto i = 0U; i != best.size(); ++i) {
      if (i == 0U || best[i].first != best[i - 1].first) {
        cg.arcs_.push_back({best[i].first, best[i].second});
      }
    }
    cg.offsets_[s + 1U] = static_cast<std::uint32_t>(cg.arcs_.size());
  }
  return cg;
}

std::string dump_graph(mdtm_graph const& g, timetable const& tt) {
  auto out = std::string{};
  auto const stop_id = [&](stop_idx_t const s) -> std::string const& {
    return tt.stops_[to_idx(s)].id_;
  };

  out += fmt::format("# period={} switch_nodes={} departure_nodes={} arcs={}\n",
                     g.get_period().v_, g.n_switch_nodes(),
                     g.n_departure_nodes(), g.n_arcs());
  for (auto s = 0U; s != g.n_switch_nodes(); ++s) {
    auto const si = stop_idx_t{s};
    out += fmt::format("S {} transfer={}\n", stop_id(si),
                       g.transfer_time(si).v_);
    for (auto const& grp : g.groups_of(si)) {
      out += fmt::format("G {} {} {} size={} index={}\n", stop_id(grp.from_),
                         stop_id(grp.to_), tt.modes_.name(grp.mode_), grp.size_,
                         grp.index_size_);
      for (auto const c : g.group_nodes(grp)) {
        auto const& d = g.node(c);
        out += fmt::format(
            "D {} vehicle={} dep={} arr={} travel={} next={} vw={}\n",
            tt.connections_[to_idx(c)].id_, tt.vehicles_[to_idx(d.vehicle_)].id_,
            d.dep_.v_, d.arr_.v_, d.travel_.v_,
            d.next_.valid() ? tt.connections_[to_idx(d.next_)].id_ : "-",
            d.vehicle_weight_.v_);
      }
      for (auto const& e : g.ea_index(grp)) {
        out += fmt::format(
            "I {} dep={} arr_key={}\n",
            tt.connections_[to_idx(g.group_nodes(grp)[e.pos_])].id_,
            e.dep_.v_, e.arr_key_);
      }
    }
    for (auto const& l : g.links_of(si)) {
      out += fmt::format("L {} {} {} {}\n", stop_id(si), stop_id(l.to_),
                         l.duration_.v_, tt.modes_.name(l.mode_));
    }
  }
  return out;
}

}  // namespace mdtm
