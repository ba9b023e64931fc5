#include "mdtm/query.h"

#include <algorithm>
#include <queue>
#include <unordered_map>

#include "fmt/core.h"
#include "json.hpp"

namespace mdtm {

namespace {

using switch_pred = search_state::switch_pred;
using departure_pred = search_state::departure_pred;

void check_request(mdtm_graph const& g, query_request const& q) {
  if (!q.from_.valid() || to_idx(q.from_) >= g.n_switch_nodes()) {
    throw error{fmt::format("unknown origin stop {}", q.from_.v_)};
  }
  if (!q.to_.valid() || to_idx(q.to_) >= g.n_switch_nodes()) {
    throw error{fmt::format("unknown target stop {}", q.to_.v_)};
  }
  if (q.modes_.empty()) {
    throw validation_error{"query selects no transport mode"};
  }
}

struct pq_entry {
  elapsed_t key_, dist_;
  stop_idx_t stop_;
};

// Max-heap comparator: returns true if `a` is served after `b`. On equal
// keys the target comes first, then the larger distance (smaller
// potential), then the smaller stop index.
struct pq_after {
  bool operator()(pq_entry const& a, pq_entry const& b) const {
    if (a.key_ != b.key_) {
      return a.key_ > b.key_;
    }
    if ((a.stop_ == target_) != (b.stop_ == target_)) {
      return b.stop_ == target_;
    }
    if (a.dist_ != b.dist_) {
      return a.dist_ < b.dist_;
    }
    return a.stop_ > b.stop_;
  }
  stop_idx_t target_;
};

template <typename Potential>
ea_result ea_search(mdtm_graph const& g, query_request const& q,
                    search_state& s, Potential&& pi) {
  check_request(g, q);
  s.reset(g);
  s.q_ = q;

  auto const p = g.get_period();
  auto const cap = search_horizon(p);
  auto stats = search_stats{};
  auto pq = std::priority_queue<pq_entry, std::vector<pq_entry>, pq_after>{
      pq_after{q.to_}};

  auto const tr_eff = [&](stop_idx_t const x) -> elapsed_t {
    return x == q.from_ ? 0 : g.transfer_time(x).v_;
  };

  auto const update_switch = [&](stop_idx_t const to, elapsed_t const e,
                                 switch_pred const pred) {
    auto const i = to_idx(to);
    if (e > cap || e >= s.dist_switch_[i]) {
      return;
    }
    if (s.dist_switch_[i] == kUnreachable) {
      s.touched_switch_.push_back(i);
    }
    s.dist_switch_[i] = e;
    s.switch_pred_[i] = pred;
    auto const h = pi(to);
    if (h != kUnreachable && e + h <= cap) {
      pq.push({e + h, e, to});
      ++stats.pushed_;
    }
  };

  auto const relax_departure = [&](connection_idx_t c, elapsed_t e,
                                   departure_pred pred) {
    while (true) {
      auto const i = to_idx(c);
      if (e > cap || e >= s.dist_departure_[i]) {
        return;
      }
      if (s.dist_departure_[i] == kUnreachable) {
        s.touched_departure_.push_back(i);
      }
      s.dist_departure_[i] = e;
      s.departure_pred_[i] = pred;

      auto const& n = g.node(c);
      update_switch(n.to_, e + n.travel_.v_,
                    {switch_pred::kind::kRide, i, 0U});
      if (!n.next_.valid()) {
        return;
      }
      pred = {departure_pred::kind::kVehicle, i};
      e += n.vehicle_weight_.v_;
      c = n.next_;
    }
  };

  auto const scan_groups = [&](stop_idx_t const x, elapsed_t const d) {
    auto const tau = tr_eff(x);
    auto const t_board = normalize(q.depart_.v_ + d + tau, p);
    auto const base = d + tau;
    for (auto const& grp : g.groups_of(x)) {
      if (!q.modes_.contains(grp.mode_)) {
        continue;
      }
      auto const nodes = g.group_nodes(grp);
      auto const look = ea_index_lookup(g.ea_index(grp), t_board);
      auto const a = grp.to_;

      auto const scan = [&](std::uint32_t const first, std::uint32_t const last,
                            elapsed_t const offset) {
        for (auto pos = first; pos != last; ++pos) {
          auto const c = nodes[pos];
          auto const& n = g.node(c);
          auto const da = s.dist_switch_[to_idx(a)];
          auto const bound = da == kUnreachable ? kUnreachable : da + tr_eff(a);
          if (bound != kUnreachable &&
              base + n.arr_key() - t_board.v_ + offset > bound) {
            return;
          }
          ++stats.scanned_departures_;
          auto const e = base + cyclic_delta(t_board, n.dep_, p).v_;
          if (bound != kUnreachable && e + n.travel_.v_ > bound) {
            continue;
          }
          relax_departure(c, e, {departure_pred::kind::kBoard, 0U});
        }
      };
      scan(look.pos_, static_cast<std::uint32_t>(nodes.size()), 0);
      scan(0U, look.pos_, look.wrapped_ ? 0 : p.v_);
    }
  };

  auto const relax_links = [&](stop_idx_t const x, elapsed_t const d) {
    auto const links = g.links_of(x);
    for (auto k = 0U; k != links.size(); ++k) {
      if (q.modes_.contains(links[k].mode_)) {
        update_switch(links[k].to_, d + links[k].duration_.v_,
                      {switch_pred::kind::kLink, to_idx(x), k});
      }
    }
  };

  update_switch(q.from_, 0, {switch_pred::kind::kOrigin, 0U, 0U});
  while (!pq.empty()) {
    auto const top = pq.top();
    pq.pop();
    auto const xi = to_idx(top.stop_);
    if (s.settled_[xi] || top.dist_ != s.dist_switch_[xi]) {
      continue;
    }
    s.settled_[xi] = true;
    ++stats.settled_switch_;
    if (top.stop_ == q.to_) {
      break;
    }
    scan_groups(top.stop_, top.dist_);
    relax_links(top.stop_, top.dist_);
  }

  auto r = ea_result{};
  r.stats_ = stats;
  if (s.settled_[to_idx(q.to_)]) {
    r.journey_ = reconstruct_journey(g, s);
  }
  return r;
}

}  // namespace

void search_state::reset(mdtm_graph const& g) {
  auto const n_s = g.n_switch_nodes();
  auto const n_d = g.n_departure_nodes();
  if (dist_switch_.size() != n_s || dist_departure_.size() != n_d) {
    dist_switch_.assign(n_s, kUnreachable);
    switch_pred_.assign(n_s, {});
    settled_.assign(n_s, false);
    dist_departure_.assign(n_d, kUnreachable);
    departure_pred_.assign(n_d, {});
  } else {
    for (auto const i : touched_switch_) {
      dist_switch_[i] = kUnreachable;
      switch_pred_[i] = {};
      settled_[i] = false;
    }
    for (auto const i : touched_departure_) {
      dist_departure_[i] = kUnreachable;
      departure_pred_[i] = {};
    }
  }
  touched_switch_.clear();
  touched_departure_.clear();
}

ea_result earliest_arrival(mdtm_graph const& g, query_request const& q,
                           search_state& s) {
  return ea_search(g, q, s, [](stop_idx_t) { return elapsed_t{0}; });
}

ea_result earliest_arrival(mdtm_graph const& g, query_request const& q) {
  auto s = search_state{};
  return earliest_arrival(g, q, s);
}

ea_result earliest_arrival_alt(mdtm_graph const& g,
                               lower_bound_table const& lb,
                               query_request const& q, search_state& s) {
  if (lb.n_stops() != g.n_switch_nodes()) {
    throw error{fmt::format("lower bound table covers {} stops, graph has {}",
                            lb.n_stops(), g.n_switch_nodes())};
  }
  check_request(g, q);
  return ea_search(g, q, s, [&](stop_idx_t const at) {
    return lb.potential(at, q.to_);
  });
}

ea_result earliest_arrival_alt(mdtm_graph const& g,
                               lower_bound_table const& lb,
                               query_request const& q) {
  auto s = search_state{};
  return earliest_arrival_alt(g, lb, q, s);
}

journey reconstruct_journey(mdtm_graph const& g, search_state const& s) {
  auto const& q = s.q_;
  auto const ti = to_idx(q.to_);
  if (ti >= s.settled_.size() || !s.settled_[ti]) {
    throw error{"journey reconstruction: target not settled"};
  }

  auto j = journey{};
  j.depart_ = q.depart_;
  j.elapsed_ = s.dist_switch_[ti];

  auto cur = q.to_;
  auto t = j.elapsed_;
  for (auto guard = std::size_t{0U}; guard <= g.n_nodes(); ++guard) {
    auto const& pr = s.switch_pred_[to_idx(cur)];
    switch (pr.kind_) {
      case switch_pred::kind::kOrigin:
        std::reverse(begin(j.legs_), end(j.legs_));
        j.boardings_ = static_cast<std::uint32_t>(
            std::count_if(begin(j.legs_), end(j.legs_), [](auto const& l) {
              return l.kind_ == journey_leg::kind::kRide;
            }));
        return j;

      case switch_pred::kind::kLink: {
        auto const tail = stop_idx_t{pr.a_};
        auto const& arc = g.links_of(tail)[pr.b_];
        auto& leg = j.legs_.emplace_back();
        leg.kind_ = journey_leg::kind::kLink;
        leg.mode_ = arc.mode_;
        leg.from_ = tail;
        leg.to_ = cur;
        leg.arrive_ = t;
        leg.depart_ = t - arc.duration_.v_;
        leg.link_ = arc.link_;
        t = leg.depart_;
        cur = tail;
        break;
      }

      case switch_pred::kind::kRide: {
        auto& leg = j.legs_.emplace_back();
        leg.kind_ = journey_leg::kind::kRide;
        leg.to_ = cur;
        leg.arrive_ = t;
        auto c = pr.a_;
        auto dep = t - g.node(connection_idx_t{c}).travel_.v_;
        while (true) {
          leg.connections_.emplace_back(c);
          auto const& dp = s.departure_pred_[c];
          if (dp.kind_ == departure_pred::kind::kBoard) {
            break;
          }
          if (dp.kind_ != departure_pred::kind::kVehicle ||
              leg.connections_.size() > g.n_departure_nodes()) {
            throw error{"journey reconstruction: broken vehicle chain"};
          }
          c = dp.prev_;
          dep -= g.node(connection_idx_t{c}).vehicle_weight_.v_;
        }
        std::reverse(begin(leg.connections_), end(leg.connections_));
        auto const& first = g.node(leg.connections_.front());
        leg.mode_ = first.mode_;
        leg.vehicle_ = first.vehicle_;
        leg.from_ = first.from_;
        leg.depart_ = dep;
        cur = first.from_;
        t = s.dist_switch_[to_idx(cur)];
        break;
      }

      case switch_pred::kind::kNone:
        throw error{"journey reconstruction: broken predecessor chain"};
    }
  }
  throw error{"journey reconstruction: predecessor cycle"};
}

namespace {

struct mc_switch_label {
  enum class kind : std::uint8_t { kOrigin, kRide, kLink };
  stop_idx_t stop_;
  elapsed_t e_;
  std::uint32_t b_;
  bool dead_{false};
  kind kind_;
  std::uint32_t ref_{0U};  // ride: departure label; link: switch label
  std::uint32_t link_off_{0U};
};

struct mc_departure_label {
  enum class kind : std::uint8_t { kBoard, kVehicle };
  connection_idx_t c_;
  elapsed_t e_;
  std::uint32_t b_;
  kind kind_;
  std::uint32_t ref_;  // board: switch label; vehicle: departure label
};

struct mc_pq_entry {
  elapsed_t key_;
  std::uint32_t b_, label_;
};

struct mc_pq_after {
  bool operator()(mc_pq_entry const& a, mc_pq_entry const& b) const {
    return std::tie(a.key_, a.b_, a.label_) > std::tie(b.key_, b.b_, b.label_);
  }
};

bool dominates(elapsed_t const e1, std::uint32_t const b1, elapsed_t const e2,
               std::uint32_t const b2) {
  return e1 <= e2 && b1 <= b2;
}

class mc_search {
public:
  mc_search(mdtm_graph const& g, query_request const& q, double const p,
            lower_bound_table const* lb)
      : g_{g},
        q_{q},
        p_{p},
        lb_{lb},
        limit_{search_horizon(g.get_period())},
        switch_bags_(g.n_switch_nodes()) {}

  pareto_set run() {
    insert_switch(q_.from_, 0, 0U, mc_switch_label::kind::kOrigin, 0U, 0U);
    while (!pq_.empty()) {
      auto const top = pq_.top();
      pq_.pop();
      auto const& l = switch_labels_[top.label_];
      if (l.dead_) {
        continue;
      }
      if (top.key_ > limit_) {
        break;
      }
      ++stats_.settled_switch_;
      if (l.stop_ == q_.to_) {
        emit(top.label_);
        continue;
      }
      expand(top.label_);
    }

    auto r = pareto_set{};
    r.stats_ = stats_;
    if (!targets_.empty()) {
      r.fastest_ = switch_labels_[targets_.front()].e_;
    }
    for (auto const id : targets_) {
      r.journeys_.emplace_back(reconstruct(id));
    }
    return r;
  }

private:
  elapsed_t potential(stop_idx_t const s) const {
    return lb_ == nullptr ? 0 : lb_->potential(s, q_.to_);
  }

  elapsed_t tr_eff(stop_idx_t const s) const {
    return s == q_.from_ ? 0 : g_.transfer_time(s).v_;
  }

  void emit(std::uint32_t const id) {
    auto const& l = switch_labels_[id];
    for (auto const t : targets_) {
      auto const& x = switch_labels_[t];
      if (dominates(x.e_, x.b_, l.e_, l.b_)) {
        return;
      }
    }
    if (targets_.empty()) {
      limit_ = std::min(limit_, elapsed_threshold(p_, l.e_));
    }
    targets_.push_back(id);
  }

  bool pruned_by_target(elapsed_t const e, std::uint32_t const b) const {
    return std::any_of(begin(targets_), end(targets_), [&](auto const t) {
      auto const& x = switch_labels_[t];
      return dominates(x.e_, x.b_, e, b);
    });
  }

  void insert_switch(stop_idx_t const s, elapsed_t const e,
                     std::uint32_t const b, mc_switch_label::kind const k,
                     std::uint32_t const ref, std::uint32_t const link_off) {
    auto const h = potential(s);
    if (h == kUnreachable || e + h > limit_ || pruned_by_target(e + h, b)) {
      return;
    }
    auto& bag = switch_bags_[to_idx(s)];
    for (auto const id : bag) {
      auto const& x = switch_labels_[id];
      if (dominates(x.e_, x.b_, e, b)) {
        return;
      }
    }
    std::erase_if(bag, [&](auto const id) {
      auto& x = switch_labels_[id];
      if (dominates(e, b, x.e_, x.b_)) {
        x.dead_ = true;
        return true;
      }
      return false;
    });
    auto const id = static_cast<std::uint32_t>(switch_labels_.size());
    switch_labels_.push_back({s, e, b, false, k, ref, link_off});
    bag.push_back(id);
    pq_.push({e + h, b, id});
    ++stats_.pushed_;
  }

  void relax_departure(connection_idx_t c, elapsed_t e, std::uint32_t const b,
                       mc_departure_label::kind k, std::uint32_t ref) {
    while (e <= limit_) {
      auto& bag = departure_bags_[to_idx(c)];
      for (auto const id : bag) {
        auto const& x = departure_labels_[id];
        if (dominates(x.e_, x.b_, e, b)) {
          return;
        }
      }
      std::erase_if(bag, [&](auto const id) {
        auto const& x = departure_labels_[id];
        return dominates(e, b, x.e_, x.b_);
      });
      auto const id = static_cast<std::uint32_t>(departure_labels_.size());
      departure_labels_.push_back({c, e, b, k, ref});
      bag.push_back(id);

      auto const& n = g_.node(c);
      insert_switch(n.to_, e + n.travel_.v_, b, mc_switch_label::kind::kRide,
                    id, 0U);
      if (!n.next_.valid()) {
        return;
      }
      k = mc_departure_label::kind::kVehicle;
      ref = id;
      e += n.vehicle_weight_.v_;
      c = n.next_;
    }
  }

  // Earliest arrival at `a` among labels with at most `b` boardings.
  elapsed_t best_at(stop_idx_t const a, std::uint32_t const b) const {
    auto best = kUnreachable;
    for (auto const id : switch_bags_[to_idx(a)]) {
      auto const& x = switch_labels_[id];
      if (x.b_ <= b) {
        best = std::min(best, x.e_);
      }
    }
    return best;
  }

  void expand(std::uint32_t const label) {
    auto const x = switch_labels_[label].stop_;
    auto const d = switch_labels_[label].e_;
    auto const b = switch_labels_[label].b_;

    auto const p = g_.get_period();
    auto const tau = tr_eff(x);
    auto const t_board = normalize(q_.depart_.v_ + d + tau, p);
    auto const base = d + tau;

    for (auto const& grp : g_.groups_of(x)) {
      if (!q_.modes_.contains(grp.mode_)) {
        continue;
      }
      auto const nodes = g_.group_nodes(grp);
      auto const look = ea_index_lookup(g_.ea_index(grp), t_board);
      auto const a = grp.to_;

      auto const scan = [&](std::uint32_t const first, std::uint32_t const last,
                            elapsed_t const offset) {
        for (auto pos = first; pos != last; ++pos) {
          auto const c = nodes[pos];
          auto const& n = g_.node(c);
          auto const da = best_at(a, b);
          auto const bound = da == kUnreachable ? kUnreachable : da + tr_eff(a);
          if (bound != kUnreachable &&
              base + n.arr_key() - t_board.v_ + offset > bound) {
            return;
          }
          ++stats_.scanned_departures_;
          auto const e = base + cyclic_delta(t_board, n.dep_, p).v_;
          if (bound != kUnreachable && e + n.travel_.v_ > bound) {
            continue;
          }
          relax_departure(c, e, b + 1U, mc_departure_label::kind::kBoard,
                          label);
        }
      };
      scan(look.pos_, static_cast<std::uint32_t>(nodes.size()), 0);
      scan(0U, look.pos_, look.wrapped_ ? 0 : p.v_);
    }

    auto const links = g_.links_of(x);
    for (auto k = 0U; k != links.size(); ++k) {
      if (q_.modes_.contains(links[k].mode_)) {
        insert_switch(links[k].to_, d + links[k].duration_.v_, b,
                      mc_switch_label::kind::kLink, label, k);
      }
    }
  }

  journey reconstruct(std::uint32_t id) const {
    auto j = journey{};
    j.depart_ = q_.depart_;
    j.elapsed_ = switch_labels_[id].e_;
    j.boardings_ = switch_labels_[id].b_;

    while (switch_labels_[id].kind_ != mc_switch_label::kind::kOrigin) {
      auto const& l = switch_labels_[id];
      auto& leg = j.legs_.emplace_back();
      leg.to_ = l.stop_;
      leg.arrive_ = l.e_;
      if (l.kind_ == mc_switch_label::kind::kLink) {
        auto const& tail = switch_labels_[l.ref_];
        auto const& arc = g_.links_of(tail.stop_)[l.link_off_];
        leg.kind_ = journey_leg::kind::kLink;
        leg.mode_ = arc.mode_;
        leg.from_ = tail.stop_;
        leg.depart_ = tail.e_;
        leg.link_ = arc.link_;
        id = l.ref_;
      } else {
        leg.kind_ = journey_leg::kind::kRide;
        auto dl = l.ref_;
        while (true) {
          auto const& x = departure_labels_[dl];
          leg.connections_.push_back(x.c_);
          if (x.kind_ == mc_departure_label::kind::kBoard) {
            leg.depart_ = x.e_;
            id = x.ref_;
            break;
          }
          dl = x.ref_;
        }
        std::reverse(begin(leg.connections_), end(leg.connections_));
        auto const& first = g_.node(leg.connections_.front());
        leg.mode_ = first.mode_;
        leg.vehicle_ = first.vehicle_;
        leg.from_ = first.from_;
      }
    }
    std::reverse(begin(j.legs_), end(j.legs_));
    return j;
  }

  mdtm_graph const& g_;
  query_request const& q_;
  double p_;
  lower_bound_table const* lb_;
  elapsed_t limit_;

  std::vector<mc_switch_label> switch_labels_;
  std::vector<mc_departure_label> departure_labels_;
  std::vector<std::vector<std::uint32_t>> switch_bags_;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> departure_bags_;
  std::priority_queue<mc_pq_entry, std::vector<mc_pq_entry>, mc_pq_after> pq_;
  std::vector<std::uint32_t> targets_;
  search_stats stats_;
};

}  // namespace

pareto_set multicriteria(mdtm_graph const& g, query_request const& q,
                         double const p, lower_bound_table const* lb) {
  check_request(g, q);
  if (!(p >= 1.0)) {
    throw validation_error{fmt::format("threshold p = {} must be >= 1", p)};
  }
  if (lb != nullptr && lb->n_stops() != g.n_switch_nodes()) {
    throw error{"lower bound table does not match the graph"};
  }
  return mc_search{g, q, p, lb}.run();
}

std::optional<journey> min_transfers(mdtm_graph const& g,
                                     query_request const& q, double const p,
                                     lower_bound_table const* lb) {
  auto set = multicriteria(g, q, p, lb);
  if (set.journeys_.empty()) {
    return std::nullopt;
  }
  return std::move(set.journeys_.back());
}

std::optional<std::string> check_journey(timetable const& tt,
                                         query_request const& q,
                                         journey const& j) {
  auto const p = tt.period_;
  auto next = std::vector<connection_idx_t>(tt.connections_.size(),
                                            connection_idx_t::invalid());
  for (auto const& it : tt.itineraries()) {
    for (auto i = 1U; i < it.size(); ++i) {
      next[to_idx(it[i - 1U])] = it[i];
    }
  }

  auto cur = q.from_;
  auto t = elapsed_t{0};
  auto boardings = std::uint32_t{0U};
  for (auto li = 0U; li != j.legs_.size(); ++li) {
    auto const& leg = j.legs_[li];
    if (leg.from_ != cur) {
      return fmt::format("leg {} starts at stop {}, expected {}", li,
                         leg.from_.v_, cur.v_);
    }
    if (leg.depart_ < t) {
      return fmt::format("leg {} departs at {} before arriving at {}", li,
                         leg.depart_, t);
    }
    if (!q.modes_.contains(leg.mode_)) {
      return fmt::format("leg {} uses an unselected mode", li);
    }

    if (leg.kind_ == journey_leg::kind::kLink) {
      if (!leg.link_.valid() || to_idx(leg.link_) >= tt.links_.size()) {
        return fmt::format("leg {} references an unknown link", li);
      }
      auto const& l = tt.links_[to_idx(leg.link_)];
      if (l.from_ != leg.from_ || l.to_ != leg.to_ || l.mode_ != leg.mode_) {
        return fmt::format("leg {} does not match link {}", li, leg.link_.v_);
      }
      if (leg.arrive_ != leg.depart_ + l.duration_.v_) {
        return fmt::format("leg {} link duration mismatch", li);
      }
    } else {
      ++boardings;
      if (cur != q.from_ &&
          leg.depart_ < t + tt.stops_[to_idx(cur)].transfer_time_.v_) {
        return fmt::format("leg {} boards {} after arriving at {}, transfer "
                           "time at stop {} is {}",
                           li, leg.depart_, t, tt.stops_[to_idx(cur)].id_,
                           tt.stops_[to_idx(cur)].transfer_time_.v_);
      }
      if (leg.connections_.empty()) {
        return fmt::format("ride leg {} has no connections", li);
      }
      auto e = leg.depart_;
      auto prev = connection_idx_t::invalid();
      for (auto const c : leg.connections_) {
        if (to_idx(c) >= tt.connections_.size()) {
          return fmt::format("leg {} references an unknown connection", li);
        }
        auto const& conn = tt.connections_[to_idx(c)];
        if (conn.vehicle_ != leg.vehicle_ ||
            tt.vehicles_[to_idx(conn.vehicle_)].mode_ != leg.mode_) {
          return fmt::format("leg {} connection {} has another vehicle/mode",
                             li, conn.id_);
        }
        if (!prev.valid()) {
          if (conn.from_ != leg.from_) {
            return fmt::format("leg {} first connection starts elsewhere", li);
          }
          if (normalize(q.depart_.v_ + e, p) != conn.dep_) {
            return fmt::format("leg {} departs at {} but connection {} leaves "
                               "at {}",
                               li, format_time(normalize(q.depart_.v_ + e, p)),
                               conn.id_, format_time(conn.dep_));
          }
        } else {
          if (next[to_idx(prev)] != c) {
            return fmt::format("leg {} connection {} does not follow {}", li,
                               conn.id_, tt.connections_[to_idx(prev)].id_);
          }
          e += cyclic_delta(tt.connections_[to_idx(prev)].arr_, conn.dep_, p).v_;
        }
        e += tt.travel_time(conn).v_;
        prev = c;
      }
      auto const& last = tt.connections_[to_idx(prev)];
      if (last.to_ != leg.to_ || e != leg.arrive_) {
        return fmt::format("leg {} arrives at stop {} elapsed {}, recorded "
                           "stop {} elapsed {}",
                           li, last.to_.v_, e, leg.to_.v_, leg.arrive_);
      }
    }
    cur = leg.to_;
    t = leg.arrive_;
  }

  if (cur != q.to_) {
    return fmt::format("journey ends at stop {}, target is {}", cur.v_,
                       q.to_.v_);
  }
  if (t != j.elapsed_) {
    return fmt::format("journey elapsed {} but last leg arrives at {}",
                       j.elapsed_, t);
  }
  if (boardings != j.boardings_) {
    return fmt::format("journey reports {} boardings, has {} rides",
                       j.boardings_, boardings);
  }
  return std::nullopt;
}

namespace {

nlohmann::json journey_json(timetable const& tt, journey const& j) {
  using nlohmann::json;
  auto const at = [&](elapsed_t const e) {
    return format_time(normalize(j.depart_.v_ + e, tt.period_));
  };
  auto legs = json::array();
  for (auto const& l : j.legs_) {
    auto jl = json{{"kind", l.kind_ == journey_leg::kind::kRide
                                ? std::string{"ride"}
                                : tt.modes_.name(l.mode_)},
                   {"mode", tt.modes_.name(l.mode_)},
                   {"from", tt.stops_[to_idx(l.from_)].id_},
                   {"to", tt.stops_[to_idx(l.to_)].id_},
                   {"depart", at(l.depart_)},
                   {"arrive", at(l.arrive_)}};
    if (l.kind_ == journey_leg::kind::kRide) {
      jl["vehicle"] = tt.vehicles_[to_idx(l.vehicle_)].id_;
      auto ids = json::array();
      for (auto const c : l.connections_) {
        ids.push_back(tt.connections_[to_idx(c)].id_);
      }
      jl["connections"] = std::move(ids);
    }
    legs.push_back(std::move(jl));
  }
  return json{{"result", "journey"},
              {"depart", format_time(j.depart_)},
              {"arrival", format_time(j.arrival(tt.period_))},
              {"elapsed_s", j.elapsed_},
              {"boardings", j.boardings_},
              {"transfers", j.transfers()},
              {"legs", std::move(legs)}};
}

}  // namespace

std::string journey_to_json(timetable const& tt, journey const& j) {
  return journey_json(tt, j).dump();
}

std::string pareto_to_json(timetable const& tt, pareto_set const& s) {
  using nlohmann::json;
  if (s.journeys_.empty()) {
    return json{{"result", "none"}}.dump();
  }
  auto journeys = json::array();
  for (auto const& j : s.journeys_) {
    journeys.push_back(journey_json(tt, j));
  }
  return json{{"result", "pareto"},
              {"fastest_s", s.fastest_},
              {"journeys", std::move(journeys)}}
      .dump();
}

}  // namespace mdtm
