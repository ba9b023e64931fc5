#include "mdtm/oracle.h"

#include <algorithm>
#include <deque>
#include <queue>
#include <tuple>

#include "fmt/core.h"

namespace mdtm::oracle {

namespace {

void check_stops(timetable const& tt, query_request const& q) {
  if (!q.from_.valid() || to_idx(q.from_) >= tt.stops_.size() ||
      !q.to_.valid() || to_idx(q.to_) >= tt.stops_.size()) {
    throw error{"oracle: unknown stop"};
  }
}

elapsed_t transfer_at(timetable const& tt, query_request const& q,
                      stop_idx_t const s) {
  return s == q.from_ ? 0 : tt.stops_[to_idx(s)].transfer_time_.v_;
}

}  // namespace

event_graph::event_graph(timetable const& tt, query_request const& q)
    : by_stop_(tt.stops_.size()), horizon_{2 * elapsed_t{tt.period_.v_}} {
  auto const T = elapsed_t{tt.period_.v_};
  auto const mod = [&](elapsed_t const x) { return ((x % T) + T) % T; };

  auto const n = tt.connections_.size();
  auto first_event = std::vector<std::uint32_t>(n, kNoEvent);
  auto n_events = std::vector<std::uint32_t>(n, 0U);
  auto first_dep = std::vector<elapsed_t>(n, 0);

  for (auto i = 0U; i != n; ++i) {
    auto const& c = tt.connections_[i];
    if (!q.modes_.contains(tt.vehicles_[to_idx(c.vehicle_)].mode_)) {
      continue;
    }
    auto const travel = mod(elapsed_t{c.arr_.v_} - c.dep_.v_);
    first_dep[i] = mod(elapsed_t{c.dep_.v_} - q.depart_.v_);
    first_event[i] = static_cast<std::uint32_t>(events_.size());
    for (auto d = first_dep[i]; d <= horizon_; d += T) {
      events_.push_back({connection_idx_t{i}, d, d + travel, kNoEvent});
      ++n_events[i];
    }
  }

  // Successor of each connection within its vehicle's itinerary.
  auto succ = std::vector<std::uint32_t>(n, kNoEvent);
  auto last_of_vehicle = std::vector<std::uint32_t>(tt.vehicles_.size(),
                                                    kNoEvent);
  for (auto i = 0U; i != n; ++i) {
    auto& last = last_of_vehicle[to_idx(tt.connections_[i].vehicle_)];
    if (last != kNoEvent) {
      succ[last] = i;
    }
    last = i;
  }

  for (auto& ev : events_) {
    auto const i = to_idx(ev.connection_);
    auto const j = succ[i];
    if (j == kNoEvent || first_event[j] == kNoEvent) {
      continue;
    }
    auto const dwell =
        mod(elapsed_t{tt.connections_[j].dep_.v_} - tt.connections_[i].arr_.v_);
    auto const dep = ev.arr_ + dwell;
    auto const k = (dep - first_dep[j]) / T;
    if ((dep - first_dep[j]) % T != 0) {
      throw error{"oracle: inconsistent vehicle continuation"};
    }
    if (k < n_events[j]) {
      ev.next_ = first_event[j] + static_cast<std::uint32_t>(k);
    }
  }

  for (auto e = 0U; e != events_.size(); ++e) {
    by_stop_[to_idx(tt.connections_[to_idx(events_[e].connection_)].from_)]
        .push_back(e);
  }
  for (auto& v : by_stop_) {
    std::sort(begin(v), end(v), [&](std::uint32_t const a, std::uint32_t const b) {
      return std::tie(events_[a].dep_, a) < std::tie(events_[b].dep_, b);
    });
  }
}

std::optional<elapsed_t> earliest_arrival(timetable const& tt,
                                          query_request const& q) {
  check_stops(tt, q);
  auto const eg = event_graph{tt, q};

  // (time, is_event, id)
  using item = std::tuple<elapsed_t, bool, std::uint32_t>;
  auto pq = std::priority_queue<item, std::vector<item>, std::greater<>>{};
  auto stop_done = std::vector<bool>(tt.stops_.size(), false);
  auto event_seen = std::vector<bool>(eg.events_.size(), false);

  auto const reach_event = [&](std::uint32_t const e) {
    if (e != kNoEvent && !event_seen[e] && eg.events_[e].dep_ <= eg.horizon_) {
      event_seen[e] = true;
      pq.emplace(eg.events_[e].dep_, true, e);
    }
  };

  pq.emplace(0, false, to_idx(q.from_));
  while (!pq.empty()) {
    auto const [t, is_event, id] = pq.top();
    pq.pop();
    if (is_event) {
      auto const& ev = eg.events_[id];
      if (ev.arr_ <= eg.horizon_) {
        auto const to = tt.connections_[to_idx(ev.connection_)].to_;
        if (!stop_done[to_idx(to)]) {
          pq.emplace(ev.arr_, false, to_idx(to));
        }
      }
      reach_event(ev.next_);
      continue;
    }

    if (stop_done[id]) {
      continue;
    }
    stop_done[id] = true;
    auto const s = stop_idx_t{id};
    if (s == q.to_) {
      return t;
    }

    auto const ready = t + transfer_at(tt, q, s);
    for (auto const e : eg.by_stop_[id]) {
      if (eg.events_[e].dep_ >= ready) {
        reach_event(e);
      }
    }
    for (auto const& l : tt.links_) {
      if (l.from_ == s && q.modes_.contains(l.mode_) &&
          t + l.duration_.v_ <= eg.horizon_ && !stop_done[to_idx(l.to_)]) {
        pq.emplace(t + l.duration_.v_, false, to_idx(l.to_));
      }
    }
  }
  return std::nullopt;
}

std::vector<label> pareto(timetable const& tt, query_request const& q,
                          double const p) {
  check_stops(tt, q);
  if (tt.stops_.size() > kMaxParetoStops ||
      tt.connections_.size() > kMaxParetoConnections) {
    throw error{fmt::format(
        "oracle: instance too large for the Pareto search ({} stops, {} "
        "connections)",
        tt.stops_.size(), tt.connections_.size())};
  }
  auto const eg = event_graph{tt, q};

  auto bags = std::vector<std::vector<label>>(tt.stops_.size());
  auto event_best = std::vector<std::uint32_t>(eg.events_.size(), kNoEvent);

  // Work items: stop labels (stop, label) and events (event, boardings).
  struct item {
    bool is_event_;
    std::uint32_t id_;
    label l_;
  };
  auto queue = std::deque<item>{};

  auto const add_stop_label = [&](stop_idx_t const s, label const l) {
    if (l.elapsed_ > eg.horizon_) {
      return;
    }
    auto& bag = bags[to_idx(s)];
    for (auto const& x : bag) {
      if (x.elapsed_ <= l.elapsed_ && x.boardings_ <= l.boardings_) {
        return;
      }
    }
    std::erase_if(bag, [&](label const& x) {
      return l.elapsed_ <= x.elapsed_ && l.boardings_ <= x.boardings_;
    });
    bag.push_back(l);
    queue.push_back({false, to_idx(s), l});
  };

  auto const add_event = [&](std::uint32_t const e, std::uint32_t const b) {
    if (e == kNoEvent || eg.events_[e].dep_ > eg.horizon_ ||
        (event_best[e] != kNoEvent && event_best[e] <= b)) {
      return;
    }
    event_best[e] = b;
    queue.push_back({true, e, {eg.events_[e].dep_, b}});
  };

  add_stop_label(q.from_, {0, 0U});
  while (!queue.empty()) {
    auto const it = queue.front();
    queue.pop_front();

    if (it.is_event_) {
      if (event_best[it.id_] < it.l_.boardings_) {
        continue;
      }
      auto const& ev = eg.events_[it.id_];
      add_stop_label(tt.connections_[to_idx(ev.connection_)].to_,
                     {ev.arr_, it.l_.boardings_});
      add_event(ev.next_, it.l_.boardings_);
      continue;
    }

    auto const& bag = bags[it.id_];
    if (std::find(begin(bag), end(bag), it.l_) == end(bag)) {
      continue;  // dominated meanwhile
    }
    auto const s = stop_idx_t{it.id_};
    auto const ready = it.l_.elapsed_ + transfer_at(tt, q, s);
    for (auto const e : eg.by_stop_[it.id_]) {
      if (eg.events_[e].dep_ >= ready) {
        add_event(e, it.l_.boardings_ + 1U);
      }
    }
    for (auto const& l : tt.links_) {
      if (l.from_ == s && q.modes_.contains(l.mode_)) {
        add_stop_label(l.to_, {it.l_.elapsed_ + l.duration_.v_,
                               it.l_.boardings_});
      }
    }
  }

  auto result = bags[to_idx(q.to_)];
  if (result.empty()) {
    return result;
  }
  std::sort(begin(result), end(result), [](label const& a, label const& b) {
    return a.elapsed_ < b.elapsed_;
  });
  auto const threshold =
      std::min(eg.horizon_, elapsed_threshold(p, result.front().elapsed_));
  std::erase_if(result,
                [&](label const& l) { return l.elapsed_ > threshold; });
  return result;
}

}  // namespace mdtm::oracle
