#include "mdtm/timetable.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "fmt/core.h"

namespace mdtm {

elapsed_t elapsed_threshold(double const p, elapsed_t const fastest) {
  // Relative slack: 1.2 * 100 gives 120, not 119.
  auto const x = p * static_cast<double>(fastest);
  return static_cast<elapsed_t>(std::floor(x + 1e-9 * std::max(1.0, x)));
}

std::string format_time(time_point const t) {
  return fmt::format("{:02}:{:02}:{:02}", t.v_ / 3600, (t.v_ / 60) % 60,
                     t.v_ % 60);
}

std::string format_elapsed(elapsed_t const e) {
  return fmt::format("{:02}:{:02}:{:02}", e / 3600, (e / 60) % 60, e % 60);
}

std::int64_t parse_time(std::string_view s) {
  auto parse_int = [&](std::string_view x) {
    auto v = std::int64_t{};
    auto const [ptr, ec] = std::from_chars(x.data(), x.data() + x.size(), v);
    if (ec != std::errc{} || ptr != x.data() + x.size() || x.empty()) {
      throw parse_error{fmt::format("invalid time \"{}\"", s)};
    }
    return v;
  };

  while (!s.empty() && s.front() == ' ') {
    s.remove_prefix(1);
  }
  while (!s.empty() && s.back() == ' ') {
    s.remove_suffix(1);
  }

  auto total = std::int64_t{0};
  auto n_parts = 0;
  auto rest = s;
  while (true) {
    auto const colon = rest.find(':');
    auto const part = rest.substr(0, colon);
    total = total * 60 + parse_int(part);
    ++n_parts;
    if (colon == std::string_view::npos) {
      break;
    }
    rest.remove_prefix(colon + 1);
  }
  if (n_parts > 3) {
    throw parse_error{fmt::format("invalid time \"{}\"", s)};
  }
  if (n_parts == 2) {
    total *= 60;
  }
  return total;
}

mode_registry::mode_registry() : names_{"bus", "train", "tram", "walk", "ev"} {}

std::optional<mode> mode_registry::find(std::string_view const name) const {
  auto const it = std::find(begin(names_), end(names_), name);
  if (it == end(names_)) {
    return std::nullopt;
  }
  return mode{static_cast<std::uint8_t>(std::distance(begin(names_), it))};
}

mode mode_registry::get_or_add(std::string_view const name) {
  if (auto const m = find(name); m.has_value()) {
    return *m;
  }
  if (names_.size() >= modes::kMaxModes) {
    throw error{fmt::format("too many modes (adding \"{}\")", name)};
  }
  names_.emplace_back(name);
  return mode{static_cast<std::uint8_t>(names_.size() - 1U)};
}

std::string const& mode_registry::name(mode const m) const {
  return names_.at(m.v_);
}

mode_set mode_registry::parse_set(std::string_view s) const {
  auto set = mode_set{};
  while (!s.empty()) {
    auto const comma = s.find(',');
    auto const name = s.substr(0, comma);
    if (name == "all") {
      for (auto i = 0U; i != names_.size(); ++i) {
        set.insert(mode{static_cast<std::uint8_t>(i)});
      }
    } else if (!name.empty()) {
      auto const m = find(name);
      if (!m.has_value()) {
        throw error{fmt::format("unknown mode \"{}\"", name)};
      }
      set.insert(*m);
    }
    if (comma == std::string_view::npos) {
      break;
    }
    s.remove_prefix(comma + 1);
  }
  return set;
}

std::vector<std::vector<connection_idx_t>> timetable::itineraries() const {
  auto it = std::vector<std::vector<connection_idx_t>>(vehicles_.size());
  for (auto i = 0U; i != connections_.size(); ++i) {
    auto const v = connections_[i].vehicle_;
    if (v.valid() && to_idx(v) < vehicles_.size()) {
      it[to_idx(v)].emplace_back(i);
    }
  }
  return it;
}

std::optional<stop_idx_t> timetable::find_stop(std::string_view id) const {
  for (auto i = 0U; i != stops_.size(); ++i) {
    if (stops_[i].id_ == id) {
      return stop_idx_t{i};
    }
  }
  return std::nullopt;
}

std::optional<connection_idx_t> timetable::find_connection(
    std::string_view id) const {
  for (auto i = 0U; i != connections_.size(); ++i) {
    if (connections_[i].id_ == id) {
      return connection_idx_t{i};
    }
  }
  return std::nullopt;
}

id_lookup::id_lookup(timetable const& tt) {
  stops_.reserve(tt.stops_.size());
  for (auto i = 0U; i != tt.stops_.size(); ++i) {
    stops_.emplace(tt.stops_[i].id_, stop_idx_t{i});
  }
  connections_.reserve(tt.connections_.size());
  for (auto i = 0U; i != tt.connections_.size(); ++i) {
    connections_.emplace(tt.connections_[i].id_, connection_idx_t{i});
  }
}

std::optional<stop_idx_t> id_lookup::stop(std::string_view id) const {
  auto const it = stops_.find(std::string{id});
  return it == end(stops_) ? std::nullopt : std::optional{it->second};
}

std::optional<connection_idx_t> id_lookup::connection(
    std::string_view id) const {
  auto const it = connections_.find(std::string{id});
  return it == end(connections_) ? std::nullopt : std::optional{it->second};
}

std::string validation_report::to_string() const {
  auto s = std::string{};
  for (auto const& i : issues_) {
    s += fmt::format("{}: {}\n", i.entity_, i.message_);
  }
  return s;
}

validation_report validate_timetable(timetable const& tt) {
  using kind = validation_issue::kind;

  auto r = validation_report{};
  auto const report = [&](kind const k, std::string entity, std::string msg) {
    r.issues_.push_back({k, std::move(entity), std::move(msg)});
  };

  auto const p = tt.period_;
  auto const n_stops = tt.stops_.size();
  auto const stop_ok = [&](stop_idx_t const s) {
    return s.valid() && to_idx(s) < n_stops;
  };
  auto const in_period = [&](time_point const t) {
    return t.v_ >= 0 && t.v_ < p.v_;
  };

  for (auto const& s : tt.stops_) {
    if (s.transfer_time_.v_ < 0 || s.transfer_time_.v_ >= p.v_) {
      report(kind::kBadTransferTime, fmt::format("stop {}", s.id_),
             fmt::format("transfer time {} outside [0, {})",
                         s.transfer_time_.v_, p.v_));
    }
  }

  for (auto const& v : tt.vehicles_) {
    if (v.mode_.v_ >= tt.modes_.names_.size()) {
      report(kind::kDanglingReference, fmt::format("vehicle {}", v.id_),
             fmt::format("unknown mode {}", v.mode_.v_));
    }
  }

  for (auto const& c : tt.connections_) {
    auto const entity = fmt::format("connection {}", c.id_);
    if (!c.vehicle_.valid() || to_idx(c.vehicle_) >= tt.vehicles_.size()) {
      report(kind::kDanglingReference, entity, "unknown vehicle");
    }
    if (!stop_ok(c.from_)) {
      report(kind::kDanglingReference, entity, "unknown departure stop");
    }
    if (!stop_ok(c.to_)) {
      report(kind::kDanglingReference, entity, "unknown arrival stop");
    }
    if (stop_ok(c.from_) && c.from_ == c.to_) {
      report(kind::kSameStop, entity, "departure stop equals arrival stop");
    }
    if (!in_period(c.dep_) || !in_period(c.arr_)) {
      report(kind::kTimeOutOfRange, entity,
             fmt::format("times {}/{} outside [0, {})", c.dep_.v_, c.arr_.v_,
                         p.v_));
    }
  }

  for (auto const& itinerary : tt.itineraries()) {
    for (auto i = 1U; i < itinerary.size(); ++i) {
      auto const& a = tt.connections_[to_idx(itinerary[i - 1])];
      auto const& b = tt.connections_[to_idx(itinerary[i])];
      if (a.to_ != b.from_) {
        report(kind::kNotChainable, fmt::format("connection {}", b.id_),
               fmt::format("departs from a different stop than connection {} "
                           "of the same vehicle arrives at",
                           a.id_));
      }
      auto const span = static_cast<std::int64_t>(tt.travel_time(a).v_) +
                        cyclic_delta(a.arr_, b.dep_, p).v_;
      if (span >= p.v_) {
        report(kind::kVehicleArcTooLong, fmt::format("connection {}", b.id_),
               fmt::format("{} after the departure of connection {} (period "
                           "{})",
                           span, a.id_, p.v_));
      }
    }
  }

  for (auto i = 0U; i != tt.links_.size(); ++i) {
    auto const& l = tt.links_[i];
    auto const entity = fmt::format("link {}", i);
    if (!stop_ok(l.from_) || !stop_ok(l.to_)) {
      report(kind::kDanglingReference, entity, "unknown stop");
    } else if (l.from_ == l.to_) {
      report(kind::kSameStop, entity, "link from a stop to itself");
    }
    if (l.duration_.v_ <= 0 || l.duration_.v_ >= p.v_) {
      report(kind::kBadLinkDuration, entity,
             fmt::format("duration {} outside (0, {})", l.duration_.v_, p.v_));
    }
  }

  return r;
}

void ensure_valid(timetable const& tt) {
  auto const r = validate_timetable(tt);
  if (!r.ok()) {
    throw validation_error{fmt::format("invalid timetable:\n{}", r.to_string())};
  }
}

void apply_delay(timetable& tt, connection_idx_t const c0,
                 duration const delta) {
  if (!c0.valid() || to_idx(c0) >= tt.connections_.size()) {
    throw error{fmt::format("unknown connection {}", to_idx(c0))};
  }
  auto const p = tt.period_;
  if (delta.v_ < 0 || delta.v_ >= p.v_) {
    throw validation_error{
        fmt::format("delay {} outside [0, {})", delta.v_, p.v_)};
  }

  auto& first = tt.connections_[to_idx(c0)];
  auto affected = std::vector<connection*>{};
  auto seen = false;
  for (auto& c : tt.connections_) {
    if (c.vehicle_ != first.vehicle_) {
      continue;
    }
    if (&c == &first) {
      seen = true;
    } else if (seen) {
      affected.push_back(&c);
    }
  }

  auto const exceeds = [&](std::int64_t const w) {
    return w + delta.v_ >= p.v_;
  };
  if (exceeds(tt.travel_time(first).v_) ||
      (!affected.empty() &&
       exceeds(cyclic_delta(first.dep_, affected.front()->dep_, p).v_))) {
    throw validation_error{fmt::format(
        "delay {} on connection {} exceeds the period", delta.v_, first.id_)};
  }

  first.arr_ = shift(first.arr_, delta, p);
  for (auto* c : affected) {
    c->dep_ = shift(c->dep_, delta, p);
    c->arr_ = shift(c->arr_, delta, p);
  }
}

}  // namespace mdtm
