#include "mdtm/links.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <queue>
#include <unordered_map>

#include "fmt/core.h"

#include "mdtm/csv.h"

namespace mdtm {

namespace {

duration to_duration(double const meters, double const speed_mps) {
  return duration{std::max(
      1, static_cast<std::int32_t>(std::ceil(meters / speed_mps - 1e-9)))};
}

void sort_links(std::vector<unrestricted_link>& links) {
  std::sort(begin(links), end(links), [](auto const& a, auto const& b) {
    return std::tie(a.from_, a.to_, a.mode_, a.duration_) <
           std::tie(b.from_, b.to_, b.mode_, b.duration_);
  });
}

std::vector<unrestricted_link> haversine_links(
    timetable const& tt, spatial_index const& idx, double const speed_mps,
    duration const cap, mode const m, bool const ev_only) {
  auto links = std::vector<unrestricted_link>{};
  auto const radius = speed_mps * cap.v_;
  for (auto i = 0U; i != tt.stops_.size(); ++i) {
    auto const& a = tt.stops_[i];
    if (ev_only && !a.is_ev_station_) {
      continue;
    }
    auto const center = geo_point{a.lat_, a.lon_};
    for (auto const j : idx.within(center, radius)) {
      auto const& b = tt.stops_[j];
      if (j == i || (ev_only && !b.is_ev_station_)) {
        continue;
      }
      auto const d = to_duration(haversine_m(center, {b.lat_, b.lon_}),
                                 speed_mps);
      if (d <= cap) {
        links.push_back({stop_idx_t{i}, stop_idx_t{j}, d, m});
      }
    }
  }
  sort_links(links);
  return links;
}

// Bounded Dijkstra over the network from every attached stop.
std::vector<unrestricted_link> network_links(
    timetable const& tt, std::vector<network_edge> const& edges,
    double const speed_mps, duration const cap, mode const m,
    bool const ev_only) {
  auto node_idx = std::unordered_map<std::string, std::uint32_t>{};
  auto const get = [&](std::string const& id) {
    return node_idx.emplace(id, static_cast<std::uint32_t>(node_idx.size()))
        .first->second;
  };
  auto adj = std::vector<std::vector<std::pair<std::uint32_t, double>>>{};
  for (auto const& e : edges) {
    auto const a = get(e.from_);
    auto const b = get(e.to_);
    adj.resize(node_idx.size());
    adj[a].emplace_back(b, e.length_m_);
    adj[b].emplace_back(a, e.length_m_);
  }

  auto node_stop = std::vector<std::optional<std::uint32_t>>(node_idx.size());
  auto stop_node = std::vector<std::optional<std::uint32_t>>(tt.stops_.size());
  for (auto i = 0U; i != tt.stops_.size(); ++i) {
    if (ev_only && !tt.stops_[i].is_ev_station_) {
      continue;
    }
    if (auto const it = node_idx.find(tt.stops_[i].id_); it != end(node_idx)) {
      node_stop[it->second] = i;
      stop_node[i] = it->second;
    }
  }

  auto const max_len = speed_mps * cap.v_;
  auto links = std::vector<unrestricted_link>{};
  auto dist = std::vector<double>(node_idx.size());
  for (auto s = 0U; s != tt.stops_.size(); ++s) {
    if (!stop_node[s].has_value()) {
      continue;
    }
    std::fill(begin(dist), end(dist), std::numeric_limits<double>::infinity());
    using entry = std::pair<double, std::uint32_t>;
    auto pq = std::priority_queue<entry, std::vector<entry>, std::greater<>>{};
    dist[*stop_node[s]] = 0.0;
    pq.emplace(0.0, *stop_node[s]);
    while (!pq.empty()) {
      auto const [d, n] = pq.top();
      pq.pop();
      if (d != dist[n]) {
        continue;
      }
      if (auto const t = node_stop[n]; t.has_value() && *t != s) {
        if (auto const dur = to_duration(d, speed_mps); dur <= cap) {
          links.push_back({stop_idx_t{s}, stop_idx_t{*t}, dur, m});
        }
      }
      for (auto const& [to, len] : adj[n]) {
        if (d + len < dist[to] && d + len <= max_len + 1e-6) {
          dist[to] = d + len;
          pq.emplace(d + len, to);
        }
      }
    }
  }
  sort_links(links);
  return links;
}

}  // namespace

void check_link_config(link_config const& cfg) {
  if (!(cfg.walk_speed_mps_ > 0.0) || !(cfg.ev_speed_kmh_ > 0.0) ||
      cfg.max_walk_.v_ <= 0 || cfg.max_ev_.v_ <= 0) {
    throw validation_error{"link speeds and caps must be positive"};
  }
}

std::vector<network_edge> read_edge_list(std::filesystem::path const& p) {
  auto const t = read_csv(p, false);
  auto edges = std::vector<network_edge>{};
  for (auto const& r : t.rows_) {
    if (r.fields_.size() < 3U) {
      throw parse_error{fmt::format("{}:{}: expected node_id,node_id,length_m",
                                    t.name_, r.line_)};
    }
    auto const& len = r.fields_[2];
    auto v = 0.0;
    auto const [ptr, ec] = std::from_chars(len.data(), len.data() + len.size(), v);
    if (ec != std::errc{} || ptr != len.data() + len.size()) {
      if (r.line_ == 1U) {
        continue;  // header
      }
      throw parse_error{
          fmt::format("{}:{}: bad length \"{}\"", t.name_, r.line_, len)};
    }
    if (v < 0.0) {
      throw parse_error{
          fmt::format("{}:{}: negative length", t.name_, r.line_)};
    }
    edges.push_back({r.fields_[0], r.fields_[1], v});
  }
  return edges;
}

spatial_index make_stop_index(timetable const& tt) {
  auto points = std::vector<geo_point>{};
  points.reserve(tt.stops_.size());
  for (auto const& s : tt.stops_) {
    points.push_back({s.lat_, s.lon_});
  }
  return spatial_index{points};
}

std::vector<unrestricted_link> generate_walk_links(
    timetable const& tt, spatial_index const& idx, link_config const& cfg,
    std::vector<network_edge> const* pedestrian) {
  check_link_config(cfg);
  return pedestrian == nullptr
             ? haversine_links(tt, idx, cfg.walk_speed_mps_, cfg.max_walk_,
                               modes::kWalk, false)
             : network_links(tt, *pedestrian, cfg.walk_speed_mps_,
                             cfg.max_walk_, modes::kWalk, false);
}

void mark_ev_stations(timetable& tt, std::vector<std::string> const& ids) {
  for (auto const& id : ids) {
    auto const s = tt.find_stop(id);
    if (!s.has_value()) {
      throw validation_error{fmt::format("unknown EV station {}", id)};
    }
    tt.stops_[to_idx(*s)].is_ev_station_ = true;
  }
}

std::vector<unrestricted_link> generate_ev_links(
    timetable const& tt, spatial_index const& idx, link_config const& cfg,
    std::vector<network_edge> const* road) {
  check_link_config(cfg);
  auto const speed = cfg.ev_speed_kmh_ / 3.6;
  return road == nullptr
             ? haversine_links(tt, idx, speed, cfg.max_ev_, modes::kEv, true)
             : network_links(tt, *road, speed, cfg.max_ev_, modes::kEv, true);
}

std::vector<unrestricted_link> close_links(
    std::vector<unrestricted_link> const& links, std::size_t const n_stops,
    link_config const& cfg) {
  auto by_mode = std::map<mode, std::vector<unrestricted_link>>{};
  for (auto const& l : links) {
    by_mode[l.mode_].push_back(l);
  }

  auto out = std::vector<unrestricted_link>{};
  for (auto const& [m, ls] : by_mode) {
    auto const cap = m == modes::kWalk ? cfg.max_walk_.v_
                     : m == modes::kEv ? cfg.max_ev_.v_
                                       : std::numeric_limits<std::int32_t>::max();
    auto adj = std::vector<std::vector<std::pair<std::uint32_t, std::int32_t>>>(
        n_stops);
    auto sources = std::vector<std::uint32_t>{};
    for (auto const& l : ls) {
      adj[to_idx(l.from_)].emplace_back(to_idx(l.to_), l.duration_.v_);
      sources.push_back(to_idx(l.from_));
    }
    std::sort(begin(sources), end(sources));
    sources.erase(std::unique(begin(sources), end(sources)), end(sources));

    auto dist = std::vector<std::int64_t>(n_stops);
    for (auto const s : sources) {
      std::fill(begin(dist), end(dist), std::numeric_limits<std::int64_t>::max());
      using entry = std::pair<std::int64_t, std::uint32_t>;
      auto pq = std::priority_queue<entry, std::vector<entry>, std::greater<>>{};
      dist[s] = 0;
      pq.emplace(0, s);
      while (!pq.empty()) {
        auto const [d, n] = pq.top();
        pq.pop();
        if (d != dist[n]) {
          continue;
        }
        if (n != s) {
          out.push_back({stop_idx_t{s}, stop_idx_t{n},
                         duration{static_cast<std::int32_t>(d)}, m});
        }
        for (auto const& [to, w] : adj[n]) {
          if (d + w < dist[to] && d + w <= cap) {
            dist[to] = d + w;
            pq.emplace(d + w, to);
          }
        }
      }
    }
  }
  sort_links(out);
  return out;
}

}  // namespace mdtm
