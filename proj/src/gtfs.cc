#include "mdtm/gtfs.h"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "fmt/core.h"

#include "mdtm/csv.h"

namespace mdtm {

namespace {

csv_table read_required(std::filesystem::path const& dir, char const* name) {
  auto const p = dir / name;
  if (!std::filesystem::exists(p)) {
    throw parse_error{fmt::format("GTFS feed is missing {}", name)};
  }
  return read_csv(p);
}

std::string_view field(csv_table const&, csv_table::row const& r,
                       std::size_t const col) {
  return col < r.fields_.size() ? std::string_view{r.fields_[col]}
                                : std::string_view{};
}

template <typename T>
T parse_number(csv_table const& t, csv_table::row const& r,
               std::size_t const col) {
  auto s = field(t, r, col);
  while (!s.empty() && s.front() == ' ') {
    s.remove_prefix(1U);
  }
  while (!s.empty() && s.back() == ' ') {
    s.remove_suffix(1U);
  }
  auto v = T{};
  auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw parse_error{fmt::format("{}:{}: bad number \"{}\" in column {}",
                                  t.name_, r.line_, s, t.header_[col])};
  }
  return v;
}

std::int64_t parse_gtfs_time(csv_table const& t, csv_table::row const& r,
                             std::size_t const col) {
  auto const s = field(t, r, col);
  if (s.find_first_not_of(' ') == std::string_view::npos) {
    throw parse_error{fmt::format("{}:{}: empty {}", t.name_, r.line_,
                                  t.header_[col])};
  }
  try {
    return parse_time(s);
  } catch (parse_error const& e) {
    throw parse_error{fmt::format("{}:{}: {}", t.name_, r.line_, e.what())};
  }
}

}  // namespace

std::optional<mode> default_route_type_mode(int const route_type) {
  switch (route_type) {
    case 0: return modes::kTram;
    case 1:
    case 2: return modes::kTrain;
    case 3: return modes::kBus;
    default: break;
  }
  if ((route_type >= 100 && route_type <= 199) ||
      (route_type >= 400 && route_type <= 499)) {
    return modes::kTrain;
  }
  if ((route_type >= 200 && route_type <= 299) ||
      (route_type >= 700 && route_type <= 799)) {
    return modes::kBus;
  }
  if (route_type >= 900 && route_type <= 999) {
    return modes::kTram;
  }
  return std::nullopt;
}

gtfs_result parse_gtfs(std::filesystem::path const& dir,
                       gtfs_config const& cfg) {
  if (cfg.period_.v_ <= 0) {
    throw validation_error{"period must be positive"};
  }

  auto r = gtfs_result{};
  auto& tt = r.tt_;
  tt.period_ = cfg.period_;

  auto const stops = read_required(dir, "stops.txt");
  auto const routes = read_required(dir, "routes.txt");
  auto const trips = read_required(dir, "trips.txt");
  auto const stop_times = read_required(dir, "stop_times.txt");

  auto stop_idx = std::unordered_map<std::string, stop_idx_t>{};
  {
    auto const id = stops.required_column("stop_id");
    auto const name = stops.column("stop_name");
    auto const lat = stops.column("stop_lat");
    auto const lon = stops.column("stop_lon");
    for (auto const& row : stops.rows_) {
      auto s = stop{};
      s.id_ = field(stops, row, id);
      s.name_ = name ? std::string{field(stops, row, *name)} : s.id_;
      if (lat && !field(stops, row, *lat).empty()) {
        s.lat_ = parse_number<double>(stops, row, *lat);
      }
      if (lon && !field(stops, row, *lon).empty()) {
        s.lon_ = parse_number<double>(stops, row, *lon);
      }
      s.transfer_time_ = cfg.default_transfer_;
      if (!stop_idx
               .emplace(s.id_, stop_idx_t{static_cast<std::uint32_t>(
                                   tt.stops_.size())})
               .second) {
        throw parse_error{fmt::format("stops.txt:{}: duplicate stop_id {}",
                                      row.line_, s.id_)};
      }
      tt.stops_.emplace_back(std::move(s));
    }
  }

  auto route_mode = std::unordered_map<std::string, mode>{};
  {
    auto const id = routes.required_column("route_id");
    auto const type = routes.required_column("route_type");
    for (auto const& row : routes.rows_) {
      auto const rt = parse_number<int>(routes, row, type);
      auto m = std::optional<mode>{};
      if (auto const it = cfg.route_type_modes_.find(rt);
          it != end(cfg.route_type_modes_)) {
        m = tt.modes_.get_or_add(it->second);
      } else if (m = default_route_type_mode(rt); !m.has_value()) {
        if (cfg.unknown_route_type_mode_.empty()) {
          throw parse_error{fmt::format("routes.txt:{}: unknown route_type {}",
                                        row.line_, rt)};
        }
        m = tt.modes_.get_or_add(cfg.unknown_route_type_mode_);
      }
      route_mode[std::string{field(routes, row, id)}] = *m;
    }
  }

  auto trip_mode = std::unordered_map<std::string, mode>{};
  auto trip_order = std::vector<std::string>{};
  {
    auto const route = trips.required_column("route_id");
    auto const id = trips.required_column("trip_id");
    for (auto const& row : trips.rows_) {
      auto const it = route_mode.find(std::string{field(trips, row, route)});
      if (it == end(route_mode)) {
        throw parse_error{fmt::format("trips.txt:{}: unknown route_id {}",
                                      row.line_, field(trips, row, route))};
      }
      auto const trip = std::string{field(trips, row, id)};
      if (!trip_mode.emplace(trip, it->second).second) {
        throw parse_error{fmt::format("trips.txt:{}: duplicate trip_id {}",
                                      row.line_, trip)};
      }
      trip_order.push_back(trip);
    }
  }

  struct stop_time {
    std::int64_t seq_, arr_, dep_;
    stop_idx_t stop_;
    std::size_t line_;
  };
  auto trip_stop_times =
      std::unordered_map<std::string, std::vector<stop_time>>{};
  {
    auto const trip = stop_times.required_column("trip_id");
    auto const arr = stop_times.required_column("arrival_time");
    auto const dep = stop_times.required_column("departure_time");
    auto const stop = stop_times.required_column("stop_id");
    auto const seq = stop_times.required_column("stop_sequence");
    for (auto const& row : stop_times.rows_) {
      auto const trip_id = std::string{field(stop_times, row, trip)};
      if (!trip_mode.contains(trip_id)) {
        throw parse_error{fmt::format("stop_times.txt:{}: unknown trip_id {}",
                                      row.line_, trip_id)};
      }
      auto const s = stop_idx.find(std::string{field(stop_times, row, stop)});
      if (s == end(stop_idx)) {
        throw parse_error{fmt::format("stop_times.txt:{}: unknown stop_id {}",
                                      row.line_,
                                      field(stop_times, row, stop))};
      }
      auto st = stop_time{parse_number<std::int64_t>(stop_times, row, seq),
                          parse_gtfs_time(stop_times, row, arr),
                          parse_gtfs_time(stop_times, row, dep), s->second,
                          row.line_};
      if (st.dep_ < st.arr_) {
        throw parse_error{fmt::format(
            "stop_times.txt:{}: departure before arrival", row.line_)};
      }
      trip_stop_times[trip_id].push_back(st);
    }
  }

  for (auto const& trip : trip_order) {
    auto it = trip_stop_times.find(trip);
    if (it == end(trip_stop_times) || it->second.size() < 2U) {
      r.warnings_.push_back(
          fmt::format("trip {} has fewer than two stop times, skipped", trip));
      continue;
    }
    auto& sts = it->second;
    std::sort(begin(sts), end(sts),
              [](auto const& a, auto const& b) { return a.seq_ < b.seq_; });

    auto const v = vehicle_idx_t{static_cast<std::uint32_t>(tt.vehicles_.size())};
    auto n_added = 0U;
    for (auto i = 1U; i < sts.size(); ++i) {
      auto const& a = sts[i - 1U];
      auto const& b = sts[i];
      if (a.seq_ == b.seq_) {
        throw parse_error{fmt::format(
            "stop_times.txt:{}: duplicate stop_sequence {} in trip {}",
            b.line_, b.seq_, trip)};
      }
      if (b.arr_ < a.dep_) {
        throw parse_error{fmt::format(
            "stop_times.txt:{}: arrival before previous departure in trip {}",
            b.line_, trip)};
      }
      if (b.arr_ - a.dep_ >= cfg.period_.v_) {
        throw parse_error{fmt::format(
            "stop_times.txt:{}: travel time reaches the period in trip {}",
            b.line_, trip)};
      }
      if (a.stop_ == b.stop_) {
        r.warnings_.push_back(fmt::format(
            "trip {} visits stop {} twice in a row (stop_times.txt:{}), pair "
            "skipped",
            trip, tt.stops_[to_idx(a.stop_)].id_, b.line_));
        continue;
      }
      tt.connections_.push_back(
          {fmt::format("{}:{}", trip, a.seq_), v, a.stop_, b.stop_,
           normalize(a.dep_, cfg.period_), normalize(b.arr_, cfg.period_)});
      ++n_added;
    }
    if (n_added == 0U) {
      r.warnings_.push_back(
          fmt::format("trip {} has no elementary connection, skipped", trip));
      continue;
    }
    tt.vehicles_.push_back({trip, trip_mode.at(trip)});
  }

  if (auto const p = dir / "transfers.txt"; std::filesystem::exists(p)) {
    auto const transfers = read_csv(p);
    auto const from = transfers.required_column("from_stop_id");
    auto const to = transfers.required_column("to_stop_id");
    auto const min_time = transfers.column("min_transfer_time");
    for (auto const& row : transfers.rows_) {
      if (field(transfers, row, from) != field(transfers, row, to) ||
          !min_time.has_value() || field(transfers, row, *min_time).empty()) {
        continue;
      }
      auto const s = stop_idx.find(std::string{field(transfers, row, from)});
      if (s == end(stop_idx)) {
        throw parse_error{fmt::format("transfers.txt:{}: unknown stop_id {}",
                                      row.line_, field(transfers, row, from))};
      }
      tt.stops_[to_idx(s->second)].transfer_time_ =
          duration{parse_number<std::int32_t>(transfers, row, *min_time)};
    }
  }

  ensure_valid(tt);
  return r;
}

}  // namespace mdtm
