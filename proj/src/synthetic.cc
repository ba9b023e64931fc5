#include "mdtm/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fmt/core.h"

#include "mdtm/spatial_index.h"

namespace mdtm {

namespace {

constexpr auto kMetersPerDegree = 111'320.0;
constexpr auto kBaseLat = 52.5;
constexpr auto kBaseLon = 13.4;

double speed_mps(std::string const& mode_name) {
  if (mode_name == "bus") {
    return 7.0;
  }
  if (mode_name == "tram") {
    return 9.0;
  }
  if (mode_name == "train") {
    return 16.0;
  }
  return 10.0;
}

}  // namespace

void check_params(synthetic_params const& p) {
  auto const n_conns = static_cast<std::uint64_t>(p.vehicles_) *
                       p.connections_per_vehicle_;
  if (n_conns != 0U && p.stops_ < 2U) {
    throw validation_error{"connections need at least two stops"};
  }
  if (n_conns > std::numeric_limits<std::uint32_t>::max() / 2U) {
    throw validation_error{"too many connections"};
  }
  if (p.mode_mix_.empty()) {
    throw validation_error{"mode mix is empty"};
  }
  auto sum = 0.0;
  for (auto const& m : p.mode_mix_) {
    if (!(m.share_ >= 0.0)) {
      throw validation_error{fmt::format("negative share for {}", m.mode_)};
    }
    sum += m.share_;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw validation_error{fmt::format("mode shares sum to {}, not 1", sum)};
  }
  if (p.min_transfer_.v_ < 0 || p.max_transfer_ < p.min_transfer_ ||
      p.max_transfer_.v_ >= p.period_.v_) {
    throw validation_error{"bad transfer time range"};
  }
  if (!(p.walk_link_density_ >= 0.0 && p.walk_link_density_ <= 1.0)) {
    throw validation_error{"walk link density must lie in [0, 1]"};
  }
  if (p.ev_stations_ > p.stops_) {
    throw validation_error{"more EV stations than stops"};
  }
  if (p.period_.v_ < 3600) {
    throw validation_error{"period must be at least one hour"};
  }
  if (p.vehicles_per_route_ == 0U || !(p.grid_spacing_m_ > 0.0)) {
    throw validation_error{"vehicles per route and spacing must be positive"};
  }
  check_link_config(p.links_);
}

std::vector<std::uint32_t> apportion(std::vector<double> const& shares,
                                     std::uint32_t const total) {
  auto out = std::vector<std::uint32_t>(shares.size());
  auto rest = std::vector<std::pair<double, std::size_t>>{};
  auto assigned = std::uint32_t{0U};
  for (auto i = 0U; i != shares.size(); ++i) {
    auto const exact = shares[i] * total;
    out[i] = static_cast<std::uint32_t>(std::floor(exact));
    assigned += out[i];
    rest.emplace_back(exact - out[i], i);
  }
  std::stable_sort(begin(rest), end(rest), [](auto const& a, auto const& b) {
    return a.first > b.first;
  });
  for (auto i = 0U; assigned < total && i != rest.size(); ++i, ++assigned) {
    ++out[rest[i].second];
  }
  return out;
}

timetable gen_synthetic(synthetic_params const& p) {
  check_params(p);

  auto rng = std::mt19937_64{p.seed_};
  auto const uniform = [&](double const lo, double const hi) {
    return std::uniform_real_distribution<double>{lo, hi}(rng);
  };
  auto const uniform_int = [&](std::int64_t const lo, std::int64_t const hi) {
    return std::uniform_int_distribution<std::int64_t>{lo, hi}(rng);
  };

  auto tt = timetable{};
  tt.period_ = p.period_;

  auto const cols = static_cast<std::uint32_t>(
      std::ceil(std::sqrt(static_cast<double>(p.stops_))));
  auto const lat_step = p.grid_spacing_m_ / kMetersPerDegree;
  auto const lon_step =
      p.grid_spacing_m_ /
      (kMetersPerDegree * std::cos(kBaseLat * 3.141592653589793 / 180.0));
  for (auto i = 0U; i != p.stops_; ++i) {
    auto s = stop{};
    s.id_ = fmt::format("S{}", i);
    s.name_ = fmt::format("Stop {}", i);
    s.lat_ = kBaseLat + (i / cols + uniform(-0.15, 0.15)) * lat_step;
    s.lon_ = kBaseLon + (i % cols + uniform(-0.15, 0.15)) * lon_step;
    s.transfer_time_ =
        duration{static_cast<std::int32_t>(uniform_int(p.min_transfer_.v_,
                                                       p.max_transfer_.v_))};
    tt.stops_.emplace_back(std::move(s));
  }

  auto neighbours = std::vector<std::vector<std::uint32_t>>(p.stops_);
  for (auto i = 0U; i != p.stops_; ++i) {
    auto const r = i / cols;
    auto const c = i % cols;
    auto const add = [&](std::int64_t const rr, std::int64_t const cc) {
      if (rr < 0 || cc < 0 || cc >= cols) {
        return;
      }
      auto const j = static_cast<std::uint64_t>(rr) * cols + cc;
      if (j < p.stops_) {
        neighbours[i].push_back(static_cast<std::uint32_t>(j));
      }
    };
    add(r - 1, c);
    add(r + 1, c);
    add(r, static_cast<std::int64_t>(c) - 1);
    add(r, c + 1);
  }

  auto shares = std::vector<double>{};
  for (auto const& m : p.mode_mix_) {
    shares.push_back(m.share_);
  }
  auto const per_mode = apportion(shares, p.vehicles_);

  auto const k = p.connections_per_vehicle_;
  auto const T = static_cast<std::int64_t>(p.period_.v_);
  for (auto mi = 0U; mi != p.mode_mix_.size(); ++mi) {
    auto const m = tt.modes_.get_or_add(p.mode_mix_[mi].mode_);
    auto const speed = speed_mps(p.mode_mix_[mi].mode_);
    for (auto placed = 0U; placed < per_mode[mi];) {
      auto const n_route =
          std::min(p.vehicles_per_route_, per_mode[mi] - placed);

      // Route: random walk over grid neighbours, no immediate reversal.
      auto route = std::vector<std::uint32_t>{};
      auto hop_travel = std::vector<std::int64_t>{};
      auto dwell = std::vector<std::int64_t>{};
      if (k != 0U) {
        route.push_back(static_cast<std::uint32_t>(uniform_int(0, p.stops_ - 1)));
        for (auto h = 0U; h != k; ++h) {
          auto const cur = route.back();
          auto options = neighbours[cur];
          if (route.size() >= 2U && options.size() > 1U) {
            std::erase(options, route[route.size() - 2U]);
          }
          auto const next = options[static_cast<std::size_t>(
              uniform_int(0, static_cast<std::int64_t>(options.size()) - 1))];
          auto const& a = tt.stops_[cur];
          auto const& b = tt.stops_[next];
          auto const dist = haversine_m({a.lat_, a.lon_}, {b.lat_, b.lon_});
          hop_travel.push_back(std::max<std::int64_t>(
              30, static_cast<std::int64_t>(std::ceil(dist / speed)) +
                      uniform_int(0, 30)));
          dwell.push_back(uniform_int(0, 60));
          route.push_back(next);
        }
      }

      auto const headway = T / n_route;
      auto const offset = uniform_int(0, T - 1);
      for (auto v = 0U; v != n_route; ++v) {
        auto const vi =
            vehicle_idx_t{static_cast<std::uint32_t>(tt.vehicles_.size())};
        tt.vehicles_.push_back({fmt::format("V{}", to_idx(vi)), m});
        auto t = offset + v * headway + uniform_int(-60, 60);
        for (auto h = 0U; h != k; ++h) {
          auto const dep = t;
          auto const arr = dep + hop_travel[h];
          tt.connections_.push_back({fmt::format("V{}:{}", to_idx(vi), h), vi,
                                     stop_idx_t{route[h]},
                                     stop_idx_t{route[h + 1U]},
                                     normalize(dep, p.period_),
                                     normalize(arr, p.period_)});
          t = arr + dwell[h];
        }
      }
      placed += n_route;
    }
  }

  auto const idx = make_stop_index(tt);
  for (auto const& l : generate_walk_links(tt, idx, p.links_)) {
    if (l.from_ < l.to_ && uniform(0.0, 1.0) < p.walk_link_density_) {
      tt.links_.push_back(l);
      tt.links_.push_back({l.to_, l.from_, l.duration_, l.mode_});
    }
  }

  if (p.ev_stations_ != 0U) {
    auto ids = std::vector<std::uint32_t>(p.stops_);
    std::iota(begin(ids), end(ids), 0U);
    for (auto i = 0U; i != p.ev_stations_; ++i) {
      auto const j = static_cast<std::uint32_t>(uniform_int(i, p.stops_ - 1));
      std::swap(ids[i], ids[j]);
      tt.stops_[ids[i]].is_ev_station_ = true;
    }
    auto const ev = generate_ev_links(tt, idx, p.links_);
    tt.links_.insert(end(tt.links_), begin(ev), end(ev));
  }

  if (p.links_.transitive_closure_) {
    tt.links_ = close_links(tt.links_, tt.stops_.size(), p.links_);
  }

  ensure_valid(tt);
  return tt;
}

}  // namespace mdtm
