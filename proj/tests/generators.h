#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mdtm/request.h"
#include "mdtm/timetable.h"

namespace mdtm::test {

struct random_params {
  std::uint32_t stops_{6U};
  std::uint32_t vehicles_{12U};
  std::uint32_t max_vehicle_connections_{5U};
  period period_{1440};
  std::int32_t max_travel_{60};
  std::int32_t max_dwell_{10};
  std::int32_t max_transfer_{10};
  double long_travel_share_{0.1};  // travel up to half a period
  double link_share_{0.15};  // probability per ordered stop pair
  std::int32_t max_link_{40};
};

inline std::int32_t draw(std::mt19937_64& rng, std::int32_t const lo,
                         std::int32_t const hi) {
  return std::uniform_int_distribution<std::int32_t>{lo, hi}(rng);
}

inline bool chance(std::mt19937_64& rng, double const p) {
  return std::uniform_real_distribution<double>{0.0, 1.0}(rng) < p;
}

// Small random timetable: arbitrary itineraries over few stops, crowded
// groups, overnight and long connections mixed in.
inline timetable random_timetable(std::mt19937_64& rng,
                                  random_params const& p = {}) {
  auto tt = timetable{};
  tt.period_ = p.period_;
  auto const T = p.period_.v_;

  for (auto i = 0U; i != p.stops_; ++i) {
    tt.stops_.push_back({"s" + std::to_string(i), "", 0.0, 0.0,
                         duration{draw(rng, 0, p.max_transfer_)}, false});
  }

  auto const transit = std::vector<mode>{modes::kBus, modes::kTrain,
                                         modes::kTram};
  for (auto v = 0U; v != p.vehicles_; ++v) {
    auto const vi = vehicle_idx_t{v};
    tt.vehicles_.push_back(
        {"v" + std::to_string(v),
         transit[static_cast<std::size_t>(draw(rng, 0, 2))]});
    auto const n = draw(rng, 1, static_cast<std::int32_t>(
                                    p.max_vehicle_connections_));
    auto at = draw(rng, 0, static_cast<std::int32_t>(p.stops_) - 1);
    auto t = static_cast<std::int64_t>(draw(rng, 0, T - 1));
    for (auto k = 0; k != n; ++k) {
      auto to = draw(rng, 0, static_cast<std::int32_t>(p.stops_) - 2);
      if (to >= at) {
        ++to;
      }
      auto const travel = chance(rng, p.long_travel_share_)
                              ? draw(rng, 0, T / 2)
                              : draw(rng, 0, p.max_travel_);
      auto const dwell = draw(rng, 0, p.max_dwell_);
      tt.connections_.push_back(
          {"v" + std::to_string(v) + ":" + std::to_string(k), vi,
           stop_idx_t{static_cast<std::uint32_t>(at)},
           stop_idx_t{static_cast<std::uint32_t>(to)}, normalize(t, p.period_),
           normalize(t + travel, p.period_)});
      t += travel + dwell;
      at = to;
    }
  }

  for (auto a = 0U; a != p.stops_; ++a) {
    for (auto b = 0U; b != p.stops_; ++b) {
      if (a != b && chance(rng, p.link_share_)) {
        tt.links_.push_back({stop_idx_t{a}, stop_idx_t{b},
                             duration{draw(rng, 1, p.max_link_)},
                             chance(rng, 0.8) ? modes::kWalk : modes::kEv});
      }
    }
  }
  return tt;
}

inline query_request random_query(std::mt19937_64& rng, timetable const& tt,
                                  double const all_modes_share = 0.7) {
  auto q = query_request{};
  auto const n = static_cast<std::int32_t>(tt.stops_.size());
  q.from_ = stop_idx_t{static_cast<std::uint32_t>(draw(rng, 0, n - 1))};
  q.to_ = stop_idx_t{static_cast<std::uint32_t>(draw(rng, 0, n - 1))};
  q.depart_ = time_point{draw(rng, 0, tt.period_.v_ - 1)};
  if (!chance(rng, all_modes_share)) {
    auto m = mode_set{};
    while (m.empty()) {
      for (auto i = 0U; i != 5U; ++i) {
        if (chance(rng, 0.5)) {
          m.insert(mode{static_cast<std::uint8_t>(i)});
        }
      }
    }
    q.modes_ = m;
  }
  return q;
}

}  // namespace mdtm::test
