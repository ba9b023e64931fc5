#pragma once

#include "mdtm/timetable.h"

namespace mdtm::test {

// Departures from S_A to S_B in minutes (period 1440): buses leaving at 5
// and 15, trains at 20 and 35. Arrival-ordered with both modes merged, the
// earliest arrival index is d15, d20, d35.
inline timetable four_departures() {
  auto tt = timetable{};
  tt.period_ = period{1440};
  tt.stops_ = {{"A", "S_A", 0.0, 0.0, duration{2}, false},
               {"B", "S_B", 0.0, 0.0, duration{2}, false}};
  tt.vehicles_ = {{"bus5", modes::kBus},
                  {"bus15", modes::kBus},
                  {"train20", modes::kTrain},
                  {"train35", modes::kTrain}};
  auto const a = stop_idx_t{0U};
  auto const b = stop_idx_t{1U};
  tt.connections_ = {
      {"d5", vehicle_idx_t{0U}, a, b, time_point{5}, time_point{25}},
      {"d15", vehicle_idx_t{1U}, a, b, time_point{15}, time_point{20}},
      {"d20", vehicle_idx_t{2U}, a, b, time_point{20}, time_point{37}},
      {"d35", vehicle_idx_t{3U}, a, b, time_point{35}, time_point{46}}};
  return tt;
}

// Minutes, departing O at 0: the direct vehicle reaches T after 65 with one
// boarding, changing at X (transfer 3) reaches it after 57 with two. The
// O -> Y -> T vehicle (70, one boarding) is dominated.
inline timetable pareto_fixture() {
  auto tt = timetable{};
  tt.period_ = period{1440};
  tt.stops_ = {{"O", "", 0.0, 0.0, duration{3}, false},
               {"X", "", 0.0, 0.0, duration{3}, false},
               {"Y", "", 0.0, 0.0, duration{3}, false},
               {"T", "", 0.0, 0.0, duration{3}, false}};
  tt.vehicles_ = {{"direct", modes::kTrain},
                  {"feeder", modes::kBus},
                  {"express", modes::kTrain},
                  {"slow", modes::kBus}};
  auto const o = stop_idx_t{0U};
  auto const x = stop_idx_t{1U};
  auto const y = stop_idx_t{2U};
  auto const t = stop_idx_t{3U};
  tt.connections_ = {
      {"direct:0", vehicle_idx_t{0U}, o, t, time_point{5}, time_point{65}},
      {"feeder:0", vehicle_idx_t{1U}, o, x, time_point{2}, time_point{20}},
      {"express:0", vehicle_idx_t{2U}, x, t, time_point{25}, time_point{57}},
      {"slow:0", vehicle_idx_t{3U}, o, y, time_point{1}, time_point{30}},
      {"slow:1", vehicle_idx_t{3U}, y, t, time_point{31}, time_point{70}}};
  return tt;
}

}  // namespace mdtm::test
