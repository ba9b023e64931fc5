#include <algorithm>
#include <random>

#include "gtest/gtest.h"

#include "mdtm/oracle.h"

#include "fixtures.h"
#include "generators.h"

using namespace mdtm;

namespace {

using labels = std::vector<oracle::label>;

query_request from_o(timetable const& tt) {
  return {*tt.find_stop("O"), *tt.find_stop("T"), time_point{0},
          mode_set::all()};
}

// Interleaves the connections randomly, keeping each vehicle's itinerary
// order.
timetable shuffled(timetable tt, std::mt19937_64& rng) {
  auto order = std::vector<std::uint32_t>{};
  for (auto const& c : tt.connections_) {
    order.push_back(to_idx(c.vehicle_));
  }
  std::shuffle(begin(order), end(order), rng);
  auto queues = std::vector<std::vector<connection>>(tt.vehicles_.size());
  for (auto const& c : tt.connections_) {
    queues[to_idx(c.vehicle_)].push_back(c);
  }
  auto next = std::vector<std::size_t>(tt.vehicles_.size(), 0U);
  tt.connections_.clear();
  for (auto const v : order) {
    tt.connections_.push_back(queues[v][next[v]++]);
  }
  return tt;
}

}  // namespace

TEST(oracle, worked_example) {
  auto const tt = test::four_departures();
  auto const e = oracle::earliest_arrival(
      tt, {stop_idx_t{0U}, stop_idx_t{1U}, time_point{25},
           mode_set{modes::kBus, modes::kTrain}});
  EXPECT_EQ(e, 21);
}

TEST(oracle, trivial_cases) {
  auto const tt = test::four_departures();
  EXPECT_EQ(oracle::earliest_arrival(
                tt, {stop_idx_t{0U}, stop_idx_t{0U}, time_point{3}}),
            0);
  EXPECT_EQ(oracle::earliest_arrival(
                tt, {stop_idx_t{1U}, stop_idx_t{0U}, time_point{3}}),
            std::nullopt);
  EXPECT_EQ(oracle::earliest_arrival(
                tt, {stop_idx_t{0U}, stop_idx_t{1U}, time_point{3},
                     mode_set{modes::kTram}}),
            std::nullopt);
  EXPECT_THROW(oracle::earliest_arrival(
                   tt, {stop_idx_t{0U}, stop_idx_t{5U}, time_point{3}}),
               error);
}

TEST(oracle, next_period_departure) {
  auto const tt = test::four_departures();
  // After 35 the earliest arrival is the bus at 15 of the following day.
  EXPECT_EQ(oracle::earliest_arrival(
                tt, {stop_idx_t{0U}, stop_idx_t{1U}, time_point{36}}),
            1440 - 36 + 20);
}

TEST(oracle, pareto_fixture) {
  auto const tt = test::pareto_fixture();
  EXPECT_EQ(oracle::earliest_arrival(tt, from_o(tt)), 57);
  EXPECT_EQ(oracle::pareto(tt, from_o(tt), 1.2), (labels{{57, 2U}, {65, 1U}}));
  EXPECT_EQ(oracle::pareto(tt, from_o(tt), 1.0), (labels{{57, 2U}}));
  EXPECT_EQ(oracle::pareto(tt, from_o(tt), 2.0), (labels{{57, 2U}, {65, 1U}}));
}

TEST(oracle, pareto_single_vehicle) {
  auto const tt = test::four_departures();
  auto const q = query_request{stop_idx_t{0U}, stop_idx_t{1U}, time_point{25}};
  EXPECT_EQ(oracle::pareto(tt, q, 1.2), (labels{{21, 1U}}));
  EXPECT_EQ(oracle::pareto(tt, q, 1.0), (labels{{21, 1U}}));
  EXPECT_EQ(oracle::pareto(tt, {stop_idx_t{0U}, stop_idx_t{0U}, time_point{25}},
                           1.2),
            (labels{{0, 0U}}));
  EXPECT_TRUE(
      oracle::pareto(tt, {stop_idx_t{1U}, stop_idx_t{0U}, time_point{0}}, 1.2)
          .empty());
}

TEST(oracle, pareto_size_guard) {
  auto tt = timetable{};
  for (auto i = 0U; i != oracle::kMaxParetoStops + 1U; ++i) {
    tt.stops_.push_back({"s" + std::to_string(i), "", 0.0, 0.0, duration{0},
                         false});
  }
  EXPECT_THROW(oracle::pareto(tt, {stop_idx_t{0U}, stop_idx_t{1U}, time_point{0}}, 1.2),
               error);
}

TEST(oracle, invariant_under_connection_order) {
  auto rng = std::mt19937_64{71U};
  for (auto i = 0; i != 100; ++i) {
    auto const tt = test::random_timetable(rng);
    auto const other = shuffled(tt, rng);
    ASSERT_EQ(tt.itineraries().size(), other.itineraries().size());
    for (auto k = 0; k != 10; ++k) {
      auto const q = test::random_query(rng, tt);
      ASSERT_EQ(oracle::earliest_arrival(tt, q),
                oracle::earliest_arrival(other, q));
      ASSERT_EQ(oracle::pareto(tt, q, 1.3), oracle::pareto(other, q, 1.3));
    }
  }
}

TEST(oracle, pareto_is_an_antichain_within_the_threshold) {
  auto rng = std::mt19937_64{73U};
  for (auto i = 0; i != 200; ++i) {
    auto const tt = test::random_timetable(rng);
    for (auto k = 0; k != 5; ++k) {
      auto const q = test::random_query(rng, tt);
      auto const set = oracle::pareto(tt, q, 1.5);
      auto const ea = oracle::earliest_arrival(tt, q);
      ASSERT_EQ(set.empty(), !ea.has_value());
      if (set.empty()) {
        continue;
      }
      ASSERT_EQ(set.front().elapsed_, *ea);
      for (auto j = 1U; j < set.size(); ++j) {
        ASSERT_LT(set[j - 1].elapsed_, set[j].elapsed_);
        ASSERT_GT(set[j - 1].boardings_, set[j].boardings_);
      }
      ASSERT_LE(set.back().elapsed_, elapsed_threshold(1.5, *ea));
    }
  }
}
