#include <random>
#include <string>

#include "gtest/gtest.h"

#include "json.hpp"

#include "mdtm/graph.h"
#include "mdtm/oracle.h"
#include "mdtm/query.h"

#include "fixtures.h"
#include "generators.h"

using namespace mdtm;

namespace {

std::string to_string(std::vector<oracle::label> const& labels) {
  auto out = std::string{};
  for (auto const& l : labels) {
    out += "(" + std::to_string(l.elapsed_) + "," +
           std::to_string(l.boardings_) + ")";
  }
  return out;
}

}  // namespace

TEST(earliest_arrival, worked_example) {
  auto const tt = test::four_departures();
  auto const g = build_graph(tt);
  auto const r = earliest_arrival(
      g, {stop_idx_t{0U}, stop_idx_t{1U}, time_point{25},
          mode_set{modes::kBus, modes::kTrain}});
  ASSERT_TRUE(r.journey_.has_value());
  EXPECT_EQ(r.journey_->arrival(tt.period_), time_point{46});
  EXPECT_EQ(r.journey_->elapsed_, 21);
}

TEST(earliest_arrival, random_matches_oracle) {
  auto rng = std::mt19937_64{7U};
  auto mismatches = 0;
  for (auto inst = 0; inst != 300; ++inst) {
    auto const tt = test::random_timetable(rng);
    auto const g = build_graph(tt);
    auto s = search_state{};
    for (auto i = 0; i != 30; ++i) {
      auto const q = test::random_query(rng, tt);
      auto const r = earliest_arrival(g, q, s);
      auto const o = oracle::earliest_arrival(tt, q);
      auto const got = r.journey_ ? std::optional{r.journey_->elapsed_}
                                  : std::nullopt;
      if (got != o) {
        ++mismatches;
        if (mismatches < 5) {
          ADD_FAILURE() << "inst " << inst << " q " << q.from_.v_ << "->"
                        << q.to_.v_ << " t=" << q.depart_.v_ << " got "
                        << (got ? *got : -1) << " oracle " << (o ? *o : -1);
        }
      }
      if (r.journey_) {
        auto const err = check_journey(tt, q, *r.journey_);
        EXPECT_FALSE(err.has_value()) << *err;
      }
    }
  }
  EXPECT_EQ(mismatches, 0);
}

namespace {

test::random_params dense_params() {
  auto p = test::random_params{};
  p.stops_ = 4U;
  p.vehicles_ = 30U;
  p.long_travel_share_ = 0.3;
  return p;
}

}  // namespace

TEST(earliest_arrival, dense_groups_match_oracle) {
  auto rng = std::mt19937_64{11U};
  auto mismatches = 0;
  for (auto inst = 0; inst != 300; ++inst) {
    auto const tt = test::random_timetable(rng, dense_params());
    auto const g = build_graph(tt);
    auto const lb = preprocess_landmarks(condense(g));
    auto s = search_state{};
    for (auto i = 0; i != 30; ++i) {
      auto const q = test::random_query(rng, tt);
      auto const r = earliest_arrival(g, q, s);
      auto const ra = earliest_arrival_alt(g, lb, q);
      auto const o = oracle::earliest_arrival(tt, q);
      auto const got = r.journey_ ? std::optional{r.journey_->elapsed_}
                                  : std::nullopt;
      auto const got_alt = ra.journey_ ? std::optional{ra.journey_->elapsed_}
                                       : std::nullopt;
      mismatches += got != o || got_alt != o;
      EXPECT_LE(ra.stats_.settled_switch_, r.stats_.settled_switch_);
    }
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(multicriteria, random_matches_oracle) {
  auto rng = std::mt19937_64{13U};
  auto mismatches = 0;
  for (auto inst = 0; inst != 200; ++inst) {
    auto const tt = test::random_timetable(
        rng, inst % 2 == 0 ? test::random_params{} : dense_params());
    auto const g = build_graph(tt);
    auto const lb = preprocess_landmarks(condense(g));
    for (auto i = 0; i != 10; ++i) {
      auto const q = test::random_query(rng, tt);
      for (auto const* l : {static_cast<lower_bound_table const*>(nullptr), &lb}) {
        auto const set = multicriteria(g, q, 1.2, l);
        auto const o = oracle::pareto(tt, q, 1.2);
        auto got = std::vector<oracle::label>{};
        for (auto const& j : set.journeys_) {
          got.push_back({j.elapsed_, j.boardings_});
          auto const err = check_journey(tt, q, j);
          EXPECT_FALSE(err.has_value()) << *err;
        }
        if (got != o) {
          ++mismatches;
          if (mismatches < 5) {
            ADD_FAILURE() << "inst " << inst << ": " << to_string(got)
                          << " vs oracle " << to_string(o);
          }
        }
      }
    }
  }
  EXPECT_EQ(mismatches, 0);
}

namespace {

constexpr auto A = stop_idx_t{0U};
constexpr auto B = stop_idx_t{1U};
constexpr auto C = stop_idx_t{2U};
constexpr auto D = stop_idx_t{3U};

timetable four_stops() {
  auto tt = timetable{};
  tt.period_ = period{1440};
  for (auto const* id : {"A", "B", "C", "D"}) {
    tt.stops_.push_back({id, "", 0.0, 0.0, duration{2}, false});
  }
  return tt;
}

// Ride A -> B, walk B -> C (4), ride C -> D. Boarding at C needs the transfer
// time after walking, so the tram at 25 is missed.
timetable ride_walk_ride() {
  auto tt = four_stops();
  tt.vehicles_ = {{"u", modes::kBus}, {"v", modes::kTrain}, {"w", modes::kTram}};
  tt.connections_ = {{"u0", vehicle_idx_t{0U}, A, B, time_point{10},
                      time_point{20}},
                     {"v0", vehicle_idx_t{1U}, C, D, time_point{30},
                      time_point{40}},
                     {"w0", vehicle_idx_t{2U}, C, D, time_point{25},
                      time_point{35}}};
  tt.links_ = {{B, C, duration{4}, modes::kWalk}};
  return tt;
}

}  // namespace

TEST(earliest_arrival, trivial_cases) {
  auto const tt = test::four_departures();
  auto const g = build_graph(tt);
  auto const same = earliest_arrival(g, {A, A, time_point{25}});
  ASSERT_TRUE(same.journey_.has_value());
  EXPECT_EQ(same.journey_->elapsed_, 0);
  EXPECT_TRUE(same.journey_->legs_.empty());
  EXPECT_EQ(same.journey_->arrival(tt.period_), time_point{25});

  EXPECT_FALSE(earliest_arrival(g, {B, A, time_point{25}}).journey_);
  EXPECT_FALSE(
      earliest_arrival(g, {A, B, time_point{25}, mode_set{modes::kWalk}})
          .journey_);
  EXPECT_THROW(earliest_arrival(g, {A, stop_idx_t{9U}, time_point{0}}), error);
}

TEST(earliest_arrival, mode_filter) {
  auto const tt = test::four_departures();
  auto const g = build_graph(tt);
  auto const bus = earliest_arrival(g, {A, B, time_point{16},
                                        mode_set{modes::kBus}});
  ASSERT_TRUE(bus.journey_.has_value());
  EXPECT_EQ(bus.journey_->elapsed_, 1440 - 16 + 20);
  auto const train = earliest_arrival(g, {A, B, time_point{16},
                                          mode_set{modes::kTrain}});
  EXPECT_EQ(train.journey_->elapsed_, 37 - 16);
}

TEST(reconstruct_journey, single_connection) {
  auto const tt = test::four_departures();
  auto const g = build_graph(tt);
  auto const q = query_request{A, B, time_point{25}};
  auto const j = earliest_arrival(g, q).journey_;
  ASSERT_TRUE(j.has_value());
  ASSERT_EQ(j->legs_.size(), 1U);
  auto const& leg = j->legs_[0];
  EXPECT_EQ(leg.kind_, journey_leg::kind::kRide);
  EXPECT_EQ(leg.connections_, std::vector{connection_idx_t{3U}});
  EXPECT_EQ(leg.depart_, 10);
  EXPECT_EQ(leg.arrive_, 21);
  EXPECT_EQ(j->boardings_, 1U);
  EXPECT_EQ(j->transfers(), 0U);
  EXPECT_FALSE(check_journey(tt, q, *j).has_value());
}

TEST(reconstruct_journey, same_vehicle_is_one_leg) {
  auto tt = four_stops();
  tt.vehicles_ = {{"z", modes::kBus}};
  tt.connections_ = {
      {"z0", vehicle_idx_t{0U}, A, B, time_point{10}, time_point{20}},
      {"z1", vehicle_idx_t{0U}, B, C, time_point{20}, time_point{30}}};
  auto const g = build_graph(tt);
  auto const q = query_request{A, C, time_point{0}};
  auto const j = earliest_arrival(g, q).journey_;
  ASSERT_TRUE(j.has_value());
  ASSERT_EQ(j->legs_.size(), 1U);
  EXPECT_EQ(j->legs_[0].connections_.size(), 2U);
  EXPECT_EQ(j->legs_[0].to_, C);
  EXPECT_EQ(j->boardings_, 1U);
  EXPECT_EQ(j->elapsed_, 30);
  EXPECT_FALSE(check_journey(tt, q, *j).has_value());
}

TEST(reconstruct_journey, ride_walk_ride) {
  auto const tt = ride_walk_ride();
  auto const g = build_graph(tt);
  auto const q = query_request{A, D, time_point{0}};
  auto const j = earliest_arrival(g, q).journey_;
  ASSERT_TRUE(j.has_value());
  ASSERT_EQ(j->legs_.size(), 3U);
  EXPECT_EQ(j->legs_[0].kind_, journey_leg::kind::kRide);
  EXPECT_EQ(j->legs_[1].kind_, journey_leg::kind::kLink);
  EXPECT_EQ(j->legs_[1].mode_, modes::kWalk);
  EXPECT_EQ(j->legs_[2].kind_, journey_leg::kind::kRide);
  EXPECT_EQ(j->legs_[2].connections_, std::vector{connection_idx_t{1U}});
  EXPECT_EQ(j->boardings_, 2U);
  EXPECT_EQ(j->transfers(), 1U);
  EXPECT_EQ(j->elapsed_, 40);
  EXPECT_FALSE(check_journey(tt, q, *j).has_value());
  EXPECT_EQ(oracle::earliest_arrival(tt, q), 40);
}

TEST(reconstruct_journey, requires_settled_target) {
  auto const tt = test::four_departures();
  auto const g = build_graph(tt);
  auto s = search_state{};
  ASSERT_FALSE(earliest_arrival(g, {B, A, time_point{0}}, s).journey_);
  EXPECT_THROW(reconstruct_journey(g, s), error);
}

TEST(check_journey, detects_infeasible_journeys) {
  auto const tt = ride_walk_ride();
  auto const g = build_graph(tt);
  auto const q = query_request{A, D, time_point{0}};
  auto j = *earliest_arrival(g, q).journey_;

  auto missed = j;
  missed.legs_[2].connections_ = {connection_idx_t{2U}};
  missed.legs_[2].depart_ = 25;
  missed.legs_[2].arrive_ = 35;
  missed.elapsed_ = 35;
  EXPECT_TRUE(check_journey(tt, q, missed).has_value());

  auto broken = j;
  broken.legs_.erase(broken.legs_.begin() + 1);
  EXPECT_TRUE(check_journey(tt, q, broken).has_value());
}

TEST(multicriteria, pareto_fixture) {
  auto const tt = test::pareto_fixture();
  auto const g = build_graph(tt);
  auto const q = query_request{*tt.find_stop("O"), *tt.find_stop("T"),
                               time_point{0}};
  auto const set = multicriteria(g, q, 1.2);
  ASSERT_EQ(set.journeys_.size(), 2U);
  EXPECT_EQ(set.fastest_, 57);
  EXPECT_EQ(set.journeys_[0].elapsed_, 57);
  EXPECT_EQ(set.journeys_[0].boardings_, 2U);
  EXPECT_EQ(set.journeys_[1].elapsed_, 65);
  EXPECT_EQ(set.journeys_[1].boardings_, 1U);

  auto const tight = multicriteria(g, q, 1.0);
  ASSERT_EQ(tight.journeys_.size(), 1U);
  EXPECT_EQ(tight.journeys_[0].elapsed_, 57);

  EXPECT_THROW(multicriteria(g, q, 0.9), error);
}

TEST(multicriteria, single_vehicle_and_trivial) {
  auto const tt = test::four_departures();
  auto const g = build_graph(tt);
  auto const set = multicriteria(g, {A, B, time_point{25}}, 1.2);
  ASSERT_EQ(set.journeys_.size(), 1U);
  EXPECT_EQ(set.journeys_[0].elapsed_, 21);
  EXPECT_EQ(set.journeys_[0].boardings_, 1U);
  EXPECT_TRUE(multicriteria(g, {B, A, time_point{25}}, 1.2).journeys_.empty());
}

TEST(multicriteria, threshold_one_keeps_fastest_only) {
  auto rng = std::mt19937_64{19U};
  for (auto i = 0; i != 200; ++i) {
    auto const tt = test::random_timetable(rng);
    auto const g = build_graph(tt);
    auto const q = test::random_query(rng, tt);
    auto const set = multicriteria(g, q, 1.0);
    for (auto const& j : set.journeys_) {
      ASSERT_EQ(j.elapsed_, set.fastest_);
    }
    ASSERT_LE(set.journeys_.size(), 1U);
  }
}

TEST(min_transfers, prefers_direct_vehicle) {
  auto const tt = test::pareto_fixture();
  auto const g = build_graph(tt);
  auto const q = query_request{*tt.find_stop("O"), *tt.find_stop("T"),
                               time_point{0}};
  auto const j = min_transfers(g, q, 2.0);
  ASSERT_TRUE(j.has_value());
  EXPECT_EQ(j->boardings_, 1U);
  EXPECT_EQ(j->elapsed_, 65);
  ASSERT_EQ(j->legs_.size(), 1U);
  EXPECT_EQ(tt.vehicles_[to_idx(j->legs_[0].vehicle_)].id_, "direct");

  EXPECT_EQ(min_transfers(g, q, 1.0)->boardings_, 2U);
  EXPECT_EQ(min_transfers(g, {q.from_, q.from_, time_point{0}}, 1.2)->boardings_,
            0U);
  EXPECT_FALSE(min_transfers(g, {q.to_, q.from_, time_point{0}}, 1.2));
}

TEST(journey_json, fields) {
  auto const tt = ride_walk_ride();
  auto const g = build_graph(tt);
  auto const j = *earliest_arrival(g, {A, D, time_point{0}}).journey_;
  auto const js = nlohmann::json::parse(journey_to_json(tt, j));
  EXPECT_EQ(js["result"], "journey");
  EXPECT_EQ(js["elapsed_s"], 40);
  EXPECT_EQ(js["transfers"], 1);
  EXPECT_EQ(js["boardings"], 2);
  ASSERT_EQ(js["legs"].size(), 3U);
  EXPECT_EQ(js["legs"][1]["kind"], "walk");
  EXPECT_EQ(js["legs"][2]["vehicle"], "v");
  EXPECT_EQ(js["legs"][2]["connections"], nlohmann::json::array({"v0"}));

  auto const none = nlohmann::json::parse(pareto_to_json(tt, pareto_set{}));
  EXPECT_EQ(none["result"], "none");
}
