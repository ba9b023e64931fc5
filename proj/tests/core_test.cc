#include <random>

#include "gtest/gtest.h"

#include "mdtm/serialize.h"
#include "mdtm/timetable.h"

#include "fixtures.h"
#include "generators.h"

using namespace mdtm;

namespace {

constexpr auto kMinutes = period{1440};

bool has_issue(validation_report const& r, validation_issue::kind const k) {
  return std::any_of(begin(r.issues_), end(r.issues_),
                     [&](validation_issue const& i) { return i.kind_ == k; });
}

// One vehicle, A -> B -> C.
timetable chain_fixture() {
  auto tt = timetable{};
  tt.period_ = kMinutes;
  tt.stops_ = {{"A", "", 0.0, 0.0, duration{1}, false},
               {"B", "", 0.0, 0.0, duration{1}, false},
               {"C", "", 0.0, 0.0, duration{1}, false}};
  tt.vehicles_ = {{"z", modes::kBus}};
  tt.connections_ = {{"c1", vehicle_idx_t{0U}, stop_idx_t{0U}, stop_idx_t{1U},
                      time_point{10}, time_point{20}},
                     {"c2", vehicle_idx_t{0U}, stop_idx_t{1U}, stop_idx_t{2U},
                      time_point{22}, time_point{30}}};
  return tt;
}

}  // namespace

TEST(cyclic_delta, examples) {
  EXPECT_EQ(cyclic_delta(time_point{20}, time_point{37}, kMinutes),
            duration{17});
  EXPECT_EQ(cyclic_delta(time_point{300}, time_point{300}, kMinutes),
            duration{0});
  EXPECT_EQ(cyclic_delta(time_point{1430}, time_point{10}, kMinutes),
            duration{20});
  EXPECT_EQ(cyclic_delta(time_point{86'399}, time_point{0}), duration{1});
}

TEST(cyclic_delta, properties) {
  auto rng = std::mt19937_64{3U};
  for (auto const p : {period{1440}, period{86'400}, period{7}}) {
    for (auto i = 0; i != 20'000; ++i) {
      auto const t1 = time_point{test::draw(rng, 0, p.v_ - 1)};
      auto const t2 = time_point{test::draw(rng, 0, p.v_ - 1)};
      auto const t3 = time_point{test::draw(rng, 0, p.v_ - 1)};
      auto const d12 = cyclic_delta(t1, t2, p);
      ASSERT_GE(d12.v_, 0);
      ASSERT_LT(d12.v_, p.v_);
      ASSERT_EQ((d12.v_ + cyclic_delta(t2, t3, p).v_) % p.v_,
                cyclic_delta(t1, t3, p).v_);
      ASSERT_EQ(d12.v_ == 0, t1 == t2);
      ASSERT_EQ(shift(t1, d12, p), t2);
    }
  }
}

TEST(time, normalize_negative) {
  EXPECT_EQ(normalize(-1, kMinutes), time_point{1439});
  EXPECT_EQ(normalize(2 * 1440 + 5, kMinutes), time_point{5});
}

TEST(time, format_and_parse) {
  EXPECT_EQ(format_time(time_point{8 * 3600 + 17 * 60 + 5}), "08:17:05");
  EXPECT_EQ(format_elapsed(90'061), "25:01:01");
  EXPECT_EQ(parse_time("08:17:05"), 8 * 3600 + 17 * 60 + 5);
  EXPECT_EQ(parse_time("25:00:00"), 25 * 3600);
  EXPECT_EQ(parse_time("08:17"), 8 * 3600 + 17 * 60);
  EXPECT_EQ(parse_time(" 7:00:00"), 7 * 3600);
  EXPECT_EQ(parse_time("125"), 125);
  EXPECT_THROW(parse_time(""), parse_error);
  EXPECT_THROW(parse_time("8h"), parse_error);
  EXPECT_THROW(parse_time("08:xx:00"), parse_error);
}

TEST(time, elapsed_threshold) {
  EXPECT_EQ(elapsed_threshold(1.0, 1234), 1234);
  EXPECT_EQ(elapsed_threshold(1.2, 100), 120);
  EXPECT_EQ(elapsed_threshold(1.2, 21), 25);
  EXPECT_EQ(elapsed_threshold(1.1, 1'000'000), 1'100'000);
}

TEST(mode_registry, parse_set) {
  auto r = mode_registry{};
  EXPECT_EQ(r.parse_set("bus,walk"), (mode_set{modes::kBus, modes::kWalk}));
  EXPECT_EQ(r.parse_set("all"), (mode_set{modes::kBus, modes::kTrain,
                                         modes::kTram, modes::kWalk,
                                         modes::kEv}));
  EXPECT_THROW(r.parse_set("bus,ferry"), error);
  auto const ferry = r.get_or_add("ferry");
  EXPECT_EQ(ferry, mode{5U});
  EXPECT_EQ(r.name(ferry), "ferry");
  EXPECT_TRUE(r.parse_set("ferry").contains(ferry));
}

TEST(validate_timetable, empty_is_ok) {
  EXPECT_TRUE(validate_timetable(timetable{}).ok());
}

TEST(validate_timetable, fixtures_are_ok) {
  EXPECT_TRUE(validate_timetable(test::four_departures()).ok());
  EXPECT_TRUE(validate_timetable(chain_fixture()).ok());
}

TEST(validate_timetable, unknown_stop) {
  auto tt = chain_fixture();
  tt.connections_[1].to_ = stop_idx_t{9U};
  auto const r = validate_timetable(tt);
  ASSERT_EQ(r.issues_.size(), 1U);
  EXPECT_EQ(r.issues_[0].kind_, validation_issue::kind::kDanglingReference);
  EXPECT_EQ(r.issues_[0].entity_, "connection c2");
}

TEST(validate_timetable, not_chainable) {
  auto tt = chain_fixture();
  tt.connections_[1].from_ = stop_idx_t{0U};
  auto const r = validate_timetable(tt);
  ASSERT_EQ(r.issues_.size(), 1U);
  EXPECT_EQ(r.issues_[0].kind_, validation_issue::kind::kNotChainable);
  EXPECT_EQ(r.issues_[0].entity_, "connection c2");
}

TEST(validate_timetable, other_violations) {
  auto tt = chain_fixture();
  tt.stops_[0].transfer_time_ = duration{1440};
  tt.connections_[0].dep_ = time_point{1440};
  tt.links_.push_back({stop_idx_t{1U}, stop_idx_t{1U}, duration{0}});
  auto const r = validate_timetable(tt);
  EXPECT_TRUE(has_issue(r, validation_issue::kind::kBadTransferTime));
  EXPECT_TRUE(has_issue(r, validation_issue::kind::kTimeOutOfRange));
  EXPECT_TRUE(has_issue(r, validation_issue::kind::kSameStop));
  EXPECT_TRUE(has_issue(r, validation_issue::kind::kBadLinkDuration));
  EXPECT_THROW(ensure_valid(tt), validation_error);
}

TEST(validate_timetable, vehicle_arc_too_long) {
  auto tt = chain_fixture();
  tt.connections_[0].arr_ = time_point{1000};  // travel 990
  tt.connections_[1].dep_ = normalize(1460, kMinutes);
  tt.connections_[1].arr_ = normalize(1470, kMinutes);
  auto const r = validate_timetable(tt);
  EXPECT_TRUE(has_issue(r, validation_issue::kind::kVehicleArcTooLong));
}

TEST(timetable, lookups_and_itineraries) {
  auto const tt = chain_fixture();
  EXPECT_EQ(tt.find_stop("B"), stop_idx_t{1U});
  EXPECT_EQ(tt.find_stop("X"), std::nullopt);
  EXPECT_EQ(tt.find_connection("c2"), connection_idx_t{1U});
  auto const ids = id_lookup{tt};
  EXPECT_EQ(ids.stop("C"), stop_idx_t{2U});
  EXPECT_EQ(ids.connection("c1"), connection_idx_t{0U});
  EXPECT_EQ(ids.connection("nope"), std::nullopt);
  auto const it = tt.itineraries();
  ASSERT_EQ(it.size(), 1U);
  EXPECT_EQ(it[0], (std::vector{connection_idx_t{0U}, connection_idx_t{1U}}));
}

TEST(timetable, apply_delay_shifts_later_events) {
  auto tt = chain_fixture();
  apply_delay(tt, connection_idx_t{0U}, duration{5});
  EXPECT_EQ(tt.connections_[0].dep_, time_point{10});
  EXPECT_EQ(tt.connections_[0].arr_, time_point{25});
  EXPECT_EQ(tt.connections_[1].dep_, time_point{27});
  EXPECT_EQ(tt.connections_[1].arr_, time_point{35});

  apply_delay(tt, connection_idx_t{1U}, duration{1420});
  EXPECT_EQ(tt.connections_[1].dep_, time_point{27});
  EXPECT_EQ(tt.connections_[1].arr_, time_point{15});
  EXPECT_TRUE(validate_timetable(tt).ok());

  EXPECT_THROW(apply_delay(tt, connection_idx_t{1U}, duration{1440}),
               validation_error);
  EXPECT_THROW(apply_delay(tt, connection_idx_t{7U}, duration{1}), error);
}

TEST(serialize, round_trip_fixtures) {
  for (auto const& tt : {test::four_departures(), chain_fixture(), timetable{}}) {
    auto bytes = std::vector<std::uint8_t>{};
    auto w = byte_writer{bytes};
    encode_timetable(w, tt);
    auto r = byte_reader{bytes};
    EXPECT_EQ(decode_timetable(r), tt);
    EXPECT_TRUE(r.at_end());
  }
}

TEST(serialize, round_trip_random) {
  auto rng = std::mt19937_64{11U};
  for (auto i = 0; i != 200; ++i) {
    auto tt = test::random_timetable(rng);
    tt.stops_[0].name_ = "Hauptbahnhof \"Süd\"";
    tt.stops_[0].lat_ = 52.5 + i * 1e-7;
    tt.stops_[0].is_ev_station_ = (i % 2) == 0;
    if (i % 3 == 0) {
      tt.modes_.get_or_add("ferry");
    }

    auto bytes = std::vector<std::uint8_t>{};
    auto w = byte_writer{bytes};
    encode_timetable(w, tt);
    auto r = byte_reader{bytes};
    auto const back = decode_timetable(r);
    ASSERT_EQ(back, tt);

    auto again = std::vector<std::uint8_t>{};
    auto w2 = byte_writer{again};
    encode_timetable(w2, back);
    ASSERT_EQ(again, bytes);

    ASSERT_EQ(timetable_from_json(timetable_to_json(tt)), tt);
  }
}

TEST(serialize, rejects_garbage) {
  auto bytes = std::vector<std::uint8_t>{'M', 'D', 'X', 'M', 1, 0, 0, 0};
  auto r = byte_reader{bytes};
  EXPECT_THROW(decode_timetable(r), parse_error);

  auto good = std::vector<std::uint8_t>{};
  auto w = byte_writer{good};
  encode_timetable(w, chain_fixture());
  good.resize(good.size() - 3U);
  auto truncated = byte_reader{good};
  EXPECT_THROW(decode_timetable(truncated), parse_error);

  EXPECT_THROW(timetable_from_json("{\"period\": 1440"), parse_error);
}

TEST(serialize, json_references_source_ids) {
  auto const js = timetable_to_json(test::four_departures());
  EXPECT_NE(js.find("\"train20\""), std::string::npos);
  EXPECT_NE(js.find("\"d35\""), std::string::npos);
}
