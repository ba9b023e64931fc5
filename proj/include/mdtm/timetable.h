#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mdtm/mode.h"
#include "mdtm/types.h"

namespace mdtm {

struct stop {
  friend bool operator==(stop const&, stop const&) = default;

  std::string id_;
  std::string name_;
  double lat_{0.0}, lon_{0.0};
  duration transfer_time_{0};
  bool is_ev_station_{false};
};

struct vehicle {
  friend bool operator==(vehicle const&, vehicle const&) = default;

  std::string id_;
  mode mode_;
};

// Elementary connection: one vehicle travelling between two consecutive
// stops. A vehicle's itinerary is the sequence of its connections in the
// order in which they appear in timetable::connections_.
struct connection {
  friend bool operator==(connection const&, connection const&) = default;

  std::string id_;
  vehicle_idx_t vehicle_;
  stop_idx_t from_, to_;
  time_point dep_, arr_;
};

// Unrestricted-departure connection (walking, EV driving).
struct unrestricted_link {
  friend bool operator==(unrestricted_link const&,
                         unrestricted_link const&) = default;

  stop_idx_t from_, to_;
  duration duration_{0};
  mode mode_{modes::kWalk};
};

struct timetable {
  friend bool operator==(timetable const&, timetable const&) = default;

  duration travel_time(connection const& c) const {
    return cyclic_delta(c.dep_, c.arr_, period_);
  }

  // Connections of each vehicle in itinerary order.
  std::vector<std::vector<connection_idx_t>> itineraries() const;

  std::optional<stop_idx_t> find_stop(std::string_view id) const;
  std::optional<connection_idx_t> find_connection(std::string_view id) const;

  period period_{kDefaultPeriod};
  mode_registry modes_;
  std::vector<stop> stops_;
  std::vector<vehicle> vehicles_;
  std::vector<connection> connections_;
  std::vector<unrestricted_link> links_;
};

struct validation_issue {
  enum class kind {
    kDanglingReference,
    kTimeOutOfRange,
    kSameStop,
    kNotChainable,
    kVehicleArcTooLong,
    kBadTransferTime,
    kBadLinkDuration
  };

  friend bool operator==(validation_issue const&,
                         validation_issue const&) = default;

  kind kind_;
  std::string entity_;
  std::string message_;
};

struct validation_report {
  bool ok() const { return issues_.empty(); }
  std::string to_string() const;

  std::vector<validation_issue> issues_;
};

// Source-id to handle maps for repeated lookups.
struct id_lookup {
  explicit id_lookup(timetable const&);

  std::optional<stop_idx_t> stop(std::string_view) const;
  std::optional<connection_idx_t> connection(std::string_view) const;

  std::unordered_map<std::string, stop_idx_t> stops_;
  std::unordered_map<std::string, connection_idx_t> connections_;
};

validation_report validate_timetable(timetable const&);

// Throws validation_error carrying the report text.
void ensure_valid(timetable const&);

// Disposition timetable under the no-waiting policy: the arrival of `c0`
// and every later event of its vehicle move by `delta` (mod T_p).
void apply_delay(timetable&, connection_idx_t c0, duration delta);

}  // namespace mdtm
