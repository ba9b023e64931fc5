#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdtm/alt.h"
#include "mdtm/graph.h"
#include "mdtm/mode.h"
#include "mdtm/request.h"
#include "mdtm/timetable.h"
#include "mdtm/types.h"

namespace mdtm {

struct journey_leg {
  enum class kind : std::uint8_t { kRide, kLink };

  friend bool operator==(journey_leg const&, journey_leg const&) = default;

  kind kind_{kind::kRide};
  mode mode_;
  stop_idx_t from_, to_;
  elapsed_t depart_{0}, arrive_{0};  // elapsed since the query departure

  // Rides only.
  vehicle_idx_t vehicle_;
  std::vector<connection_idx_t> connections_;

  // Links only.
  link_idx_t link_;
};

struct journey {
  friend bool operator==(journey const&, journey const&) = default;

  time_point arrival(period const p) const {
    return normalize(static_cast<std::int64_t>(depart_.v_) + elapsed_, p);
  }
  std::uint32_t transfers() const {
    return boardings_ == 0U ? 0U : boardings_ - 1U;
  }

  time_point depart_;
  elapsed_t elapsed_{0};
  std::uint32_t boardings_{0U};
  std::vector<journey_leg> legs_;
};

struct search_stats {
  std::uint64_t settled_switch_{0U};
  std::uint64_t scanned_departures_{0U};
  std::uint64_t pushed_{0U};
};

// Per-query scratch memory of the earliest arrival search. Reusable across
// queries on graphs of the same size.
struct search_state {
  struct switch_pred {
    enum class kind : std::uint8_t { kNone, kOrigin, kRide, kLink };
    kind kind_{kind::kNone};
    std::uint32_t a_{0U};  // ride: connection; link: tail stop
    std::uint32_t b_{0U};  // link: offset in links_of(tail)
  };
  struct departure_pred {
    enum class kind : std::uint8_t { kNone, kBoard, kVehicle };
    kind kind_{kind::kNone};
    std::uint32_t prev_{0U};  // vehicle: previous connection
  };

  void reset(mdtm_graph const&);

  query_request q_;
  std::vector<elapsed_t> dist_switch_, dist_departure_;
  std::vector<switch_pred> switch_pred_;
  std::vector<departure_pred> departure_pred_;
  std::vector<bool> settled_;
  std::vector<std::uint32_t> touched_switch_, touched_departure_;
};

struct ea_result {
  std::optional<journey> journey_;
  search_stats stats_;
};

struct pareto_set {
  // Sorted by elapsed time (ascending), boardings strictly descending.
  std::vector<journey> journeys_;
  elapsed_t fastest_{kUnreachable};
  search_stats stats_;
};

ea_result earliest_arrival(mdtm_graph const&, query_request const&);
ea_result earliest_arrival(mdtm_graph const&, query_request const&,
                           search_state&);

ea_result earliest_arrival_alt(mdtm_graph const&, lower_bound_table const&,
                               query_request const&);
ea_result earliest_arrival_alt(mdtm_graph const&, lower_bound_table const&,
                               query_request const&, search_state&);

// Pareto set on (elapsed, boardings) restricted to elapsed <= p * fastest.
pareto_set multicriteria(mdtm_graph const&, query_request const&, double p,
                         lower_bound_table const* = nullptr);

std::optional<journey> min_transfers(mdtm_graph const&, query_request const&,
                                     double p,
                                     lower_bound_table const* = nullptr);

// Follows the predecessors of a finished search. Throws if the target has
// not been settled.
journey reconstruct_journey(mdtm_graph const&, search_state const&);

// Empty iff the journey is feasible in the timetable: chained stops, every
// ride follows one vehicle's itinerary with the scheduled times, boarding
// at a stop other than the origin happens at least transfer(S) after
// arriving there, links take their duration.
std::optional<std::string> check_journey(timetable const&,
                                         query_request const&, journey const&);

std::string journey_to_json(timetable const&, journey const&);
std::string pareto_to_json(timetable const&, pareto_set const&);

}  // namespace mdtm
