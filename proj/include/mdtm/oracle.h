#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mdtm/request.h"
#include "mdtm/timetable.h"
#include "mdtm/types.h"

// Reference searches that work directly on the timetable. Slow by design.
namespace mdtm::oracle {

struct event {
  connection_idx_t connection_;
  elapsed_t dep_, arr_;  // elapsed since the query departure
  std::uint32_t next_;  // same vehicle's following event, or kNoEvent
};

inline constexpr auto kNoEvent = std::uint32_t{0xFFFF'FFFFU};

// Departure events of every connection of a selected mode, for all periods
// that start within the search horizon.
struct event_graph {
  event_graph(timetable const&, query_request const&);

  std::vector<event> events_;
  std::vector<std::vector<std::uint32_t>> by_stop_;  // sorted by dep_
  elapsed_t horizon_;
};

struct label {
  friend bool operator==(label const&, label const&) = default;
  elapsed_t elapsed_;
  std::uint32_t boardings_;
};

inline constexpr auto kMaxParetoStops = std::size_t{50U};
inline constexpr auto kMaxParetoConnections = std::size_t{5000U};

std::optional<elapsed_t> earliest_arrival(timetable const&,
                                          query_request const&);

// Non-dominated (elapsed, boardings) pairs with elapsed <= p * fastest,
// sorted by elapsed. Throws on instances above the size guard.
std::vector<label> pareto(timetable const&, query_request const&, double p);

}  // namespace mdtm::oracle
