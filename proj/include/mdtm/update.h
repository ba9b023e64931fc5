#pragma once

#include <chrono>
#include <vector>

#include "mdtm/graph.h"
#include "mdtm/types.h"

namespace mdtm {

struct delay_event {
  connection_idx_t connection_;
  duration delta_;  // 0 <= delta < T_p
};

struct update_report {
  std::vector<connection_idx_t> affected_;  // c_0, ..., c_k
  std::vector<group_idx_t> groups_;  // reordered groups, index rebuilt
  std::chrono::nanoseconds elapsed_{0};
};

// c0 followed by the later connections of its vehicle, in itinerary order.
std::vector<connection_idx_t> affected_connections(mdtm_graph const&,
                                                   connection_idx_t c0);

// Delays the arrival of c0 and every later event of its vehicle by delta
// (no-waiting policy). A zero delay leaves the graph untouched and returns
// an empty report. Throws validation_error if a travel time or vehicle arc
// would reach a full period; the graph is unchanged in that case.
update_report apply_delay(mdtm_graph&, delay_event const&);

}  // namespace mdtm
