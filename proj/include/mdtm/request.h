#pragma once

#include "mdtm/mode.h"
#include "mdtm/types.h"

namespace mdtm {

struct query_request {
  friend bool operator==(query_request const&, query_request const&) = default;

  stop_idx_t from_, to_;
  time_point depart_;
  mode_set modes_{mode_set::all()};
};

}  // namespace mdtm
