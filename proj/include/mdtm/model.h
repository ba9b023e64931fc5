#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "mdtm/alt.h"
#include "mdtm/timetable.h"

namespace mdtm {

// Model file: the timetable layout of serialize.h followed by
//
//   u8 has_lower_bounds [ lower bound table ]
//
// The graph is rebuilt from the timetable on load.
struct model {
  friend bool operator==(model const&, model const&) = default;

  timetable tt_;
  std::optional<lower_bound_table> lb_;
};

std::vector<std::uint8_t> encode_model(model const&);
model decode_model(std::vector<std::uint8_t> const&);

void write_model(std::filesystem::path const&, model const&);
model read_model(std::filesystem::path const&);

}  // namespace mdtm
