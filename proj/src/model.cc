#include "mdtm/model.h"

#include "fmt/core.h"

#include "mdtm/serialize.h"

namespace mdtm {

std::vector<std::uint8_t> encode_model(model const& m) {
  auto out = std::vector<std::uint8_t>{};
  auto w = byte_writer{out};
  encode_timetable(w, m.tt_);
  w.u8(m.lb_.has_value() ? 1U : 0U);
  if (m.lb_.has_value()) {
    m.lb_->encode(w);
  }
  return out;
}

model decode_model(std::vector<std::uint8_t> const& bytes) {
  auto r = byte_reader{bytes};
  auto m = model{};
  m.tt_ = decode_timetable(r);
  if (r.u8() != 0U) {
    m.lb_ = lower_bound_table::decode(r);
    if (m.lb_->n_stops() != m.tt_.stops_.size()) {
      throw parse_error{fmt::format(
          "lower bound table covers {} stops, timetable has {}",
          m.lb_->n_stops(), m.tt_.stops_.size())};
    }
  }
  if (!r.at_end()) {
    throw parse_error{"trailing bytes after model"};
  }
  return m;
}

void write_model(std::filesystem::path const& p, model const& m) {
  write_file(p, encode_model(m));
}

model read_model(std::filesystem::path const& p) {
  return decode_model(read_file(p));
}

}  // namespace mdtm
