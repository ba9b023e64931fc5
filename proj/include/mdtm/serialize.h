#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mdtm/timetable.h"

namespace mdtm {

// Binary model file layout (all integers little endian):
//
//   magic "MDTM" | u32 version | i32 period
//   u32 n_modes       { str name }
//   u32 n_stops       { str id | str name | f64 lat | f64 lon
//                       | i32 transfer_time | u8 is_ev_station }
//   u32 n_vehicles    { str id | u8 mode }
//   u32 n_connections { str id | u32 vehicle | u32 from | u32 to
//                       | i32 dep | i32 arr }
//   u32 n_links       { u32 from | u32 to | i32 duration | u8 mode }
//   <trailing sections, see model.h>
//
// where str = u32 length followed by the raw bytes.
inline constexpr std::uint32_t kModelVersion = 1U;

class byte_writer {
public:
  explicit byte_writer(std::vector<std::uint8_t>& out) : out_{out} {}

  void u8(std::uint8_t);
  void u32(std::uint32_t);
  void i32(std::int32_t);
  void f64(double);
  void str(std::string_view);
  void raw(std::string_view);

private:
  std::vector<std::uint8_t>& out_;
};

class byte_reader {
public:
  explicit byte_reader(std::vector<std::uint8_t> const& in) : in_{in} {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::int32_t i32();
  double f64();
  std::string str();
  std::string raw(std::size_t n);
  bool at_end() const { return pos_ == in_.size(); }

private:
  void need(std::size_t n) const;

  std::vector<std::uint8_t> const& in_;
  std::size_t pos_{0U};
};

void encode_timetable(byte_writer&, timetable const&);
timetable decode_timetable(byte_reader&);

std::vector<std::uint8_t> read_file(std::filesystem::path const&);
void write_file(std::filesystem::path const&,
                std::vector<std::uint8_t> const&);

// Human-readable export. Stops and vehicles are referenced by source id.
std::string timetable_to_json(timetable const&);
timetable timetable_from_json(std::string_view);

}  // namespace mdtm
