#include "mdtm/serialize.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <unordered_map>

#include "fmt/core.h"
#include "json.hpp"

namespace mdtm {

void byte_writer::u8(std::uint8_t const v) { out_.push_back(v); }

void byte_writer::u32(std::uint32_t const v) {
  for (auto i = 0U; i != 4U; ++i) {
    out_.push_back(static_cast<std::uint8_t>((v >> (8U * i)) & 0xFFU));
  }
}

void byte_writer::i32(std::int32_t const v) {
  u32(static_cast<std::uint32_t>(v));
}

void byte_writer::f64(double const v) {
  auto const bits = std::bit_cast<std::uint64_t>(v);
  for (auto i = 0U; i != 8U; ++i) {
    out_.push_back(static_cast<std::uint8_t>((bits >> (8U * i)) & 0xFFU));
  }
}

void byte_writer::str(std::string_view const s) {
  u32(static_cast<std::uint32_t>(s.size()));
  raw(s);
}

void byte_writer::raw(std::string_view const s) {
  out_.insert(end(out_), begin(s), end(s));
}

void byte_reader::need(std::size_t const n) const {
  if (in_.size() - pos_ < n) {
    throw parse_error{fmt::format("model file truncated at byte {}", pos_)};
  }
}

std::uint8_t byte_reader::u8() {
  need(1U);
  return in_[pos_++];
}

std::uint32_t byte_reader::u32() {
  need(4U);
  auto v = std::uint32_t{0U};
  for (auto i = 0U; i != 4U; ++i) {
    v |= static_cast<std::uint32_t>(in_[pos_++]) << (8U * i);
  }
  return v;
}

std::int32_t byte_reader::i32() { return static_cast<std::int32_t>(u32()); }

double byte_reader::f64() {
  need(8U);
  auto bits = std::uint64_t{0U};
  for (auto i = 0U; i != 8U; ++i) {
    bits |= static_cast<std::uint64_t>(in_[pos_++]) << (8U * i);
  }
  return std::bit_cast<double>(bits);
}

std::string byte_reader::str() { return raw(u32()); }

std::string byte_reader::raw(std::size_t const n) {
  need(n);
  auto s = std::string(reinterpret_cast<char const*>(in_.data() + pos_), n);
  pos_ += n;
  return s;
}

void encode_timetable(byte_writer& w, timetable const& tt) {
  w.raw("MDTM");
  w.u32(kModelVersion);
  w.i32(tt.period_.v_);

  w.u32(static_cast<std::uint32_t>(tt.modes_.names_.size()));
  for (auto const& m : tt.modes_.names_) {
    w.str(m);
  }

  w.u32(static_cast<std::uint32_t>(tt.stops_.size()));
  for (auto const& s : tt.stops_) {
    w.str(s.id_);
    w.str(s.name_);
    w.f64(s.lat_);
    w.f64(s.lon_);
    w.i32(s.transfer_time_.v_);
    w.u8(s.is_ev_station_ ? 1U : 0U);
  }

  w.u32(static_cast<std::uint32_t>(tt.vehicles_.size()));
  for (auto const& v : tt.vehicles_) {
    w.str(v.id_);
    w.u8(v.mode_.v_);
  }

  w.u32(static_cast<std::uint32_t>(tt.connections_.size()));
  for (auto const& c : tt.connections_) {
    w.str(c.id_);
    w.u32(c.vehicle_.v_);
    w.u32(c.from_.v_);
    w.u32(c.to_.v_);
    w.i32(c.dep_.v_);
    w.i32(c.arr_.v_);
  }

  w.u32(static_cast<std::uint32_t>(tt.links_.size()));
  for (auto const& l : tt.links_) {
    w.u32(l.from_.v_);
    w.u32(l.to_.v_);
    w.i32(l.duration_.v_);
    w.u8(l.mode_.v_);
  }
}

timetable decode_timetable(byte_reader& r) {
  if (r.raw(4U) != "MDTM") {
    throw parse_error{"not a model file (bad magic)"};
  }
  if (auto const v = r.u32(); v != kModelVersion) {
    throw parse_error{fmt::format("unsupported model version {}", v)};
  }

  auto tt = timetable{};
  tt.period_ = period{r.i32()};
  if (tt.period_.v_ <= 0) {
    throw parse_error{"model period must be positive"};
  }

  tt.modes_.names_.resize(r.u32());
  for (auto& m : tt.modes_.names_) {
    m = r.str();
  }

  tt.stops_.resize(r.u32());
  for (auto& s : tt.stops_) {
    s.id_ = r.str();
    s.name_ = r.str();
    s.lat_ = r.f64();
    s.lon_ = r.f64();
    s.transfer_time_ = duration{r.i32()};
    s.is_ev_station_ = r.u8() != 0U;
  }

  tt.vehicles_.resize(r.u32());
  for (auto& v : tt.vehicles_) {
    v.id_ = r.str();
    v.mode_ = mode{r.u8()};
  }

  tt.connections_.resize(r.u32());
  for (auto& c : tt.connections_) {
    c.id_ = r.str();
    c.vehicle_ = vehicle_idx_t{r.u32()};
    c.from_ = stop_idx_t{r.u32()};
    c.to_ = stop_idx_t{r.u32()};
    c.dep_ = time_point{r.i32()};
    c.arr_ = time_point{r.i32()};
  }

  tt.links_.resize(r.u32());
  for (auto& l : tt.links_) {
    l.from_ = stop_idx_t{r.u32()};
    l.to_ = stop_idx_t{r.u32()};
    l.duration_ = duration{r.i32()};
    l.mode_ = mode{r.u8()};
  }

  return tt;
}

std::vector<std::uint8_t> read_file(std::filesystem::path const& p) {
  auto in = std::ifstream{p, std::ios::binary};
  if (!in) {
    throw error{fmt::format("cannot open {}", p.string())};
  }
  return {std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
}

void write_file(std::filesystem::path const& p,
                std::vector<std::uint8_t> const& bytes) {
  auto out = std::ofstream{p, std::ios::binary | std::ios::trunc};
  if (!out) {
    throw error{fmt::format("cannot write {}", p.string())};
  }
  out.write(reinterpret_cast<char const*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

std::string timetable_to_json(timetable const& tt) {
  using nlohmann::json;

  auto stop_id = [&](stop_idx_t const s) -> json {
    return s.valid() && to_idx(s) < tt.stops_.size()
               ? json(tt.stops_[to_idx(s)].id_)
               : json(nullptr);
  };

  auto j = json::object();
  j["period"] = tt.period_.v_;
  j["modes"] = tt.modes_.names_;

  auto& stops = j["stops"] = json::array();
  for (auto const& s : tt.stops_) {
    stops.push_back({{"id", s.id_},
                     {"name", s.name_},
                     {"lat", s.lat_},
                     {"lon", s.lon_},
                     {"transfer_time", s.transfer_time_.v_},
                     {"ev_station", s.is_ev_station_}});
  }

  auto& vehicles = j["vehicles"] = json::array();
  for (auto const& v : tt.vehicles_) {
    vehicles.push_back({{"id", v.id_}, {"mode", tt.modes_.name(v.mode_)}});
  }

  auto& connections = j["connections"] = json::array();
  for (auto const& c : tt.connections_) {
    connections.push_back(
        {{"id", c.id_},
         {"vehicle", c.vehicle_.valid() && to_idx(c.vehicle_) <
                                               tt.vehicles_.size()
                         ? json(tt.vehicles_[to_idx(c.vehicle_)].id_)
                         : json(nullptr)},
         {"from", stop_id(c.from_)},
         {"to", stop_id(c.to_)},
         {"dep", c.dep_.v_},
         {"arr", c.arr_.v_}});
  }

  auto& links = j["links"] = json::array();
  for (auto const& l : tt.links_) {
    links.push_back({{"from", stop_id(l.from_)},
                     {"to", stop_id(l.to_)},
                     {"duration", l.duration_.v_},
                     {"mode", tt.modes_.name(l.mode_)}});
  }

  return j.dump(2);
}

timetable timetable_from_json(std::string_view const s) {
  using nlohmann::json;

  auto j = json{};
  try {
    j = json::parse(s);
  } catch (json::parse_error const& e) {
    throw parse_error{fmt::format("timetable JSON: {}", e.what())};
  }

  try {
    auto tt = timetable{};
    tt.period_ = period{j.value("period", kDefaultPeriod.v_)};
    if (j.contains("modes")) {
      tt.modes_.names_ = j.at("modes").get<std::vector<std::string>>();
    }

    auto stop_idx = std::unordered_map<std::string, stop_idx_t>{};
    for (auto const& js : j.value("stops", json::array())) {
      auto s = stop{};
      s.id_ = js.at("id").get<std::string>();
      s.name_ = js.value("name", s.id_);
      s.lat_ = js.value("lat", 0.0);
      s.lon_ = js.value("lon", 0.0);
      s.transfer_time_ = duration{js.value("transfer_time", 0)};
      s.is_ev_station_ = js.value("ev_station", false);
      stop_idx.emplace(s.id_, stop_idx_t{
                                  static_cast<std::uint32_t>(tt.stops_.size())});
      tt.stops_.emplace_back(std::move(s));
    }

    auto const lookup_stop = [&](json const& v) {
      if (!v.is_string()) {
        return stop_idx_t::invalid();
      }
      auto const it = stop_idx.find(v.get<std::string>());
      return it == end(stop_idx) ? stop_idx_t::invalid() : it->second;
    };
    auto const lookup_mode = [&](json const& v) {
      return tt.modes_.get_or_add(v.get<std::string>());
    };

    auto vehicle_idx = std::unordered_map<std::string, vehicle_idx_t>{};
    for (auto const& jv : j.value("vehicles", json::array())) {
      auto v = vehicle{jv.at("id").get<std::string>(), lookup_mode(jv.at("mode"))};
      vehicle_idx.emplace(
          v.id_,
          vehicle_idx_t{static_cast<std::uint32_t>(tt.vehicles_.size())});
      tt.vehicles_.emplace_back(std::move(v));
    }

    for (auto const& jc : j.value("connections", json::array())) {
      auto c = connection{};
      c.id_ = jc.at("id").get<std::string>();
      auto const& v = jc.at("vehicle");
      if (v.is_string()) {
        if (auto const it = vehicle_idx.find(v.get<std::string>());
            it != end(vehicle_idx)) {
          c.vehicle_ = it->second;
        }
      }
      c.from_ = lookup_stop(jc.at("from"));
      c.to_ = lookup_stop(jc.at("to"));
      c.dep_ = time_point{jc.at("dep").get<std::int32_t>()};
      c.arr_ = time_point{jc.at("arr").get<std::int32_t>()};
      tt.connections_.emplace_back(std::move(c));
    }

    for (auto const& jl : j.value("links", json::array())) {
      tt.links_.push_back({lookup_stop(jl.at("from")), lookup_stop(jl.at("to")),
                           duration{jl.at("duration").get<std::int32_t>()},
                           lookup_mode(jl.value("mode", json("walk")))});
    }
    return tt;
  } catch (json::exception const& e) {
    throw parse_error{fmt::format("timetable JSON: {}", e.what())};
  }
}

}  // namespace mdtm
