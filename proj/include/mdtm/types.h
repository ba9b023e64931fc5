#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mdtm {

template <typename T, typename Tag>
struct strong {
  using value_t = T;

  constexpr strong() = default;
  constexpr explicit strong(T const v) : v_{v} {}

  static constexpr strong invalid() {
    return strong{std::numeric_limits<T>::max()};
  }

  constexpr bool valid() const { return v_ != std::numeric_limits<T>::max(); }

  friend constexpr auto operator<=>(strong, strong) = default;

  T v_{std::numeric_limits<T>::max()};
};

template <typename T>
constexpr auto to_idx(T const& s) {
  return s.v_;
}

using stop_idx_t = strong<std::uint32_t, struct stop_idx_tag>;
using vehicle_idx_t = strong<std::uint32_t, struct vehicle_idx_tag>;
using connection_idx_t = strong<std::uint32_t, struct connection_idx_tag>;
using link_idx_t = strong<std::uint32_t, struct link_idx_tag>;

// Seconds by default; fixtures may use other units together with a matching
// period.
struct duration {
  constexpr duration() = default;
  constexpr explicit duration(std::int32_t const v) : v_{v} {}

  friend constexpr auto operator<=>(duration, duration) = default;
  friend constexpr duration operator+(duration a, duration b) {
    return duration{a.v_ + b.v_};
  }

  std::int32_t v_{0};
};

// A point of the cyclic timetable day: 0 <= v_ < period.
struct time_point {
  constexpr time_point() = default;
  constexpr explicit time_point(std::int32_t const v) : v_{v} {}

  friend constexpr auto operator<=>(time_point, time_point) = default;

  std::int32_t v_{0};
};

struct period {
  constexpr explicit period(std::int32_t const v = 86'400) : v_{v} {}
  friend constexpr auto operator<=>(period, period) = default;
  std::int32_t v_;
};

inline constexpr period kDefaultPeriod{86'400};

// Δ(t1, t2) = (t2 - t1) mod T_p
constexpr duration cyclic_delta(time_point const t1, time_point const t2,
                                period const p = kDefaultPeriod) {
  auto const d = (t2.v_ - t1.v_) % p.v_;
  return duration{d < 0 ? d + p.v_ : d};
}

constexpr time_point normalize(std::int64_t const t, period const p) {
  auto const r = t % p.v_;
  return time_point{static_cast<std::int32_t>(r < 0 ? r + p.v_ : r)};
}

constexpr time_point shift(time_point const t, duration const d,
                           period const p) {
  return normalize(static_cast<std::int64_t>(t.v_) + d.v_, p);
}

// Elapsed seconds since the query departure. Not reduced mod T_p.
using elapsed_t = std::int64_t;
inline constexpr elapsed_t kUnreachable = std::numeric_limits<elapsed_t>::max();

// Largest elapsed value a search keeps: arrivals later than two full periods
// after the departure are treated as unreachable.
constexpr elapsed_t search_horizon(period const p) {
  return 2 * static_cast<elapsed_t>(p.v_);
}

// Largest admissible elapsed time for a multicriteria answer whose fastest
// journey takes `fastest`.
elapsed_t elapsed_threshold(double p, elapsed_t fastest);

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct validation_error : error {
  using error::error;
};

struct parse_error : error {
  using error::error;
};

std::string format_time(time_point);
std::string format_elapsed(elapsed_t);

// Accepts "HH:MM:SS", "HH:MM" or a plain number of seconds. Hours may exceed
// 23; the value is not reduced.
std::int64_t parse_time(std::string_view);

}  // namespace mdtm
