#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mdtm {

struct mode {
  constexpr mode() = default;
  constexpr explicit mode(std::uint8_t const v) : v_{v} {}
  friend constexpr auto operator<=>(mode, mode) = default;
  std::uint8_t v_{0};
};

namespace modes {
inline constexpr mode kBus{0U};
inline constexpr mode kTrain{1U};
inline constexpr mode kTram{2U};
inline constexpr mode kWalk{3U};
inline constexpr mode kEv{4U};
inline constexpr auto kMaxModes = 32U;
}  // namespace modes

class mode_set {
public:
  constexpr mode_set() = default;
  constexpr mode_set(std::initializer_list<mode> l) {
    for (auto const m : l) {
      insert(m);
    }
  }

  static constexpr mode_set all() {
    mode_set s;
    s.bits_ = ~0U;
    return s;
  }

  constexpr void insert(mode const m) { bits_ |= 1U << m.v_; }
  constexpr bool contains(mode const m) const {
    return (bits_ & (1U << m.v_)) != 0U;
  }
  constexpr bool empty() const { return bits_ == 0U; }
  constexpr std::uint32_t bits() const { return bits_; }

  friend constexpr bool operator==(mode_set, mode_set) = default;

private:
  std::uint32_t bits_{0U};
};

// Names of the modes known to a timetable. The first five entries are the
// built-in modes; feeds may register more.
struct mode_registry {
  mode_registry();

  std::optional<mode> find(std::string_view name) const;
  mode get_or_add(std::string_view name);
  std::string const& name(mode) const;

  // Parses "bus,train,walk". "all" selects every registered mode.
  mode_set parse_set(std::string_view) const;

  friend bool operator==(mode_registry const&, mode_registry const&) = default;

  std::vector<std::string> names_;
};

}  // namespace mdtm
