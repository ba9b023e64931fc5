#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "mdtm/graph.h"
#include "mdtm/serialize.h"
#include "mdtm/types.h"

namespace mdtm {

struct alt_config;

// Stop-to-stop travel time lower bounds. Either the dense all-pairs matrix
// of condensed-graph distances (every stop is a landmark) or, when that does
// not fit the memory budget, distances to and from a sample of landmark
// stops combined with the triangle inequality.
class lower_bound_table {
public:
  enum class kind : std::uint8_t { kAllPairs = 0U, kLandmarks = 1U };

  static constexpr std::int32_t kInfinity =
      std::numeric_limits<std::int32_t>::max();

  // Every bound zero (plain Dijkstra order).
  static lower_bound_table zeros(std::size_t n_stops);

  // kUnreachable when `target` cannot be reached from `at`.
  elapsed_t potential(stop_idx_t at, stop_idx_t target) const;

  kind get_kind() const { return kind_; }
  std::size_t n_stops() const { return n_; }
  std::span<stop_idx_t const> landmarks() const { return landmarks_; }
  std::size_t size_bytes() const {
    return (all_pairs_.size() + to_landmark_.size() + from_landmark_.size()) *
           sizeof(std::int32_t);
  }

  // Direct access for fault injection in tests.
  std::int32_t& all_pairs_entry(stop_idx_t from, stop_idx_t to) {
    return all_pairs_[to_idx(from) * n_ + to_idx(to)];
  }

  void encode(byte_writer&) const;
  static lower_bound_table decode(byte_reader&);

  friend bool operator==(lower_bound_table const&,
                         lower_bound_table const&) = default;

  friend lower_bound_table preprocess_landmarks(condensed_graph const&,
                                                alt_config const&);

private:
  kind kind_{kind::kAllPairs};
  std::size_t n_{0U};
  std::vector<std::int32_t> all_pairs_;  // n x n, row = from
  std::vector<stop_idx_t> landmarks_;
  std::vector<std::int32_t> to_landmark_;  // k x n: dist(v, l)
  std::vector<std::int32_t> from_landmark_;  // k x n: dist(l, v)
};

struct alt_config {
  // Switch to landmark sampling when the dense matrix would exceed this.
  std::size_t memory_budget_bytes_{std::size_t{1} << 30U};
  // Forces landmark sampling with this many landmarks.
  std::optional<std::uint32_t> n_landmarks_;
  std::uint32_t default_landmarks_{16U};
  std::uint64_t seed_{1U};
};

lower_bound_table preprocess_landmarks(condensed_graph const&,
                                       alt_config const& = {});

inline elapsed_t potential(lower_bound_table const& lb, stop_idx_t const at,
                           stop_idx_t const target) {
  return lb.potential(at, target);
}

// Condensed-graph distances from one stop (kInfinity when unreachable).
std::vector<std::int32_t> condensed_distances(condensed_graph const&,
                                              stop_idx_t from,
                                              bool reverse = false);

struct feasibility_violation {
  stop_idx_t from_, to_, target_;
  elapsed_t lhs_, rhs_;  // lb(from, target) > w(from, to) + lb(to, target)
};

// Checks lb(A, T) <= w(A, B) + lb(B, T) for every condensed arc (A, B) and
// every target T (or `n_targets` sampled targets).
std::vector<feasibility_violation> verify_feasibility(
    mdtm_graph const&, lower_bound_table const&,
    std::optional<std::size_t> n_targets = std::nullopt,
    std::uint64_t seed = 1U);

}  // namespace mdtm
