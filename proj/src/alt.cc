#include "mdtm/alt.h"

#include <algorithm>
#include <queue>
#include <random>

namespace mdtm {

namespace {

constexpr auto kInf = lower_bound_table::kInfinity;

std::vector<std::vector<condensed_graph::arc>> reversed(
    condensed_graph const& cg) {
  auto rev = std::vector<std::vector<condensed_graph::arc>>(cg.n_stops());
  for (auto s = 0U; s != cg.n_stops(); ++s) {
    for (auto const& a : cg.arcs_of(stop_idx_t{s})) {
      rev[to_idx(a.to_)].push_back({stop_idx_t{s}, a.weight_});
    }
  }
  return rev;
}

template <typename Arcs>
std::vector<std::int32_t> dijkstra(std::size_t const n, stop_idx_t const from,
                                   Arcs&& arcs_of) {
  auto dist = std::vector<std::int64_t>(n, std::numeric_limits<std::int64_t>::max());
  using entry = std::pair<std::int64_t, std::uint32_t>;
  auto pq = std::priority_queue<entry, std::vector<entry>, std::greater<>>{};
  dist[to_idx(from)] = 0;
  pq.emplace(0, to_idx(from));
  while (!pq.empty()) {
    auto const [d, s] = pq.top();
    pq.pop();
    if (d != dist[s]) {
      continue;
    }
    for (auto const& a : arcs_of(s)) {
      auto const nd = d + a.weight_.v_;
      if (nd < dist[to_idx(a.to_)]) {
        dist[to_idx(a.to_)] = nd;
        pq.emplace(nd, to_idx(a.to_));
      }
    }
  }
  auto out = std::vector<std::int32_t>(n);
  std::transform(begin(dist), end(dist), begin(out), [](std::int64_t const d) {
    return d >= kInf ? kInf : static_cast<std::int32_t>(d);
  });
  return out;
}

}  // namespace

std::vector<std::int32_t> condensed_distances(condensed_graph const& cg,
                                              stop_idx_t const from,
                                              bool const reverse) {
  if (reverse) {
    auto const rev = reversed(cg);
    return dijkstra(cg.n_stops(), from,
                    [&](std::uint32_t const s) -> auto const& { return rev[s]; });
  }
  return dijkstra(cg.n_stops(), from, [&](std::uint32_t const s) {
    return cg.arcs_of(stop_idx_t{s});
  });
}

lower_bound_table lower_bound_table::zeros(std::size_t const n_stops) {
  auto lb = lower_bound_table{};
  lb.n_ = n_stops;
  lb.all_pairs_.assign(n_stops * n_stops, 0);
  return lb;
}

elapsed_t lower_bound_table::potential(stop_idx_t const at,
                                       stop_idx_t const target) const {
  if (kind_ == kind::kAllPairs) {
    auto const v = all_pairs_[to_idx(at) * n_ + to_idx(target)];
    return v == kInf ? kUnreachable : v;
  }

  if (at == target) {
    return 0;
  }
  auto best = elapsed_t{0};
  for (auto l = 0U; l != landmarks_.size(); ++l) {
    auto const to = std::span{to_landmark_}.subspan(l * n_, n_);
    auto const from = std::span{from_landmark_}.subspan(l * n_, n_);

    // dist(at, l) - dist(target, l)
    auto const at_l = to[to_idx(at)];
    auto const t_l = to[to_idx(target)];
    if (t_l != kInf) {
      if (at_l == kInf) {
        return kUnreachable;  // at -> target -> l would reach l
      }
      best = std::max(best, static_cast<elapsed_t>(at_l) - t_l);
    }

    // dist(l, target) - dist(l, at)
    auto const l_t = from[to_idx(target)];
    auto const l_at = from[to_idx(at)];
    if (l_t != kInf && l_at != kInf) {
      best = std::max(best, static_cast<elapsed_t>(l_t) - l_at);
    }
  }
  return best;
}

void lower_bound_table::encode(byte_writer& w) const {
  w.u8(static_cast<std::uint8_t>(kind_));
  w.u32(static_cast<std::uint32_t>(n_));
  w.u32(static_cast<std::uint32_t>(landmarks_.size()));
  for (auto const l : landmarks_) {
    w.u32(to_idx(l));
  }
  for (auto const v : all_pairs_) {
    w.i32(v);
  }
  for (auto const v : to_landmark_) {
    w.i32(v);
  }
  for (auto const v : from_landmark_) {
    w.i32(v);
  }
}

lower_bound_table lower_bound_table::decode(byte_reader& r) {
  auto lb = lower_bound_table{};
  auto const k = r.u8();
  if (k > 1U) {
    throw parse_error{"unknown lower bound table kind"};
  }
  lb.kind_ = static_cast<kind>(k);
  lb.n_ = r.u32();
  lb.landmarks_.resize(r.u32());
  for (auto& l : lb.landmarks_) {
    l = stop_idx_t{r.u32()};
  }
  if (lb.kind_ == kind::kAllPairs) {
    lb.all_pairs_.resize(lb.n_ * lb.n_);
    for (auto& v : lb.all_pairs_) {
      v = r.i32();
    }
  } else {
    lb.to_landmark_.resize(lb.landmarks_.size() * lb.n_);
    for (auto& v : lb.to_landmark_) {
      v = r.i32();
    }
    lb.from_landmark_.resize(lb.landmarks_.size() * lb.n_);
    for (auto& v : lb.from_landmark_) {
      v = r.i32();
    }
  }
  return lb;
}

lower_bound_table preprocess_landmarks(condensed_graph const& cg,
                                       alt_config const& cfg) {
  auto const n = cg.n_stops();
  auto lb = lower_bound_table{};
  lb.n_ = n;

  auto const dense_bytes = n * n * sizeof(std::int32_t);
  if (!cfg.n_landmarks_.has_value() && dense_bytes <= cfg.memory_budget_bytes_) {
    lb.kind_ = lower_bound_table::kind::kAllPairs;
    lb.all_pairs_.resize(n * n);
    for (auto s = 0U; s != n; ++s) {
      auto const row = condensed_distances(cg, stop_idx_t{s});
      std::copy(begin(row), end(row), begin(lb.all_pairs_) + s * n);
    }
    return lb;
  }

  lb.kind_ = lower_bound_table::kind::kLandmarks;
  auto const k = std::min<std::size_t>(
      n, cfg.n_landmarks_.value_or(cfg.default_landmarks_));
  auto candidates = std::vector<std::uint32_t>(n);
  for (auto i = 0U; i != n; ++i) {
    candidates[i] = i;
  }
  auto rng = std::mt19937_64{cfg.seed_};
  for (auto i = 0U; i != k; ++i) {
    auto const j = std::uniform_int_distribution<std::size_t>{i, n - 1U}(rng);
    std::swap(candidates[i], candidates[j]);
    lb.landmarks_.emplace_back(candidates[i]);
  }

  auto const rev = reversed(cg);
  for (auto const l : lb.landmarks_) {
    // dist(v, l) is a backward search from l.
    auto const to = dijkstra(
        n, l, [&](std::uint32_t const s) -> auto const& { return rev[s]; });
    auto const from = dijkstra(
        n, l, [&](std::uint32_t const s) { return cg.arcs_of(stop_idx_t{s}); });
    lb.to_landmark_.insert(end(lb.to_landmark_), begin(to), end(to));
    lb.from_landmark_.insert(end(lb.from_landmark_), begin(from), end(from));
  }
  return lb;
}

std::vector<feasibility_violation> verify_feasibility(
    mdtm_graph const& g, lower_bound_table const& lb,
    std::optional<std::size_t> const n_targets, std::uint64_t const seed) {
  auto const cg = condense(g);
  auto const n = cg.n_stops();

  auto targets = std::vector<stop_idx_t>{};
  if (!n_targets.has_value() || *n_targets >= n) {
    for (auto i = 0U; i != n; ++i) {
      targets.emplace_back(i);
    }
  } else if (n != 0U) {
    auto rng = std::mt19937_64{seed};
    auto dist = std::uniform_int_distribution<std::uint32_t>{
        0U, static_cast<std::uint32_t>(n - 1U)};
    for (auto i = 0U; i != *n_targets; ++i) {
      targets.emplace_back(dist(rng));
    }
  }

  auto violations = std::vector<feasibility_violation>{};
  for (auto const t : targets) {
    if (auto const self = lb.potential(t, t); self != 0) {
      violations.push_back({t, t, t, self, 0});
    }
    for (auto a = 0U; a != n; ++a) {
      auto const from = stop_idx_t{a};
      auto const lhs = lb.potential(from, t);
      for (auto const& arc : cg.arcs_of(from)) {
        auto const pb = lb.potential(arc.to_, t);
        auto const rhs = pb == kUnreachable ? kUnreachable : arc.weight_.v_ + pb;
        if (lhs > rhs) {
          violations.push_back({from, arc.to_, t, lhs, rhs});
        }
      }
    }
  }
  return violations;
}

}  // namespace mdtm
