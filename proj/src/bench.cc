#include "mdtm/bench.h"

#include <chrono>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include "fmt/core.h"
#include "fmt/ostream.h"

namespace mdtm {

std::vector<query_request> random_queries(timetable const& tt,
                                          std::size_t const n,
                                          std::uint64_t const seed) {
  if (tt.stops_.empty()) {
    throw validation_error{"cannot draw queries on a timetable without stops"};
  }
  auto rng = std::mt19937_64{seed};
  auto stop = std::uniform_int_distribution<std::uint32_t>{
      0U, static_cast<std::uint32_t>(tt.stops_.size() - 1U)};
  auto time = std::uniform_int_distribution<std::int32_t>{0, tt.period_.v_ - 1};
  auto out = std::vector<query_request>{};
  out.reserve(n);
  for (auto i = std::size_t{0U}; i != n; ++i) {
    auto q = query_request{};
    q.from_ = stop_idx_t{stop(rng)};
    q.to_ = stop_idx_t{stop(rng)};
    q.depart_ = time_point{time(rng)};
    out.push_back(q);
  }
  return out;
}

std::vector<delay_event> random_delays(timetable const& tt, std::size_t const n,
                                       duration const min, duration const max,
                                       std::uint64_t const seed) {
  if (tt.connections_.empty() && n != 0U) {
    throw validation_error{"cannot draw delays without connections"};
  }
  if (max < min) {
    throw validation_error{"empty delay range"};
  }
  auto rng = std::mt19937_64{seed};
  auto conn = std::uniform_int_distribution<std::uint32_t>{
      0U, static_cast<std::uint32_t>(tt.connections_.size() - 1U)};
  auto delta = std::uniform_int_distribution<std::int32_t>{min.v_, max.v_};
  auto out = std::vector<delay_event>{};
  out.reserve(n);
  for (auto i = std::size_t{0U}; i != n; ++i) {
    auto const c = connection_idx_t{conn(rng)};
    out.push_back({c, duration{delta(rng)}});
  }
  return out;
}

namespace {

double mean_of(std::vector<bench_row> const& rows, std::string const& kind,
               auto&& value) {
  auto sum = 0.0;
  auto n = std::size_t{0U};
  for (auto const& r : rows) {
    if (r.kind_ == kind) {
      sum += value(r);
      ++n;
    }
  }
  return n == 0U ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace

double bench_report::mean_micros(std::string const& kind) const {
  return mean_of(rows_, kind, [](bench_row const& r) { return r.micros_; });
}

double bench_report::mean_settled(std::string const& kind) const {
  return mean_of(rows_, kind, [](bench_row const& r) {
    return static_cast<double>(r.settled_);
  });
}

void bench_report::write_csv(std::ostream& out) const {
  for (auto const& [k, v] : descriptor_) {
    fmt::print(out, "# {}={}\n", k, v);
  }
  fmt::print(out, "kind,index,micros,settled_switch,scanned_departures,result\n");
  for (auto const& r : rows_) {
    fmt::print(out, "{},{},{:.3f},{},{},{}\n", r.kind_, r.index_, r.micros_,
               r.settled_, r.scanned_, r.elapsed_);
  }
}

bench_report run_bench(mdtm_graph& g, lower_bound_table const* lb,
                       bench_workload const& w, bench_options const& opt) {
  using clock = std::chrono::steady_clock;

  if (opt.alt_ && lb == nullptr) {
    throw error{"ALT benchmark requested without a lower bound table"};
  }
  for (auto const& q : w.queries_) {
    if (to_idx(q.from_) >= g.n_switch_nodes() ||
        to_idx(q.to_) >= g.n_switch_nodes()) {
      throw error{"workload references stops outside the model"};
    }
  }
  for (auto const& d : w.delays_) {
    if (to_idx(d.connection_) >= g.n_departure_nodes()) {
      throw error{"workload references connections outside the model"};
    }
  }

  auto report = bench_report{};
  report.descriptor_ = {
      {"stops", std::to_string(g.n_switch_nodes())},
      {"connections", std::to_string(g.n_departure_nodes())},
      {"nodes", std::to_string(g.n_nodes())},
      {"arcs", std::to_string(g.n_arcs())},
      {"queries", std::to_string(w.queries_.size())},
      {"delays", std::to_string(w.delays_.size())},
      {"warmup", std::to_string(opt.warmup_)},
      {"threads", std::to_string(opt.threads_)},
      {"p", fmt::format("{}", opt.p_)}};

  auto const run_kind = [&](std::string const& kind, auto&& run_one) {
    auto s = search_state{};
    for (auto i = std::size_t{0U}; i < std::min(opt.warmup_, w.queries_.size());
         ++i) {
      run_one(w.queries_[i], s);
    }

    auto rows = std::vector<bench_row>(w.queries_.size());
    auto const n_threads = std::max(1U, opt.threads_);
    auto const work = [&](unsigned const t) {
      auto state = search_state{};
      for (auto i = std::size_t{t}; i < w.queries_.size(); i += n_threads) {
        auto const start = clock::now();
        auto const [stats, elapsed] = run_one(w.queries_[i], state);
        auto const us = std::chrono::duration<double, std::micro>(
                            clock::now() - start)
                            .count();
        rows[i] = {kind, i, us, stats.settled_switch_,
                   stats.scanned_departures_, elapsed};
      }
    };
    if (n_threads == 1U) {
      work(0U);
    } else {
      auto threads = std::vector<std::jthread>{};
      for (auto t = 0U; t != n_threads; ++t) {
        threads.emplace_back(work, t);
      }
    }
    report.rows_.insert(end(report.rows_), begin(rows), end(rows));
  };

  auto const elapsed_of = [](ea_result const& r) {
    return r.journey_ ? r.journey_->elapsed_ : elapsed_t{-1};
  };

  if (opt.plain_) {
    run_kind("ea", [&](query_request const& q, search_state& s) {
      auto const r = earliest_arrival(g, q, s);
      return std::pair{r.stats_, elapsed_of(r)};
    });
  }
  if (opt.alt_) {
    run_kind("ea_alt", [&](query_request const& q, search_state& s) {
      auto const r = earliest_arrival_alt(g, *lb, q, s);
      return std::pair{r.stats_, elapsed_of(r)};
    });
  }
  if (opt.multicriteria_) {
    run_kind("mc", [&](query_request const& q, search_state&) {
      auto const r = multicriteria(g, q, opt.p_, lb);
      return std::pair{r.stats_, r.journeys_.empty() ? elapsed_t{-1}
                                                     : r.fastest_};
    });
  }

  for (auto i = std::size_t{0U}; i != w.delays_.size(); ++i) {
    auto const start = clock::now();
    auto affected = elapsed_t{-1};
    try {
      affected = static_cast<elapsed_t>(apply_delay(g, w.delays_[i]).affected_.size());
    } catch (validation_error const&) {
    }
    auto const us =
        std::chrono::duration<double, std::micro>(clock::now() - start).count();
    report.rows_.push_back({"delay", i, us, 0U, 0U, affected});
  }

  return report;
}

}  // namespace mdtm
