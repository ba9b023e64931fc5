#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mdtm/alt.h"
#include "mdtm/graph.h"
#include "mdtm/query.h"
#include "mdtm/update.h"

namespace mdtm {

struct bench_workload {
  std::vector<query_request> queries_;
  std::vector<delay_event> delays_;
};

// Uniformly random origin, target and departure; all modes.
std::vector<query_request> random_queries(timetable const&, std::size_t n,
                                          std::uint64_t seed);

// Uniformly random connections with delays uniform in [min, max].
std::vector<delay_event> random_delays(timetable const&, std::size_t n,
                                       duration min, duration max,
                                       std::uint64_t seed);

struct bench_options {
  bool plain_{true};
  bool alt_{true};
  bool multicriteria_{false};
  double p_{1.2};
  std::size_t warmup_{10U};
  unsigned threads_{1U};
};

struct bench_row {
  std::string kind_;  // ea, ea_alt, mc, delay
  std::size_t index_;
  double micros_;
  std::uint64_t settled_;
  std::uint64_t scanned_;
  elapsed_t elapsed_;  // -1 if none; delays: affected connections
};

struct bench_report {
  std::map<std::string, std::string> descriptor_;  // instance and config
  std::vector<bench_row> rows_;

  double mean_micros(std::string const& kind) const;
  double mean_settled(std::string const& kind) const;
  void write_csv(std::ostream&) const;
};

// Queries run on `g` (read only); delays are applied to `g` in order after
// all queries.
bench_report run_bench(mdtm_graph& g, lower_bound_table const* lb,
                       bench_workload const&, bench_options const&);

}  // namespace mdtm
