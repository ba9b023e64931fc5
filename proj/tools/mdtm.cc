#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "fmt/core.h"
#include "fmt/ostream.h"
#include "json.hpp"

#include "mdtm/alt.h"
#include "mdtm/bench.h"
#include "mdtm/csv.h"
#include "mdtm/graph.h"
#include "mdtm/gtfs.h"
#include "mdtm/links.h"
#include "mdtm/model.h"
#include "mdtm/oracle.h"
#include "mdtm/query.h"
#include "mdtm/serialize.h"
#include "mdtm/synthetic.h"
#include "mdtm/update.h"

using namespace mdtm;
using nlohmann::json;

namespace {

constexpr auto kExitOk = 0;
constexpr auto kExitUsage = 1;
constexpr auto kExitValidation = 2;
constexpr auto kExitMismatch = 3;

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point const start) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - start)
      .count();
}

struct synthetic_flags {
  synthetic_params p_;
  std::string mix_{"bus=0.76,train=0.15,tram=0.09"};
  std::int32_t min_transfer_{60}, max_transfer_{300}, period_{86'400};
};

void add_synthetic_options(CLI::App* app, synthetic_flags& f) {
  app->add_option("--stops", f.p_.stops_, "number of stops")
      ->capture_default_str();
  app->add_option("--vehicles", f.p_.vehicles_, "number of vehicles")
      ->capture_default_str();
  app->add_option("--connections-per-vehicle", f.p_.connections_per_vehicle_,
                  "elementary connections per vehicle")
      ->capture_default_str();
  app->add_option("--mix", f.mix_, "mode mix, name=share list summing to 1")
      ->capture_default_str();
  app->add_option("--min-transfer", f.min_transfer_, "seconds")
      ->capture_default_str();
  app->add_option("--max-transfer", f.max_transfer_, "seconds")
      ->capture_default_str();
  app->add_option("--walk-density", f.p_.walk_link_density_,
                  "probability of keeping an eligible walking pair")
      ->capture_default_str();
  app->add_option("--ev-stations", f.p_.ev_stations_, "number of EV stations")
      ->capture_default_str();
  app->add_option("--seed", f.p_.seed_, "random seed")->capture_default_str();
  app->add_option("--period", f.period_, "period in seconds")
      ->capture_default_str();
  app->add_option("--spacing", f.p_.grid_spacing_m_, "grid spacing in meters")
      ->capture_default_str();
  app->add_option("--vehicles-per-route", f.p_.vehicles_per_route_)
      ->capture_default_str();
}

synthetic_params finish(synthetic_flags const& f, link_config const& links) {
  auto p = f.p_;
  p.min_transfer_ = duration{f.min_transfer_};
  p.max_transfer_ = duration{f.max_transfer_};
  p.period_ = period{f.period_};
  p.links_ = links;
  p.mode_mix_.clear();
  for (auto const& part : CLI::detail::split(f.mix_, ',')) {
    auto const eq = part.find('=');
    if (eq == std::string::npos) {
      throw validation_error{fmt::format("bad mode mix entry \"{}\"", part)};
    }
    p.mode_mix_.push_back({part.substr(0, eq), std::stod(part.substr(eq + 1))});
  }
  return p;
}

void add_link_options(CLI::App* app, link_config& cfg, std::string& ev_ids,
                      std::string& pedestrian, std::string& road) {
  app->add_option("--walk-speed", cfg.walk_speed_mps_, "meters per second")
      ->capture_default_str();
  app->add_option_function<std::int32_t>(
         "--max-walk", [&](std::int32_t const s) { cfg.max_walk_ = duration{s}; },
         "walking cap in seconds (default 600)");
  app->add_option("--ev-speed", cfg.ev_speed_kmh_, "driving speed in km/h")
      ->capture_default_str();
  app->add_option_function<std::int32_t>(
         "--max-ev", [&](std::int32_t const s) { cfg.max_ev_ = duration{s}; },
         "driving cap in seconds (default 3600)");
  app->add_option("--ev-station-ids", ev_ids, "comma separated stop ids");
  app->add_option("--pedestrian-edges", pedestrian,
                  "edge list node_id,node_id,length_m")
      ->check(CLI::ExistingFile);
  app->add_option("--road-edges", road, "edge list node_id,node_id,length_m")
      ->check(CLI::ExistingFile);
  app->add_flag("--closure", cfg.transitive_closure_,
                "transitively close links within their caps");
}

stop_idx_t lookup_stop(timetable const& tt, std::string const& id) {
  if (auto const s = tt.find_stop(id); s.has_value()) {
    return *s;
  }
  throw validation_error{fmt::format("unknown stop \"{}\"", id)};
}

time_point parse_depart(timetable const& tt, std::string const& s) {
  return normalize(parse_time(s), tt.period_);
}

mode_set parse_modes(timetable const& tt, std::string s) {
  for (auto& c : s) {
    if (c == ';' || c == '|') {
      c = ',';
    }
  }
  auto const set = tt.modes_.parse_set(s.empty() ? "all" : s);
  if (set.empty()) {
    throw validation_error{"no transport mode selected"};
  }
  return set;
}

struct query_flags {
  std::string model_, from_, to_, depart_{"08:00:00"}, modes_{"all"}, batch_;
  bool alt_{false};
  double p_{1.2};
  bool min_transfers_{false};
};

std::vector<query_request> requests(timetable const& tt, query_flags const& f) {
  auto out = std::vector<query_request>{};
  if (f.batch_.empty()) {
    if (f.from_.empty() || f.to_.empty()) {
      throw validation_error{"--from and --to are required without --batch"};
    }
    out.push_back({lookup_stop(tt, f.from_), lookup_stop(tt, f.to_),
                   parse_depart(tt, f.depart_), parse_modes(tt, f.modes_)});
    return out;
  }
  auto const t = read_csv(f.batch_, false);
  for (auto const& r : t.rows_) {
    if (r.fields_.size() < 3U) {
      throw validation_error{
          fmt::format("{}:{}: expected from,to,depart[,modes]", t.name_,
                      r.line_)};
    }
    if (r.line_ == 1U && r.fields_[0] == "from") {
      continue;
    }
    try {
      out.push_back({lookup_stop(tt, r.fields_[0]), lookup_stop(tt, r.fields_[1]),
                     parse_depart(tt, r.fields_[2]),
                     parse_modes(tt, r.fields_.size() > 3U ? r.fields_[3] : "")});
    } catch (error const& e) {
      throw validation_error{
          fmt::format("{}:{}: {}", t.name_, r.line_, e.what())};
    }
  }
  return out;
}

int run_query(query_flags const& f, bool const multicriteria_mode) {
  auto const m = read_model(f.model_);
  auto const g = build_graph(m.tt_);
  auto lb = std::optional<lower_bound_table>{};
  if (f.alt_) {
    lb = m.lb_.has_value() ? *m.lb_ : preprocess_landmarks(condense(g));
  }

  auto s = search_state{};
  for (auto const& q : requests(m.tt_, f)) {
    if (multicriteria_mode) {
      auto const set = multicriteria(g, q, f.p_, lb ? &*lb : nullptr);
      if (f.min_transfers_) {
        fmt::print("{}\n", set.journeys_.empty()
                               ? json{{"result", "none"}}.dump()
                               : journey_to_json(m.tt_, set.journeys_.back()));
      } else {
        fmt::print("{}\n", pareto_to_json(m.tt_, set));
      }
      continue;
    }
    auto const r = lb ? earliest_arrival_alt(g, *lb, q, s)
                      : earliest_arrival(g, q, s);
    fmt::print("{}\n", r.journey_ ? journey_to_json(m.tt_, *r.journey_)
                                  : json{{"result", "none"}}.dump());
  }
  return kExitOk;
}

struct build_flags {
  std::string out_, gtfs_, json_;
  bool synthetic_{false};
  synthetic_flags syn_;
  link_config links_;
  std::string ev_ids_, pedestrian_, road_;
  bool no_walk_{false};
  std::int32_t period_{86'400}, default_transfer_{60};
  std::vector<std::string> route_type_map_;
  std::string unknown_route_type_mode_;
  bool no_alt_{false};
  std::optional<std::uint32_t> landmarks_;
  std::size_t lb_budget_mb_{1024U};
};

std::vector<std::string> split_ids(std::string const& s) {
  auto out = std::vector<std::string>{};
  for (auto const& x : CLI::detail::split(s, ',')) {
    if (!x.empty()) {
      out.push_back(x);
    }
  }
  return out;
}

int run_build(build_flags const& f) {
  auto const n_sources =
      int{!f.gtfs_.empty()} + int{!f.json_.empty()} + int{f.synthetic_};
  if (n_sources != 1) {
    throw validation_error{"choose exactly one of --gtfs, --json, --synthetic"};
  }
  if (f.out_.empty()) {
    throw validation_error{"--out (or MDTM_MODEL) is required"};
  }

  auto const start = clock_type::now();
  auto report = json::object();
  auto m = model{};

  if (f.synthetic_) {
    m.tt_ = gen_synthetic(finish(f.syn_, f.links_));
  } else {
    if (!f.gtfs_.empty()) {
      auto cfg = gtfs_config{};
      cfg.period_ = period{f.period_};
      cfg.default_transfer_ = duration{f.default_transfer_};
      cfg.unknown_route_type_mode_ = f.unknown_route_type_mode_;
      for (auto const& entry : f.route_type_map_) {
        auto const eq = entry.find('=');
        if (eq == std::string::npos) {
          throw validation_error{
              fmt::format("bad route type mapping \"{}\"", entry)};
        }
        cfg.route_type_modes_[std::stoi(entry.substr(0, eq))] =
            entry.substr(eq + 1);
      }
      auto r = parse_gtfs(f.gtfs_, cfg);
      for (auto const& w : r.warnings_) {
        fmt::print(std::cerr, "warning: {}\n", w);
      }
      report["warnings"] = r.warnings_.size();
      m.tt_ = std::move(r.tt_);
    } else {
      auto in = std::ifstream{f.json_};
      auto const text = std::string{std::istreambuf_iterator<char>{in},
                                    std::istreambuf_iterator<char>{}};
      m.tt_ = timetable_from_json(text);
    }

    mark_ev_stations(m.tt_, split_ids(f.ev_ids_));
    auto const idx = make_stop_index(m.tt_);
    auto pedestrian = std::optional<std::vector<network_edge>>{};
    auto road = std::optional<std::vector<network_edge>>{};
    if (!f.pedestrian_.empty()) {
      pedestrian = read_edge_list(f.pedestrian_);
    }
    if (!f.road_.empty()) {
      road = read_edge_list(f.road_);
    }
    if (!f.no_walk_) {
      auto const walk = generate_walk_links(m.tt_, idx, f.links_,
                                            pedestrian ? &*pedestrian : nullptr);
      m.tt_.links_.insert(end(m.tt_.links_), begin(walk), end(walk));
    }
    auto const ev =
        generate_ev_links(m.tt_, idx, f.links_, road ? &*road : nullptr);
    m.tt_.links_.insert(end(m.tt_.links_), begin(ev), end(ev));
    if (f.links_.transitive_closure_) {
      m.tt_.links_ = close_links(m.tt_.links_, m.tt_.stops_.size(), f.links_);
    }
  }

  auto const g = build_graph(m.tt_);
  report["load_ms"] = ms_since(start);
  report["stops"] = g.n_switch_nodes();
  report["vehicles"] = m.tt_.vehicles_.size();
  report["connections"] = g.n_departure_nodes();
  report["links"] = g.n_switch_switch_arcs();
  report["nodes"] = g.n_nodes();
  report["arcs"] = g.n_arcs();
  report["groups"] = g.n_groups();

  if (!f.no_alt_) {
    auto const t = clock_type::now();
    auto cfg = alt_config{};
    cfg.n_landmarks_ = f.landmarks_;
    cfg.memory_budget_bytes_ = f.lb_budget_mb_ * 1024U * 1024U;
    m.lb_ = preprocess_landmarks(condense(g), cfg);
    report["alt_ms"] = ms_since(t);
    report["alt_bytes"] = m.lb_->size_bytes();
    report["alt_kind"] =
        m.lb_->get_kind() == lower_bound_table::kind::kAllPairs ? "all_pairs"
                                                                : "landmarks";
  }

  write_model(f.out_, m);
  report["model"] = f.out_;
  fmt::print("{}\n", report.dump());
  return kExitOk;
}

struct delays_flags {
  std::string model_, delays_, out_;
};

int run_delays(delays_flags const& f) {
  auto m = read_model(f.model_);
  auto g = build_graph(m.tt_);
  auto const ids = id_lookup{m.tt_};

  auto const t = read_csv(f.delays_, false);
  auto events = std::vector<delay_event>{};
  for (auto const& r : t.rows_) {
    if (r.line_ == 1U && !r.fields_.empty() && r.fields_[0] == "connection_id") {
      continue;
    }
    if (r.fields_.size() < 2U) {
      throw validation_error{fmt::format(
          "{}:{}: expected connection_id,delta_seconds", t.name_, r.line_)};
    }
    auto const c = ids.connection(r.fields_[0]);
    if (!c.has_value()) {
      throw validation_error{fmt::format("{}:{}: unknown connection id \"{}\"",
                                         t.name_, r.line_, r.fields_[0])};
    }
    auto delta = std::int64_t{};
    try {
      delta = std::stoll(r.fields_[1]);
    } catch (std::exception const&) {
      throw validation_error{fmt::format("{}:{}: bad delay \"{}\"", t.name_,
                                         r.line_, r.fields_[1])};
    }
    if (delta < 0 || delta >= m.tt_.period_.v_) {
      throw validation_error{fmt::format(
          "{}:{}: delay {} outside [0, period)", t.name_, r.line_, delta)};
    }
    events.push_back({*c, duration{static_cast<std::int32_t>(delta)}});
  }

  auto rows = json::array();
  auto total_us = 0.0;
  for (auto const& ev : events) {
    auto const rep = apply_delay(g, ev);
    apply_delay(m.tt_, ev.connection_, ev.delta_);
    auto const us =
        std::chrono::duration<double, std::micro>(rep.elapsed_).count();
    total_us += us;
    rows.push_back({{"connection", m.tt_.connections_[to_idx(ev.connection_)].id_},
                    {"delta_s", ev.delta_.v_},
                    {"affected", rep.affected_.size()},
                    {"groups", rep.groups_.size()},
                    {"micros", us}});
  }

  if (!f.out_.empty()) {
    write_model(f.out_, m);
  }
  fmt::print("{}\n",
             json{{"events", std::move(rows)},
                  {"mean_micros", events.empty() ? 0.0 : total_us / events.size()},
                  {"model", f.out_}}
                 .dump());
  return kExitOk;
}

struct verify_flags {
  std::string model_;
  std::size_t probes_{1000U};
  std::size_t pareto_probes_{0U};
  std::size_t delays_{0U};
  double p_{1.2};
  std::uint64_t seed_{1U};
};

int run_verify(verify_flags const& f) {
  auto m = read_model(f.model_);
  auto g = build_graph(m.tt_);
  auto rng = std::mt19937_64{f.seed_};

  auto report = json::object();
  auto mismatches = std::size_t{0U};
  auto const count = [&](char const* key, std::size_t const n) {
    report[key] = n;
    mismatches += n;
  };

  count("invariant_violations", g.check_invariants().size());

  auto const elapsed_of = [](ea_result const& r) {
    return r.journey_ ? std::optional{r.journey_->elapsed_} : std::nullopt;
  };

  auto ea = std::size_t{0U}, alt = std::size_t{0U}, infeasible = std::size_t{0U};
  auto s = search_state{};
  for (auto const& q : random_queries(m.tt_, f.probes_, rng())) {
    auto const r = earliest_arrival(g, q, s);
    auto const o = oracle::earliest_arrival(m.tt_, q);
    ea += elapsed_of(r) != o;
    if (r.journey_ && check_journey(m.tt_, q, *r.journey_).has_value()) {
      ++infeasible;
    }
    if (m.lb_.has_value()) {
      alt += elapsed_of(earliest_arrival_alt(g, *m.lb_, q, s)) != o;
    }
  }
  report["probes"] = f.probes_;
  count("ea_mismatches", ea);
  count("alt_mismatches", alt);
  count("infeasible_journeys", infeasible);
  if (m.lb_.has_value()) {
    count("lb_violations", verify_feasibility(g, *m.lb_, 64U, rng()).size());
  }

  auto const pareto_fits = m.tt_.stops_.size() <= oracle::kMaxParetoStops &&
                           m.tt_.connections_.size() <=
                               oracle::kMaxParetoConnections;
  if (f.pareto_probes_ != 0U && !pareto_fits) {
    fmt::print(std::cerr,
               "warning: instance too large for the Pareto oracle, skipping\n");
    report["pareto_skipped"] = true;
  } else if (f.pareto_probes_ != 0U) {
    auto pareto = std::size_t{0U};
    for (auto const& q : random_queries(m.tt_, f.pareto_probes_, rng())) {
      auto const set = multicriteria(g, q, f.p_);
      auto got = std::vector<oracle::label>{};
      for (auto const& j : set.journeys_) {
        got.push_back({j.elapsed_, j.boardings_});
      }
      pareto += got != oracle::pareto(m.tt_, q, f.p_);
    }
    report["pareto_probes"] = f.pareto_probes_;
    count("pareto_mismatches", pareto);
  }

  if (f.delays_ != 0U) {
    auto update = std::size_t{0U};
    for (auto const& d : random_delays(m.tt_, f.delays_, duration{60},
                                       duration{21'600}, rng())) {
      try {
        apply_delay(g, d);
      } catch (validation_error const&) {
        continue;
      }
      apply_delay(m.tt_, d.connection_, d.delta_);
      auto const fresh = build_graph(m.tt_);
      update += !(fresh == g);
      for (auto const& q : random_queries(m.tt_, 20U, rng())) {
        update += elapsed_of(earliest_arrival(g, q)) !=
                  elapsed_of(earliest_arrival(fresh, q));
      }
    }
    report["delays"] = f.delays_;
    count("update_mismatches", update);
  }

  report["ok"] = mismatches == 0U;
  fmt::print("{}\n", report.dump());
  return mismatches == 0U ? kExitOk : kExitMismatch;
}

struct gen_flags {
  std::string out_, json_out_;
  synthetic_flags syn_;
  link_config links_;
};

int run_gen(gen_flags const& f) {
  if (f.out_.empty() && f.json_out_.empty()) {
    throw validation_error{"--out or --json-out is required"};
  }
  auto const tt = gen_synthetic(finish(f.syn_, f.links_));
  if (!f.out_.empty()) {
    write_model(f.out_, model{tt, std::nullopt});
  }
  if (!f.json_out_.empty()) {
    auto out = std::ofstream{f.json_out_};
    out << timetable_to_json(tt) << '\n';
  }
  fmt::print("{}\n", json{{"stops", tt.stops_.size()},
                          {"vehicles", tt.vehicles_.size()},
                          {"connections", tt.connections_.size()},
                          {"links", tt.links_.size()}}
                         .dump());
  return kExitOk;
}

struct bench_flags {
  std::string model_, csv_;
  std::size_t queries_{1000U}, delays_{0U};
  std::uint64_t seed_{1U};
  bool no_plain_{false}, no_alt_{false}, mc_{false};
  bench_options opt_;
  std::int32_t delay_min_{60}, delay_max_{21'600};
};

int run_bench_cmd(bench_flags const& f) {
  auto m = read_model(f.model_);
  auto g = build_graph(m.tt_);

  auto opt = f.opt_;
  opt.plain_ = !f.no_plain_;
  opt.alt_ = !f.no_alt_;
  opt.multicriteria_ = f.mc_;

  auto alt_ms = 0.0;
  if (opt.alt_ && !m.lb_.has_value()) {
    auto const t = clock_type::now();
    m.lb_ = preprocess_landmarks(condense(g));
    alt_ms = ms_since(t);
  }

  auto w = bench_workload{};
  w.queries_ = random_queries(m.tt_, f.queries_, f.seed_);
  w.delays_ = random_delays(m.tt_, f.delays_, duration{f.delay_min_},
                            duration{f.delay_max_}, f.seed_ + 1U);
  auto report = run_bench(g, m.lb_ ? &*m.lb_ : nullptr, w, opt);
  report.descriptor_["alt_preprocessing_ms"] = fmt::format("{:.3f}", alt_ms);
  report.descriptor_["seed"] = std::to_string(f.seed_);

  if (f.csv_.empty() || f.csv_ == "-") {
    report.write_csv(std::cout);
  } else {
    auto out = std::ofstream{f.csv_};
    report.write_csv(out);
  }

  auto summary = json::object();
  for (auto const* kind : {"ea", "ea_alt", "mc", "delay"}) {
    if (std::any_of(begin(report.rows_), end(report.rows_),
                    [&](bench_row const& r) { return r.kind_ == kind; })) {
      summary[kind] = {{"mean_micros", report.mean_micros(kind)},
                       {"mean_settled", report.mean_settled(kind)}};
    }
  }
  if (opt.plain_ && opt.alt_ && report.mean_settled("ea") > 0.0) {
    summary["alt_settled_ratio"] =
        report.mean_settled("ea_alt") / report.mean_settled("ea");
  }
  fmt::print(std::cerr, "{}\n", summary.dump());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  auto app = CLI::App{"Multimodal timetable routing engine"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "build a model file");
  auto bf = build_flags{};
  build->add_option("--out", bf.out_, "model file")->envname("MDTM_MODEL");
  build->add_option("--gtfs", bf.gtfs_, "GTFS feed directory")
      ->check(CLI::ExistingDirectory);
  build->add_option("--json", bf.json_, "timetable JSON export")
      ->check(CLI::ExistingFile);
  build->add_flag("--synthetic", bf.synthetic_, "generate a synthetic city");
  add_synthetic_options(build, bf.syn_);
  add_link_options(build, bf.links_, bf.ev_ids_, bf.pedestrian_, bf.road_);
  build->add_flag("--no-walk-links", bf.no_walk_, "skip walking links");
  build->add_option("--feed-period", bf.period_, "period for GTFS input")
      ->capture_default_str();
  build->add_option("--default-transfer", bf.default_transfer_,
                    "seconds, for stops without transfers.txt entry")
      ->capture_default_str();
  build->add_option("--route-type-map", bf.route_type_map_,
                    "route_type=mode overrides");
  build->add_option("--unknown-route-type-mode", bf.unknown_route_type_mode_,
                    "mode for unmapped route types (default: reject)");
  build->add_flag("--no-alt", bf.no_alt_, "skip lower bound preprocessing");
  build->add_option("--landmarks", bf.landmarks_,
                    "use this many sampled landmarks instead of all pairs");
  build->add_option("--lb-budget-mb", bf.lb_budget_mb_,
                    "all-pairs table memory budget")
      ->capture_default_str();

  auto qf = query_flags{};
  auto const add_query_options = [&](CLI::App* sub) {
    sub->add_option("--model", qf.model_, "model file")
        ->envname("MDTM_MODEL")
        ->required();
    sub->add_option("--from", qf.from_, "origin stop id");
    sub->add_option("--to", qf.to_, "target stop id");
    sub->add_option("--depart", qf.depart_, "HH:MM[:SS] or seconds")
        ->capture_default_str();
    sub->add_option("--modes", qf.modes_, "comma separated modes or all")
        ->capture_default_str();
    sub->add_option("--batch", qf.batch_, "CSV from,to,depart,modes")
        ->check(CLI::ExistingFile);
    sub->add_flag("--alt", qf.alt_, "goal directed search");
  };
  auto* query = app.add_subcommand("query", "earliest arrival query");
  add_query_options(query);
  auto* mc = app.add_subcommand("mc-query", "arrival time / transfers Pareto");
  add_query_options(mc);
  mc->add_option("--p", qf.p_, "elapsed time threshold factor (>= 1)")
      ->capture_default_str();
  mc->add_flag("--min-transfers", qf.min_transfers_,
               "print only the journey with fewest boardings");

  auto* delays = app.add_subcommand("delays", "apply a delay stream");
  auto df = delays_flags{};
  delays->add_option("--model", df.model_, "model file")
      ->envname("MDTM_MODEL")
      ->required();
  delays->add_option("--delays", df.delays_, "CSV connection_id,delta_seconds")
      ->required()
      ->check(CLI::ExistingFile);
  delays->add_option("--out", df.out_, "updated model file");

  auto* verify = app.add_subcommand("verify", "compare against the oracles");
  auto vf = verify_flags{};
  verify->add_option("--model", vf.model_, "model file")
      ->envname("MDTM_MODEL")
      ->required();
  verify->add_option("--probes", vf.probes_, "random earliest arrival probes")
      ->capture_default_str();
  verify->add_option("--pareto-probes", vf.pareto_probes_,
                     "random Pareto probes (small instances only)")
      ->capture_default_str();
  verify->add_option("--delays", vf.delays_,
                     "random delays checked against rebuilt graphs")
      ->capture_default_str();
  verify->add_option("--p", vf.p_, "Pareto threshold factor")
      ->capture_default_str();
  verify->add_option("--seed", vf.seed_)->capture_default_str();

  auto* gen = app.add_subcommand("gen", "generate a synthetic timetable");
  auto gf = gen_flags{};
  gen->add_option("--out", gf.out_, "model file (no lower bounds)");
  gen->add_option("--json-out", gf.json_out_, "timetable JSON export");
  add_synthetic_options(gen, gf.syn_);
  gen->add_option("--walk-speed", gf.links_.walk_speed_mps_)
      ->capture_default_str();
  gen->add_flag("--closure", gf.links_.transitive_closure_);

  auto* bench = app.add_subcommand("bench", "time queries and delays");
  auto bnf = bench_flags{};
  bench->add_option("--model", bnf.model_, "model file")
      ->envname("MDTM_MODEL")
      ->required();
  bench->add_option("--queries", bnf.queries_)->capture_default_str();
  bench->add_option("--delays", bnf.delays_)->capture_default_str();
  bench->add_option("--delay-min", bnf.delay_min_, "seconds")
      ->capture_default_str();
  bench->add_option("--delay-max", bnf.delay_max_, "seconds")
      ->capture_default_str();
  bench->add_option("--seed", bnf.seed_)->capture_default_str();
  bench->add_flag("--no-plain", bnf.no_plain_);
  bench->add_flag("--no-alt", bnf.no_alt_);
  bench->add_flag("--mc", bnf.mc_, "also time multicriteria queries");
  bench->add_option("--p", bnf.opt_.p_)->capture_default_str();
  bench->add_option("--warmup", bnf.opt_.warmup_, "untimed queries per kind")
      ->capture_default_str();
  bench->add_option("--threads", bnf.opt_.threads_)->capture_default_str();
  bench->add_option("--csv", bnf.csv_, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) {
      return run_build(bf);
    }
    if (*query) {
      return run_query(qf, false);
    }
    if (*mc) {
      return run_query(qf, true);
    }
    if (*delays) {
      return run_delays(df);
    }
    if (*verify) {
      return run_verify(vf);
    }
    if (*gen) {
      return run_gen(gf);
    }
    if (*bench) {
      return run_bench_cmd(bnf);
    }
  } catch (std::exception const& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitValidation;
  }
  return kExitUsage;
}
