// bbnet: algorithmic-network simulator and analysis front door.
//
// Subcommands: gen-graph, enumerate, run, sweep, analyze, bound, scan.
// stdout carries machine-parseable JSON summaries only; diagnostics go to
// stderr. Exit codes: 0 success, 2 config error, 3 runtime error, 4 failed
// acceptance check in `analyze --check`.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbnet/analysis.hpp"
#include "bbnet/ba.hpp"
#include "bbnet/errors.hpp"
#include "bbnet/graph_io.hpp"
#include "bbnet/hash.hpp"
#include "bbnet/keyval.hpp"
#include "bbnet/sweep.hpp"
#include "bbnet/trace_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bbnet;

namespace {

std::string file_hash_hex(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw parse_error("cannot read " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(buf.str())));
  return hex;
}

machine::EnumerationTable::Params table_params(std::uint32_t k, std::uint64_t step_limit,
                                               machine::Value w) {
  machine::EnumerationTable::Params p;
  p.max_len_bits = k;
  p.step_limit = step_limit;
  p.input = w;
  return p;
}

// Builds the table, preferring the BBNET_CACHE_DIR cache when present.
machine::EnumerationTable load_table(const machine::EnumerationTable::Params& params) {
  const char* cache_dir = std::getenv("BBNET_CACHE_DIR");
  if (cache_dir != nullptr && *cache_dir != '\0') {
    const fs::path file = fs::path(cache_dir) / machine::EnumerationTable::cache_name(params);
    if (auto cached = machine::EnumerationTable::load_cache(file, params)) {
      std::cerr << "enumeration cache hit: " << file << "\n";
      return std::move(*cached);
    }
    auto table = machine::EnumerationTable::build(params);
    std::error_code ec;
    fs::create_directories(cache_dir, ec);
    if (!ec) {
      table.save_cache(file);
      std::cerr << "enumeration cache written: " << file << "\n";
    }
    return table;
  }
  return machine::EnumerationTable::build(params);
}

protocol::ExperimentConfig config_from_keyvals(const KeyValues& kv) {
  protocol::ExperimentConfig cfg;
  const std::string kind = kv.get_or("graph.kind", "ba");
  if (kind == "ba") {
    cfg.graph_kind = protocol::ExperimentConfig::GraphKind::Ba;
    cfg.ba_n = static_cast<std::uint32_t>(kv.get_uint("graph.n", 64));
    cfg.ba_m = static_cast<std::uint32_t>(kv.get_uint("graph.m", 3));
    cfg.ba_m0 = static_cast<std::uint32_t>(kv.get_uint("graph.m0", 0));
  } else if (kind == "file") {
    cfg.graph_kind = protocol::ExperimentConfig::GraphKind::File;
    auto file = kv.get("graph.file");
    if (!file) throw config_error("graph.kind=file needs graph.file");
    cfg.graph_file = *file;
  } else {
    throw config_error("graph.kind must be ba or file");
  }

  cfg.input_w = kv.get_uint("machine.w", 0);
  cfg.step_limit = kv.get_uint("machine.step_limit", 100000);
  cfg.k_cap = static_cast<std::uint32_t>(kv.get_uint("machine.k_cap", 16));

  cfg.sis.nu = kv.get_double("sis.nu", 1.0);
  cfg.sis.delta = kv.get_double("sis.delta", 0.0);
  cfg.sis.validate();

  cfg.c0 = static_cast<std::uint32_t>(kv.get_uint("cycles.c0", 0));
  cfg.schedule = protocol::CycleSchedule::parse(kv.get_or("cycles.schedule", "identity"));
  cfg.budget = protocol::CycleBudget::parse(kv.get_or("cycles.budget", "lg"));
  cfg.start_instant = static_cast<std::uint32_t>(kv.get_uint("cycles.start_instant", 0));
  if (const auto t = kv.get_uint("cycles.times", 0); t > 0) {
    cfg.times_override = static_cast<std::uint32_t>(t);
  }
  if (const auto n = kv.get_uint("cycles.total", 0); n > 0) {
    cfg.cycles_override = static_cast<std::uint32_t>(n);
  }

  cfg.mappings = static_cast<std::uint32_t>(kv.get_uint("experiment.mappings", 1));
  cfg.trials = static_cast<std::uint32_t>(kv.get_uint("experiment.trials", 1));
  const std::string payload = kv.get_or("experiment.payload", "vm");
  if (payload == "vm") {
    cfg.payload = protocol::ExperimentConfig::Payload::Vm;
  } else if (payload == "synthetic") {
    cfg.payload = protocol::ExperimentConfig::Payload::Synthetic;
  } else {
    throw config_error("experiment.payload must be vm or synthetic");
  }
  cfg.synthetic_seeds =
      static_cast<std::uint32_t>(kv.get_uint("experiment.synthetic_seeds", 1));
  if (const auto ps = kv.get_uint("experiment.population_seed", 0); ps > 0) {
    cfg.population_seed = ps;
  }
  cfg.step_options.susceptible_ifp_variant =
      kv.get_bool("experiment.susceptible_ifp_variant", false);
  const std::string baseline = kv.get_or("experiment.eac_baseline", "cycle1");
  if (baseline == "cycle1") {
    cfg.eac_baseline = protocol::ExperimentConfig::EacBaseline::Cycle1;
  } else if (baseline == "reiterated") {
    cfg.eac_baseline = protocol::ExperimentConfig::EacBaseline::Reiterated;
  } else {
    throw config_error("experiment.eac_baseline must be cycle1 or reiterated");
  }
  if (kv.get_uint("experiment.n", 0) > 0 &&
      cfg.graph_kind == protocol::ExperimentConfig::GraphKind::Ba &&
      kv.get_uint("experiment.n", 0) != cfg.ba_n) {
    throw config_error("experiment.n disagrees with graph.n (population maps onto nodes)");
  }
  return cfg;
}

KeyValues resolved_keyvals(const protocol::ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "[graph]\n";
  if (cfg.graph_kind == protocol::ExperimentConfig::GraphKind::Ba) {
    out << "kind = ba\nn = " << cfg.ba_n << "\nm = " << cfg.ba_m
        << "\nm0 = " << (cfg.ba_m0 == 0 ? cfg.ba_m : cfg.ba_m0) << "\n";
  } else {
    out << "kind = file\nfile = " << cfg.graph_file << "\n";
  }
  out << "[machine]\nw = " << cfg.input_w << "\nstep_limit = " << cfg.step_limit
      << "\nk_cap = " << cfg.k_cap << "\n";
  out << "[sis]\nnu = " << cfg.sis.nu << "\ndelta = " << cfg.sis.delta << "\n";
  out << "[cycles]\nc0 = " << cfg.c0 << "\nschedule = " << cfg.schedule.to_string()
      << "\nbudget = " << cfg.budget.to_string()
      << "\nstart_instant = " << cfg.start_instant;
  if (cfg.times_override) out << "\ntimes = " << *cfg.times_override;
  if (cfg.cycles_override) out << "\ntotal = " << *cfg.cycles_override;
  out << "\n[experiment]\nmappings = " << cfg.mappings << "\ntrials = " << cfg.trials
      << "\npayload = "
      << (cfg.payload == protocol::ExperimentConfig::Payload::Vm ? "vm" : "synthetic")
      << "\nsynthetic_seeds = " << cfg.synthetic_seeds << "\nsusceptible_ifp_variant = "
      << (cfg.step_options.susceptible_ifp_variant ? "true" : "false")
      << "\neac_baseline = "
      << (cfg.eac_baseline == protocol::ExperimentConfig::EacBaseline::Cycle1
              ? "cycle1"
              : "reiterated");
  if (cfg.population_seed) out << "\npopulation_seed = " << *cfg.population_seed;
  out << "\n";
  return KeyValues::parse_string(out.str(), "<resolved>");
}

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  std::string out_dir;
};

KeyValues load_config(const CommonArgs& args) {
  KeyValues kv = args.config_path.empty() ? KeyValues{}
                                          : KeyValues::parse_file(args.config_path);
  for (const auto& o : args.overrides) kv.apply_override(o);
  return kv;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

int cmd_gen_graph(bool ba, std::uint32_t n, std::uint32_t m, std::uint32_t m0,
                  std::uint64_t seed, const std::string& from,
                  const std::string& out_path) {
  graph::StaticNetwork net;
  if (ba) {
    graph::BaParams params;
    params.n = n;
    params.m = m;
    params.m0 = m0 == 0 ? m : m0;
    params.seed = seed;
    net = graph::generate_ba(params);
  } else {
    auto file = graph::load_graph(from);
    if (file.kind != graph::GraphFile::Kind::Static) {
      throw config_error("gen-graph --from expects a static graph file");
    }
    net = std::move(file.static_net);
  }
  if (!out_path.empty()) graph::save_static(net, out_path);

  auto deg = net.degrees();
  std::uint64_t sum = 0;
  std::uint32_t max_deg = 0;
  for (auto d : deg) {
    sum += d;
    max_deg = std::max(max_deg, d);
  }
  json j{{"command", "gen-graph"},
         {"nodes", net.node_count()},
         {"edges", net.edges().size()},
         {"degree_sum", sum},
         {"max_degree", max_deg},
         {"mean_degree", net.node_count() ? static_cast<double>(sum) / net.node_count() : 0.0}};
  if (ba) {
    j["seed"] = seed;
    j["m"] = m;
    if (net.node_count() >= 100) {
      auto fit = graph::fit_ccdf_powerlaw(deg, m);
      j["powerlaw_exponent"] = fit.exponent;
      j["ccdf_points"] = fit.points;
    }
  }
  if (!out_path.empty()) j["file"] = out_path;
  emit(j);
  return 0;
}

int cmd_enumerate(std::uint32_t k, std::uint64_t step_limit, machine::Value w,
                  const std::string& csv_out, std::uint64_t diff_step_limit) {
  auto table = load_table(table_params(k, step_limit, w));
  json j{{"command", "enumerate"},
         {"k", k},
         {"step_limit", step_limit},
         {"w", w},
         {"programs", table.entries().size()},
         {"kraft_mass", table.kraft_mass()}};
  json omegas = json::object();
  for (std::uint32_t c = 1; c <= 6; ++c) {
    omegas[std::to_string(c)] = table.omega(c);
  }
  j["omega"] = omegas;
  json bbs = json::object();
  for (std::uint32_t kb = machine::kOpBits; kb <= k; kb += machine::kOpBits) {
    auto bb = table.busy_beaver(kb);
    bbs[std::to_string(kb)] = bb.value;
  }
  j["busy_beaver"] = bbs;
  if (!csv_out.empty()) {
    table.export_csv(csv_out);
    j["csv"] = csv_out;
  }
  if (diff_step_limit > 0) {
    auto other = load_table(table_params(k, diff_step_limit, w));
    auto diff = machine::frontier_diff(table, other);
    json frontier = json::array();
    for (const auto* e : diff) frontier.push_back(e->program.bit_string());
    j["frontier_vs_step_limit"] = diff_step_limit;
    j["frontier"] = frontier;
  }
  emit(j);
  return 0;
}

int cmd_run(const CommonArgs& args, bool dry_run) {
  KeyValues kv = load_config(args);
  protocol::ExperimentConfig cfg = config_from_keyvals(kv);
  const KeyValues resolved = resolved_keyvals(cfg);

  if (dry_run) {
    // Validation also exercises the plan arithmetic on the real graph.
    protocol::RunnerOptions probe;
    probe.keep_traces = false;
    auto out = protocol::run_experiment(cfg, args.seed, probe);
    json j{{"command", "run"},
           {"dry_run", true},
           {"seed", args.seed},
           {"config", resolved.items()},
           {"plan",
            {{"nodes", out.plan.nodes},
             {"times", out.plan.times},
             {"cycles", out.plan.cycles},
             {"budget_f", out.plan.budget_f},
             {"bound_x", out.plan.bound_x},
             {"interval_end", out.plan.interval_end}}}};
    emit(j);
    return 0;
  }

  if (args.out_dir.empty()) throw config_error("run needs --out <dir>");
  fs::create_directories(args.out_dir);

  protocol::RunnerOptions opts;
  opts.keep_traces = true;
  opts.want_reiterated_baseline = true;
  auto out = protocol::run_experiment(cfg, args.seed, opts);

  const fs::path dir = args.out_dir;
  {
    std::ofstream echo(dir / "config.resolved.ini");
    echo << resolved.to_string();
  }
  protocol::write_trace_csv(out.traces, dir / "trace.csv");
  auto mean_tau = analysis::average_prevalence(out.series);
  protocol::write_prevalence_csv(out.series, mean_tau, cfg.c0, cfg.start_instant,
                                 dir / "prevalence.csv");

  json j{{"command", "run"},
         {"seed", args.seed},
         {"config", resolved.items()},
         {"plan",
          {{"nodes", out.plan.nodes},
           {"times", out.plan.times},
           {"cycles", out.plan.cycles},
           {"budget_f", out.plan.budget_f},
           {"bound_x", out.plan.bound_x},
           {"interval_end", out.plan.interval_end}}}};

  auto stationarity = analysis::detect_stationary(mean_tau);
  j["stationarity"] = {{"detected", stationarity.detected},
                       {"delta_star", stationarity.delta_star},
                       {"window", stationarity.window},
                       {"tolerance", stationarity.tolerance},
                       {"level", stationarity.level}};
  j["tau_end"] = mean_tau.empty() ? 0.0 : mean_tau.back();

  if (cfg.payload == protocol::ExperimentConfig::Payload::Vm) {
    auto table = load_table(table_params(cfg.k_cap, cfg.step_limit, 0));
    auto constants = analysis::default_constants();
    auto report = analysis::bound_report_for(out, cfg, table, constants);

    std::ofstream eeac_csv(dir / "eeac.csv");
    eeac_csv << "mapping,trial,node,member,networked_final,isolated_final,eac_bits\n";
    const auto& baseline =
        cfg.eac_baseline == protocol::ExperimentConfig::EacBaseline::Cycle1
            ? out.member_cycle1
            : out.member_reiterated;
    for (const auto& trace : out.traces) {
      const auto& perm = out.mapping_perms[trace.mapping_index];
      for (std::size_t v = 0; v < trace.finals.size(); ++v) {
        const auto member = perm[v];
        eeac_csv << trace.mapping_index << ',' << trace.trial_index << ',' << v << ','
                 << member << ',' << trace.finals[v] << ',' << baseline[member] << ','
                 << analysis::eac_node(trace.finals[v], baseline[member], table)
                 << '\n';
      }
    }

    std::ofstream bound_csv(dir / "bound_report.csv");
    bound_csv << "n,x,tau,omega,a_w,bound_bits,eeac_bits,margin\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%llu,%llu,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                  static_cast<unsigned long long>(report.n),
                  static_cast<unsigned long long>(report.x), report.tau, report.omega,
                  report.a_w, report.bound_bits, report.eeac_bits, report.margin);
    bound_csv << buf;

    j["bound"] = {{"n", report.n},       {"x", report.x},
                  {"tau", report.tau},   {"omega", report.omega},
                  {"a_w", report.a_w},   {"bound_bits", report.bound_bits},
                  {"eeac_bits", report.eeac_bits}, {"margin", report.margin}};
    j["population_dead_end_fraction"] = out.population.stats.dead_end_fraction();
  }

  json hashes = json::object();
  for (const char* name : {"trace.csv", "prevalence.csv"}) {
    if (fs::exists(dir / name)) hashes[name] = file_hash_hex(dir / name);
  }
  j["hashes"] = hashes;

  {
    std::ofstream summary(dir / "summary.json");
    summary << j.dump(2) << "\n";
  }
  emit(j);
  return 0;
}

int cmd_sweep(const CommonArgs& args, std::uint32_t jobs) {
  KeyValues kv = load_config(args);
  analysis::SweepGrid grid;
  if (auto v = kv.get("sweep.lambdas")) {
    grid.lambdas.clear();
    std::istringstream in(*v);
    std::string tok;
    while (std::getline(in, tok, ',')) grid.lambdas.push_back(std::stod(tok));
  }
  if (auto v = kv.get("sweep.ms")) {
    grid.ms.clear();
    std::istringstream in(*v);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      grid.ms.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    }
  }
  if (auto v = kv.get("sweep.ns")) {
    grid.ns.clear();
    std::istringstream in(*v);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      grid.ns.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    }
  }
  grid.trials = static_cast<std::uint32_t>(kv.get_uint("sweep.trials", grid.trials));
  grid.delta = kv.get_double("sweep.delta", grid.delta);
  grid.synthetic_seeds =
      static_cast<std::uint32_t>(kv.get_uint("sweep.sources", grid.synthetic_seeds));
  grid.instants = static_cast<std::uint32_t>(kv.get_uint("sweep.instants", grid.instants));
  grid.jobs = jobs;

  auto result = analysis::run_sweep(grid, args.seed);

  json j{{"command", "sweep"}, {"seed", args.seed}, {"cells", result.cells.size()}};
  json fits = json::array();
  for (const auto& f : result.fits) {
    fits.push_back({{"n", f.n},
                    {"m", f.m},
                    {"slope", f.slope},
                    {"intercept", f.intercept},
                    {"target_slope", -1.0 / f.m},
                    {"points", f.points}});
  }
  j["fits"] = fits;
  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    analysis::write_sweep_csv(result, fs::path(args.out_dir) / "sweep.csv");
    j["csv"] = (fs::path(args.out_dir) / "sweep.csv").string();
    std::ofstream summary(fs::path(args.out_dir) / "summary.json");
    summary << j.dump(2) << "\n";
  }
  emit(j);
  return 0;
}

int cmd_analyze(const std::string& dir_path, bool check) {
  const fs::path dir = dir_path;
  auto traces = protocol::read_trace_csv(dir / "trace.csv");

  // Recount the per-cycle infected densities straight from the trace rows.
  json j{{"command", "analyze"}, {"dir", dir_path}, {"traces", traces.size()}};
  bool ok = true;
  std::string failure;

  std::ifstream prev_csv(dir / "prevalence.csv");
  if (!prev_csv) {
    ok = false;
    failure = "prevalence.csv missing";
  } else {
    std::string line;
    std::getline(prev_csv, line);  // header
    std::size_t checked = 0;
    while (std::getline(prev_csv, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string mapping_s, trial_s, cycle_s, instant_s, tau_s, tag_s;
      std::getline(row, mapping_s, ',');
      std::getline(row, trial_s, ',');
      std::getline(row, cycle_s, ',');
      std::getline(row, instant_s, ',');
      std::getline(row, tau_s, ',');
      std::getline(row, tag_s, ',');
      if (mapping_s == "-1") continue;  // mean rows are derived, skip
      const auto mapping = std::stoul(mapping_s);
      const auto trial = std::stoul(trial_s);
      const auto cycle = std::stoul(cycle_s);
      const double tau = std::stod(tau_s);
      const protocol::Trace* trace = nullptr;
      for (const auto& t : traces) {
        if (t.mapping_index == mapping && t.trial_index == trial) {
          trace = &t;
          break;
        }
      }
      if (trace == nullptr || cycle - 1 >= trace->per_cycle.size()) {
        ok = false;
        failure = "prevalence row without matching trace rows";
        break;
      }
      const auto& records = trace->per_cycle[cycle - 1];
      std::size_t count = 0;
      for (const auto& r : records) {
        if (r.value == trace->global_max) ++count;
      }
      const double recount = static_cast<double>(count) / records.size();
      if (std::abs(recount - tau) > 1e-9) {
        ok = false;
        failure = "tau mismatch at cycle " + cycle_s + ": csv " + tau_s +
                  " vs recount " + std::to_string(recount);
        break;
      }
      ++checked;
    }
    j["rows_checked"] = checked;
  }

  j["consistent"] = ok;
  if (!ok) j["failure"] = failure;
  emit(j);
  if (check && !ok) return 4;
  return 0;
}

int cmd_bound(std::uint64_t n, std::uint64_t x, double tau, double omega,
              std::optional<double> a_w, std::uint32_t k, std::uint64_t step_limit) {
  auto constants = analysis::default_constants();
  double aw = 0.0;
  if (a_w) {
    aw = *a_w;
  } else {
    auto table = load_table(table_params(k, step_limit, 0));
    aw = static_cast<double>(table.complexity_proxy(0));
  }
  const double bound =
      analysis::round_bits(analysis::emergence_lower_bound(n, x, tau, omega, aw, constants));
  json j{{"command", "bound"}, {"n", n},        {"x", x},
         {"tau", tau},         {"omega", omega}, {"a_w", aw},
         {"c5", constants.c5}, {"bound_bits", bound}};
  emit(j);
  return 0;
}

int cmd_scan(const CommonArgs& args) {
  KeyValues kv = load_config(args);
  analysis::ScanConfig scan_cfg;
  scan_cfg.base = config_from_keyvals(kv);
  if (auto v = kv.get("scan.ladder")) {
    scan_cfg.ladder.clear();
    std::istringstream in(*v);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      scan_cfg.ladder.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    }
  }
  if (auto v = kv.get("scan.start_instants")) {
    scan_cfg.start_instants.clear();
    std::istringstream in(*v);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      scan_cfg.start_instants.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    }
  }
  scan_cfg.monotone_slack = kv.get_double("scan.slack", scan_cfg.monotone_slack);

  auto table = load_table(
      table_params(scan_cfg.base.k_cap, scan_cfg.base.step_limit, 0));
  auto constants = analysis::default_constants();
  auto report = analysis::central_time_scan(scan_cfg, args.seed, table, constants);

  json points = json::array();
  for (const auto& p : report.points) {
    points.push_back({{"start_instant", p.start_instant},
                      {"eeac_by_rung", p.eeac_by_rung},
                      {"qualifies", p.qualifies},
                      {"bound_top", p.top_report.bound_bits},
                      {"tau_top", p.top_report.tau},
                      {"omega_top", p.top_report.omega}});
  }
  json j{{"command", "scan"}, {"seed", args.seed}, {"points", points}};
  if (report.detected) {
    j["t_cen_estimate"] = report.t_cen_estimate;
    j["note"] = "upper-bound estimate at this scale";
  } else {
    j["t_cen_estimate"] = nullptr;
    j["note"] = "not detected at this scale";
  }
  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    std::ofstream summary(fs::path(args.out_dir) / "scan.json");
    summary << j.dump(2) << "\n";
    std::ofstream ladder_csv(fs::path(args.out_dir) / "eeac_ladder.csv");
    ladder_csv << "start_instant,n,eeac_bits,bound_bits,tau,omega,margin\n";
    char buf[200];
    for (const auto& p : report.points) {
      for (const auto& r : p.rung_reports) {
        std::snprintf(buf, sizeof(buf), "%u,%llu,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      p.start_instant, static_cast<unsigned long long>(r.n),
                      r.eeac_bits, r.bound_bits, r.tau, r.omega, r.margin);
        ladder_csv << buf;
      }
    }
  }
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bbnet: algorithmic-network simulator and analysis toolkit"};
  app.require_subcommand(1);

  // gen-graph
  auto* gen = app.add_subcommand("gen-graph", "generate or normalize a graph file");
  bool gen_ba = false;
  std::uint32_t gen_n = 1000, gen_m = 3, gen_m0 = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_from, gen_out;
  gen->add_flag("--ba", gen_ba, "generate a preferential-attachment network");
  gen->add_option("--n", gen_n, "node count");
  gen->add_option("--m", gen_m, "edges per new node");
  gen->add_option("--m0", gen_m0, "seed clique size (default m)");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--from", gen_from, "normalize an existing static graph file");
  gen->add_option("--out", gen_out, "output graph file");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "exhaustive program table");
  std::uint32_t enum_k = 16;
  std::uint64_t enum_steps = 100000, enum_diff = 0;
  machine::Value enum_w = 0;
  std::string enum_csv;
  enumerate->add_option("--k", enum_k, "bit-length cap");
  enumerate->add_option("--step-limit", enum_steps, "per-run step budget");
  enumerate->add_option("--w", enum_w, "input word");
  enumerate->add_option("--csv", enum_csv, "CSV export path");
  enumerate->add_option("--diff-step-limit", enum_diff,
                        "report the halting frontier against a second budget");

  // shared run/sweep/scan arguments
  CommonArgs run_args, sweep_args, scan_args;
  bool dry_run = false;
  std::uint32_t sweep_jobs = 0;

  auto* run = app.add_subcommand("run", "execute one experiment");
  run->add_option("--config", run_args.config_path, "config file");
  run->add_option("--set", run_args.overrides, "override section.key=value");
  run->add_option("--seed", run_args.seed, "master seed")->required();
  run->add_option("--out", run_args.out_dir, "output directory");
  run->add_flag("--dry-run", dry_run, "validate and print the resolved config");

  auto* sweep = app.add_subcommand("sweep", "prevalence sweep over a (lambda,m,n) grid");
  sweep->add_option("--config", sweep_args.config_path, "config file");
  sweep->add_option("--set", sweep_args.overrides, "override section.key=value");
  sweep->add_option("--seed", sweep_args.seed, "master seed")->required();
  sweep->add_option("--out", sweep_args.out_dir, "output directory");
  sweep->add_option("--jobs", sweep_jobs, "parallel workers (default: cores)");

  auto* analyze = app.add_subcommand("analyze", "re-derive analysis from persisted traces");
  std::string analyze_dir;
  bool analyze_check = false;
  analyze->add_option("--dir", analyze_dir, "run output directory")->required();
  analyze->add_flag("--check", analyze_check, "exit 4 when recomputation disagrees");

  auto* bound = app.add_subcommand("bound", "evaluate the emergence lower bound");
  std::uint64_t bound_n = 0, bound_x = 0;
  double bound_tau = 0, bound_omega = 0;
  double bound_aw_value = -1;
  std::uint32_t bound_k = 14;
  std::uint64_t bound_steps = 100000;
  bound->add_option("--n", bound_n, "population size")->required();
  bound->add_option("--x", bound_x, "cycle argument")->required();
  bound->add_option("--tau", bound_tau, "measured prevalence")->required();
  bound->add_option("--omega", bound_omega, "halting-mass term")->required();
  bound->add_option("--aw", bound_aw_value, "complexity of the network input (default: proxy(0))");
  bound->add_option("--k", bound_k, "enumeration cap for proxy lookups");
  bound->add_option("--step-limit", bound_steps, "enumeration step budget");

  auto* scan = app.add_subcommand("scan", "central-time scan over start instants");
  scan->add_option("--config", scan_args.config_path, "config file");
  scan->add_option("--set", scan_args.overrides, "override section.key=value");
  scan->add_option("--seed", scan_args.seed, "master seed")->required();
  scan->add_option("--out", scan_args.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      if (!gen_ba && gen_from.empty()) {
        throw config_error("gen-graph needs --ba or --from");
      }
      return cmd_gen_graph(gen_ba, gen_n, gen_m, gen_m0, gen_seed, gen_from, gen_out);
    }
    if (enumerate->parsed()) {
      return cmd_enumerate(enum_k, enum_steps, enum_w, enum_csv, enum_diff);
    }
    if (run->parsed()) return cmd_run(run_args, dry_run);
    if (sweep->parsed()) return cmd_sweep(sweep_args, sweep_jobs);
    if (analyze->parsed()) return cmd_analyze(analyze_dir, analyze_check);
    if (bound->parsed()) {
      std::optional<double> aw;
      if (bound_aw_value >= 0) aw = bound_aw_value;
      return cmd_bound(bound_n, bound_x, bound_tau, bound_omega, aw, bound_k, bound_steps);
    }
    if (scan->parsed()) return cmd_scan(scan_args);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
