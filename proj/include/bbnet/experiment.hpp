#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbnet/ba.hpp"
#include "bbnet/protocol.hpp"
#include "bbnet/sampler.hpp"

namespace bbnet::protocol {

// Cycle-schedule family c(x): total, nondecreasing, computable.
struct CycleSchedule {
  enum class Kind { Identity, PlusConstant, Linear } kind = Kind::Identity;
  std::uint64_t scale = 1;
  std::uint64_t add = 0;

  std::uint64_t operator()(std::uint64_t x) const;
  std::string to_string() const;
  // "identity" | "plus:<a>" | "linear:<k>,<a>"
  static CycleSchedule parse(const std::string& spec);
};

// Cycle-budget family f(N,t): constant, ceil(lg N), or the measured
// diffusion diameter of the graph at the start instant.
struct CycleBudget {
  enum class Kind { Constant, LgN, Diameter } kind = Kind::LgN;
  std::uint64_t constant = 0;

  std::string to_string() const;
  // "const:<k>" | "lg" | "diameter"
  static CycleBudget parse(const std::string& spec);
};

struct ExperimentConfig {
  // Graph source: a generated BA network or an interchange-format file.
  enum class GraphKind { Ba, File } graph_kind = GraphKind::Ba;
  std::uint32_t ba_n = 64;
  std::uint32_t ba_m = 3;
  std::uint32_t ba_m0 = 0;  // 0: defaults to m
  std::string graph_file;

  // Population and machine budgets.
  std::optional<std::uint64_t> population_seed;  // default: derived from the run seed
  Value input_w = 0;
  std::uint64_t step_limit = 100000;
  std::uint32_t k_cap = 16;  // enumeration cap used by the analysis side

  SisParams sis;

  std::uint32_t c0 = 0;
  CycleSchedule schedule;
  CycleBudget budget;
  std::uint32_t start_instant = 0;  // t_z, contagion start
  std::uint32_t mappings = 1;       // sampled node mappings M
  std::uint32_t trials = 1;         // dynamics replicates per mapping

  std::optional<std::uint32_t> times_override;   // |T|
  std::optional<std::uint32_t> cycles_override;  // n

  enum class Payload { Vm, Synthetic } payload = Payload::Vm;
  std::uint32_t synthetic_seeds = 1;  // cycle-1 maximizers in synthetic mode

  // Reverted/kept susceptible records still imitate when set (variant).
  StepOptions step_options;

  // Baseline for emergent-complexity accounting: the protocol baseline is
  // the node's cycle-1 output (an isolated node under the contagion-only
  // protocol computes nothing after cycle 1); the reiterated baseline
  // reruns each program on its own outputs for every cycle.
  enum class EacBaseline { Cycle1, Reiterated } eac_baseline = EacBaseline::Cycle1;
};

// Full synchronous trace of one (mapping, trial) run.
struct Trace {
  std::uint32_t mapping_index = 0;
  std::uint32_t trial_index = 0;
  std::uint64_t dynamics_seed = 0;
  std::uint32_t c0 = 0;
  std::uint32_t start_instant = 0;
  std::uint32_t times = 0;
  std::uint32_t cycles = 0;
  Value global_max = 0;
  std::vector<std::vector<Record>> per_cycle;  // [cycle-1][node]
  std::vector<Value> finals;
};

// Density series over instants start_instant..times-1 for one trace.
struct SampleSeries {
  std::uint32_t mapping_index = 0;
  std::uint32_t trial_index = 0;
  std::vector<double> tau_value;  // fraction carrying the cycle-1 maximum
  std::vector<double> tau_tag;    // fraction tagged Infected (diagnostic)
};

struct ResolvedPlan {
  std::size_t nodes = 0;
  std::uint32_t times = 0;
  std::uint32_t cycles = 0;
  std::uint32_t start_instant = 0;
  std::uint64_t budget_f = 0;          // f(N, t_z)
  std::uint64_t bound_x = 0;           // z + f + 2
  std::uint64_t schedule_cycles = 0;   // c(z + f + 2)
  std::uint32_t interval_end = 0;      // instant index c(z+f+2) - c0 - 1
};

struct ExperimentOutput {
  ResolvedPlan plan;
  graph::StaticNetwork static_net;  // set for BA/static sources
  bool has_static = false;
  std::vector<Trace> traces;        // kept only when requested
  std::vector<SampleSeries> series;
  std::vector<std::vector<std::uint32_t>> mapping_perms;  // node -> member
  std::vector<Value> member_cycle1;     // per population member
  std::vector<Value> member_reiterated; // per member, reiterated-baseline finals
  machine::Population population;       // empty in synthetic mode
};

struct RunnerOptions {
  bool keep_traces = true;
  bool want_reiterated_baseline = false;
};

// Validates config arithmetic; throws config_error naming the violated
// inequality. Needs the resolved node count.
ResolvedPlan resolve_plan(const ExperimentConfig& cfg, std::size_t nodes,
                          const graph::TemporalGraph& g);

ExperimentOutput run_experiment(const ExperimentConfig& cfg, std::uint64_t seed,
                                const RunnerOptions& opts = {});

// Reiterated isolated outputs for every member: each program rerun on its
// own previous output for `cycles` cycles; non-halting cycles pin the final
// output to 0.
std::vector<Value> run_isolated_population(const machine::Population& pop,
                                           Value input, std::uint32_t cycles,
                                           std::uint64_t step_limit);

}  // namespace bbnet::protocol
