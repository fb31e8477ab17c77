#include "bbnet/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "bbnet/errors.hpp"
#include "bbnet/graph_io.hpp"

namespace bbnet::protocol {

std::uint64_t CycleSchedule::operator()(std::uint64_t x) const {
  switch (kind) {
    case Kind::Identity: return x;
    case Kind::PlusConstant: return x + add;
    case Kind::Linear: return scale * x + add;
  }
  return x;
}

std::string CycleSchedule::to_string() const {
  switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::PlusConstant: return "plus:" + std::to_string(add);
    case Kind::Linear:
      return "linear:" + std::to_string(scale) + "," + std::to_string(add);
  }
  return "identity";
}

CycleSchedule CycleSchedule::parse(const std::string& spec) {
  CycleSchedule s;
  if (spec == "identity" || spec.empty()) {
    s.kind = Kind::Identity;
    return s;
  }
  if (spec.rfind("plus:", 0) == 0) {
    s.kind = Kind::PlusConstant;
    s.add = std::stoull(spec.substr(5));
    return s;
  }
  if (spec.rfind("linear:", 0) == 0) {
    const auto body = spec.substr(7);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw config_error("linear schedule needs <k>,<a>");
    s.kind = Kind::Linear;
    s.scale = std::stoull(body.substr(0, comma));
    s.add = std::stoull(body.substr(comma + 1));
    if (s.scale == 0) throw config_error("linear schedule scale must be >= 1");
    return s;
  }
  throw config_error("unknown cycle schedule: " + spec);
}

std::string CycleBudget::to_string() const {
  switch (kind) {
    case Kind::Constant: return "const:" + std::to_string(constant);
    case Kind::LgN: return "lg";
    case Kind::Diameter: return "diameter";
  }
  return "lg";
}

CycleBudget CycleBudget::parse(const std::string& spec) {
  CycleBudget b;
  if (spec == "lg" || spec.empty()) {
    b.kind = Kind::LgN;
    return b;
  }
  if (spec == "diameter") {
    b.kind = Kind::Diameter;
    return b;
  }
  if (spec.rfind("const:", 0) == 0) {
    b.kind = Kind::Constant;
    b.constant = std::stoull(spec.substr(6));
    return b;
  }
  throw config_error("unknown cycle budget: " + spec);
}

namespace {

std::uint64_t ceil_lg_size(std::size_t n) {
  if (n <= 1) return 0;
  return std::bit_width(n - 1);
}

std::uint64_t eval_budget(const CycleBudget& b, std::size_t n,
                          const graph::TemporalGraph& g, std::uint32_t start) {
  switch (b.kind) {
    case CycleBudget::Kind::Constant:
      return b.constant;
    case CycleBudget::Kind::LgN:
      return ceil_lg_size(n);
    case CycleBudget::Kind::Diameter: {
      auto d = graph::diffusion_diameter(g, start);
      if (!d) {
        throw config_error(
            "diameter cycle budget: some node cannot reach the whole graph");
      }
      return *d;
    }
  }
  return 0;
}

}  // namespace

ResolvedPlan resolve_plan(const ExperimentConfig& cfg, std::size_t nodes,
                          const graph::TemporalGraph& g) {
  ResolvedPlan plan;
  plan.nodes = nodes;
  plan.start_instant = cfg.start_instant;
  const std::uint64_t z = cfg.start_instant;
  plan.budget_f = eval_budget(cfg.budget, nodes, g, cfg.start_instant);
  plan.bound_x = z + plan.budget_f + 2;
  plan.schedule_cycles = cfg.schedule(plan.bound_x);

  // The schedule must be nondecreasing and dominate the cycle arithmetic
  // over the whole experiment range.
  std::uint64_t prev = cfg.schedule(0);
  for (std::uint64_t x = 1; x <= plan.bound_x; ++x) {
    const std::uint64_t cx = cfg.schedule(x);
    if (cx < prev) {
      throw config_error("cycle schedule violates c(" + std::to_string(x) +
                         ") >= c(" + std::to_string(x - 1) + ")");
    }
    prev = cx;
  }
  if (plan.schedule_cycles < cfg.c0 + plan.bound_x) {
    throw config_error(
        "cycle schedule violates c(z+f+2) >= c0+z+f+2: c(" +
        std::to_string(plan.bound_x) + ") = " + std::to_string(plan.schedule_cycles) +
        " < " + std::to_string(cfg.c0 + plan.bound_x));
  }
  if (plan.schedule_cycles < cfg.c0 + 1) {
    throw config_error("cycle schedule leaves no room for the first cycle");
  }
  plan.interval_end = static_cast<std::uint32_t>(plan.schedule_cycles - cfg.c0 - 1);

  plan.times = cfg.times_override
                   ? *cfg.times_override
                   : static_cast<std::uint32_t>(plan.interval_end + 1);
  if (plan.times < 1) throw config_error("experiment needs at least one instant");
  if (!cfg.times_override && plan.interval_end + 1 > plan.times) {
    throw config_error("internal: interval end beyond the last instant");
  }
  if (cfg.times_override && plan.interval_end >= plan.times) {
    // A shortened horizon is allowed, the interval end is clamped for
    // reporting.
    plan.interval_end = plan.times - 1;
  }

  const std::uint32_t min_cycles = cfg.c0 + plan.times + 1;
  plan.cycles = cfg.cycles_override ? *cfg.cycles_override : min_cycles;
  // A one-cycle run is the degenerate no-communication case and sits
  // outside the c0 + |T| + 1 <= n arithmetic.
  if (plan.cycles != 1 && plan.cycles < min_cycles) {
    throw config_error("cycle count violates c0 + |T| + 1 <= n: need >= " +
                       std::to_string(min_cycles) + ", got " +
                       std::to_string(plan.cycles));
  }
  if (cfg.start_instant >= plan.times) {
    throw config_error("start instant out of range");
  }
  return plan;
}

std::vector<Value> run_isolated_population(const machine::Population& pop,
                                           Value input, std::uint32_t cycles,
                                           std::uint64_t step_limit) {
  std::vector<Value> finals(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    finals[i] =
        machine::run_isolated(pop.members[i], input, cycles, step_limit).final_output;
  }
  return finals;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg, std::uint64_t seed,
                                const RunnerOptions& opts) {
  cfg.sis.validate();
  ExperimentOutput out;

  // Graph. Static sources get a measuring view with enough instants for
  // diameter-based budgets; the run view is rebuilt once times are known.
  graph::TemporalGraph g;
  std::size_t nodes = 0;
  ExperimentConfig resolved_cfg = cfg;
  if (cfg.graph_kind == ExperimentConfig::GraphKind::Ba) {
    graph::BaParams ba;
    ba.n = cfg.ba_n;
    ba.m = cfg.ba_m;
    ba.m0 = cfg.ba_m0 == 0 ? cfg.ba_m : cfg.ba_m0;
    ba.seed = derive_seed(seed, "graph");
    out.static_net = graph::generate_ba(ba);
    out.has_static = true;
    nodes = out.static_net.node_count();
    g = out.static_net.temporal(nodes + 1);
  } else {
    graph::GraphFile file = graph::load_graph(cfg.graph_file);
    if (file.kind == graph::GraphFile::Kind::Static) {
      out.static_net = std::move(file.static_net);
      out.has_static = true;
      nodes = out.static_net.node_count();
      g = out.static_net.temporal(nodes + 1);
    } else {
      g = std::move(file.tvg);
      nodes = g.node_count();
      // A TVG file fixes its own horizon.
      if (resolved_cfg.times_override &&
          *resolved_cfg.times_override != g.time_count()) {
        throw config_error("TVG file has " + std::to_string(g.time_count()) +
                           " instants, config asks for " +
                           std::to_string(*resolved_cfg.times_override));
      }
      resolved_cfg.times_override = static_cast<std::uint32_t>(g.time_count());
    }
  }

  ResolvedPlan plan = resolve_plan(resolved_cfg, nodes, g);
  if (out.has_static) {
    g = out.static_net.temporal(plan.times);
  }
  out.plan = plan;

  // Population and cycle-1 values.
  const bool synthetic = cfg.payload == ExperimentConfig::Payload::Synthetic;
  if (!synthetic) {
    const std::uint64_t pop_seed =
        cfg.population_seed ? *cfg.population_seed : derive_seed(seed, "population-seed");
    out.population = machine::sample_population(nodes, pop_seed);
    out.member_cycle1.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      out.member_cycle1[i] =
          machine::run_bounded(out.population.members[i], cfg.input_w, cfg.step_limit)
              .value;
    }
    if (opts.want_reiterated_baseline) {
      out.member_reiterated = run_isolated_population(
          out.population, cfg.input_w, plan.cycles, cfg.step_limit);
    }
  }

  const bool single_cycle = plan.cycles == 1;
  const std::uint32_t z = cfg.start_instant;

  for (std::uint32_t mi = 0; mi < cfg.mappings; ++mi) {
    // Node -> member bijection; mapping 0 is the identity, later mappings
    // are uniform permutations from their own stream.
    std::vector<std::uint32_t> perm(nodes);
    for (std::uint32_t v = 0; v < nodes; ++v) perm[v] = v;
    if (mi > 0 && !synthetic) {
      Rng mrng(derive_seed(seed, "mapping", mi));
      for (std::size_t v = nodes; v > 1; --v) {
        std::swap(perm[v - 1], perm[mrng.next_below(v)]);
      }
    }
    NodeMapping mapping;
    mapping.node_to_member = perm;
    mapping.c0 = cfg.c0;
    mapping.total_cycles = plan.cycles;
    mapping.validate(plan.times);
    out.mapping_perms.push_back(perm);

    for (std::uint32_t ti = 0; ti < cfg.trials; ++ti) {
      const std::uint64_t dyn_seed = derive_seed(seed, "dynamics", mi, ti);
      Rng rng(dyn_seed);

      std::vector<Value> node_values(nodes, 0);
      if (synthetic) {
        // Source placement doubles as the mapping average in synthetic
        // mode: a fresh uniform placement per trial.
        std::vector<std::uint32_t> ids(nodes);
        for (std::uint32_t v = 0; v < nodes; ++v) ids[v] = v;
        for (std::uint32_t s = 0; s < cfg.synthetic_seeds && s < nodes; ++s) {
          const auto j = s + rng.next_below(nodes - s);
          std::swap(ids[s], ids[j]);
          node_values[ids[s]] = 1;
        }
      } else {
        for (std::uint32_t v = 0; v < nodes; ++v) {
          node_values[v] = out.member_cycle1[perm[v]];
        }
      }

      NetworkState st = init_cycle_one(node_values, single_cycle);

      Trace trace;
      trace.mapping_index = mi;
      trace.trial_index = ti;
      trace.dynamics_seed = dyn_seed;
      trace.c0 = cfg.c0;
      trace.start_instant = z;
      trace.times = plan.times;
      trace.cycles = plan.cycles;
      trace.global_max = st.global_max;

      SampleSeries series;
      series.mapping_index = mi;
      series.trial_index = ti;

      auto observe = [&](std::uint32_t cycle) {
        if (opts.keep_traces) trace.per_cycle.push_back(st.current);
        // Instant alignment: cycle c0+1+j sits at instant t_j.
        if (cycle >= cfg.c0 + 1 + z && cycle <= cfg.c0 + plan.times) {
          double inf_value = 0, inf_tag = 0;
          for (const Record& r : st.current) {
            if (r.value == st.global_max) inf_value += 1;
            if (r.tag == Tag::Infected) inf_tag += 1;
          }
          series.tau_value.push_back(inf_value / static_cast<double>(nodes));
          series.tau_tag.push_back(inf_tag / static_cast<double>(nodes));
        }
      };

      observe(1);
      for (std::uint32_t cycle = 2; cycle <= plan.cycles; ++cycle) {
        const std::uint32_t first_step_cycle = cfg.c0 + 2 + z;
        const std::uint32_t last_step_cycle = cfg.c0 + plan.times;
        if (!single_cycle && cycle >= first_step_cycle && cycle <= last_step_cycle) {
          const TimeIndex send = z + (cycle - first_step_cycle);
          step_cycle(st, g, send, cfg.sis, rng, cfg.step_options);
        } else {
          carry_cycle(st);
        }
        observe(cycle);
      }

      trace.finals = finalize(st);
      out.series.push_back(std::move(series));
      if (opts.keep_traces) out.traces.push_back(std::move(trace));
    }
  }
  return out;
}

}  // namespace bbnet::protocol
