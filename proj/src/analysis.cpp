#include "bbnet/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "bbnet/errors.hpp"

namespace bbnet::analysis {

namespace {

// Instant t_j holds the records of cycle c0 + 1 + j.
const std::vector<protocol::Record>& records_at_instant(const Trace& trace,
                                                        std::uint32_t instant) {
  if (instant >= trace.times) throw domain_error("instant out of trace range");
  const std::size_t cycle = trace.c0 + 1 + instant;
  if (cycle - 1 >= trace.per_cycle.size()) {
    throw domain_error("trace does not cover the requested instant");
  }
  return trace.per_cycle[cycle - 1];
}

}  // namespace

double density_infected(const Trace& trace, std::uint32_t t_i, std::uint32_t t,
                        std::uint32_t t_prime) {
  if (!(t_i <= t && t <= t_prime)) {
    throw domain_error("density interval must satisfy t_i <= t <= t'");
  }
  const auto& start_records = records_at_instant(trace, t_i);
  const auto& end_records = records_at_instant(trace, t_prime);
  Value best = 0;
  for (const auto& r : start_records) best = std::max(best, r.value);
  std::size_t count = 0;
  for (const auto& r : end_records) {
    if (r.value == best) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(end_records.size());
}

double density_tagged(const Trace& trace, std::uint32_t t_prime) {
  const auto& records = records_at_instant(trace, t_prime);
  std::size_t count = 0;
  for (const auto& r : records) {
    if (r.tag == protocol::Tag::Infected) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(records.size());
}

std::vector<double> average_prevalence(const std::vector<SampleSeries>& samples) {
  if (samples.empty()) throw domain_error("average_prevalence: no samples");
  const std::size_t len = samples.front().tau_value.size();
  std::vector<double> mean(len, 0.0);
  for (const auto& s : samples) {
    if (s.tau_value.size() != len) {
      throw domain_error("average_prevalence: ragged sample series");
    }
    for (std::size_t i = 0; i < len; ++i) mean[i] += s.tau_value[i];
  }
  for (double& v : mean) v /= static_cast<double>(samples.size());
  return mean;
}

StationarityReport detect_stationary(std::span<const double> series,
                                     std::uint32_t window, double tol) {
  StationarityReport report;
  report.window = window;
  report.tolerance = tol;
  if (window < 1 || series.size() < 2 * static_cast<std::size_t>(window)) {
    return report;
  }
  std::vector<double> prefix(series.size() + 1, 0.0);
  for (std::size_t i = 0; i < series.size(); ++i) {
    prefix[i + 1] = prefix[i] + series[i];
  }
  auto mean_of = [&](std::size_t lo, std::size_t hi) {  // [lo, hi)
    return (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  };
  for (std::size_t i = 2 * window - 1; i < series.size(); ++i) {
    const double m1 = mean_of(i + 1 - 2 * window, i + 1 - window);
    const double m2 = mean_of(i + 1 - window, i + 1);
    if (std::abs(m1 - m2) <= tol) {
      report.detected = true;
      report.delta_star = static_cast<std::uint32_t>(i);
      report.level = mean_of(i, series.size());
      return report;
    }
  }
  return report;
}

double theoretical_prevalence(double m, double lambda) {
  if (!(m >= 1.0)) throw domain_error("theoretical_prevalence: m must be >= 1");
  if (!(lambda > 0.0)) throw domain_error("theoretical_prevalence: lambda must be > 0");
  return std::exp(-1.0 / (m * lambda));
}

double round_bits(double bits) {
  // Micro-bit precision; the canonical reporting representation.
  return std::round(bits * 1e6) / 1e6;
}

double emergence_lower_bound(std::uint64_t n, std::uint64_t x, double tau,
                            double omega, double a_w, const BoundConstants& c) {
  if (n < 2) throw domain_error("emergence_lower_bound: N must be >= 2");
  if (x < 2) throw domain_error("emergence_lower_bound: lg lg x needs x >= 2");
  if (!(tau >= 0.0 && tau <= 1.0) || !(omega >= 0.0 && omega <= 1.0)) {
    throw domain_error("emergence_lower_bound: tau and omega must lie in [0,1]");
  }
  const double lg_n = std::log2(static_cast<double>(n));
  const double lg_x = std::log2(static_cast<double>(x));
  const double lg_lg_x = std::log2(lg_x);
  return (tau - omega) * lg_n - omega * lg_x - 2.0 * omega * lg_lg_x - a_w - c.c5;
}

bool prevalence_exceeds_halting_mass(double m, double lambda, double omega_term) {
  return theoretical_prevalence(m, lambda) > omega_term;
}

double eac_node(Value networked_final, Value isolated_final,
                const EnumerationTable& table) {
  return static_cast<double>(table.complexity_proxy(networked_final)) -
         static_cast<double>(table.complexity_proxy(isolated_final));
}

double eeac(const std::vector<Trace>& traces,
            const std::vector<std::vector<std::uint32_t>>& mapping_perms,
            const std::vector<Value>& isolated_by_member,
            const EnumerationTable& table) {
  if (traces.empty()) throw domain_error("eeac: no traces");
  double total = 0.0;
  for (const Trace& trace : traces) {
    const auto& perm = mapping_perms.at(trace.mapping_index);
    if (perm.size() != trace.finals.size() ||
        isolated_by_member.size() != trace.finals.size()) {
      throw domain_error("eeac: population, mapping and trace sizes disagree");
    }
    double node_sum = 0.0;
    for (std::size_t v = 0; v < trace.finals.size(); ++v) {
      node_sum += eac_node(trace.finals[v], isolated_by_member[perm[v]], table);
    }
    total += node_sum / static_cast<double>(trace.finals.size());
  }
  return total / static_cast<double>(traces.size());
}

BoundReport bound_report_for(const ExperimentOutput& out, const ExperimentConfig& cfg,
                             const EnumerationTable& table,
                             const BoundConstants& constants) {
  BoundReport report;
  report.n = out.plan.nodes;
  report.x = out.plan.bound_x;

  const auto mean = average_prevalence(out.series);
  const std::uint32_t idx = out.plan.interval_end - out.plan.start_instant;
  if (idx >= mean.size()) throw domain_error("interval end outside the series");
  report.tau = mean[idx];

  const auto omega_cycles = static_cast<std::uint32_t>(
      std::min<std::uint64_t>(out.plan.schedule_cycles, table.params().cycle_cap));
  report.omega = table.omega(omega_cycles);
  report.a_w = static_cast<double>(table.complexity_proxy(cfg.input_w));
  report.bound_bits = round_bits(emergence_lower_bound(
      report.n, report.x, report.tau, report.omega, report.a_w, constants));

  const auto& baseline = cfg.eac_baseline == ExperimentConfig::EacBaseline::Cycle1
                             ? out.member_cycle1
                             : out.member_reiterated;
  if (!out.traces.empty() && !baseline.empty()) {
    report.eeac_bits = round_bits(eeac(out.traces, out.mapping_perms, baseline, table));
  }
  report.margin = round_bits(report.eeac_bits - report.bound_bits);
  return report;
}

ScanReport central_time_scan(const ScanConfig& cfg, std::uint64_t seed,
                             const EnumerationTable& table,
                             const BoundConstants& constants) {
  ScanReport report;
  for (std::uint32_t t_z : cfg.start_instants) {
    ScanPoint point;
    point.start_instant = t_z;
    bool monotone = true;
    double prev = 0.0;
    BoundReport top;
    for (std::size_t r = 0; r < cfg.ladder.size(); ++r) {
      ExperimentConfig ecfg = cfg.base;
      ecfg.ba_n = cfg.ladder[r];
      ecfg.start_instant = t_z;
      // The ladder shares one population stream so each rung extends the
      // previous one (prefix property of the sampler).
      ecfg.population_seed = derive_seed(seed, "scan-population");
      protocol::RunnerOptions opts;
      opts.keep_traces = true;
      opts.want_reiterated_baseline =
          ecfg.eac_baseline == ExperimentConfig::EacBaseline::Reiterated;
      ExperimentOutput out = protocol::run_experiment(ecfg, derive_seed(seed, "scan", r), opts);
      top = bound_report_for(out, ecfg, table, constants);
      point.eeac_by_rung.push_back(top.eeac_bits);
      point.rung_reports.push_back(top);
      if (r > 0 && top.eeac_bits < prev - cfg.monotone_slack) monotone = false;
      prev = top.eeac_bits;
    }
    point.top_report = top;
    point.qualifies = monotone && top.bound_bits > 0.0;
    report.points.push_back(point);
    if (point.qualifies && !report.detected) {
      report.detected = true;
      report.t_cen_estimate = t_z;
    }
  }
  return report;
}

}  // namespace bbnet::analysis
