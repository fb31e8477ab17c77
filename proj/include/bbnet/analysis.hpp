#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bbnet/enumeration.hpp"
#include "bbnet/experiment.hpp"

namespace bbnet::analysis {

using machine::EnumerationTable;
using machine::Value;
using protocol::ExperimentConfig;
using protocol::ExperimentOutput;
using protocol::SampleSeries;
using protocol::Trace;

// Fraction of nodes whose value at instant t_prime equals the biggest value
// present at instant t_i (the contagion-start maximum). Value-based, tag
// agnostic. t_i <= t <= t_prime must hold inside the trace's instant range.
double density_infected(const Trace& trace, std::uint32_t t_i, std::uint32_t t,
                        std::uint32_t t_prime);

// Tag-based counterpart, emitted for diagnostics.
double density_tagged(const Trace& trace, std::uint32_t t_prime);

// Unweighted mean of the per-sample series over mappings and trials; every
// sample must share a length.
std::vector<double> average_prevalence(const std::vector<SampleSeries>& samples);

struct StationarityReport {
  bool detected = false;
  std::uint32_t delta_star = 0;  // intervals from contagion start
  std::uint32_t window = 0;
  double tolerance = 0.0;
  double level = 0.0;  // mean of the series from detection to the end
};

inline constexpr std::uint32_t kStationarityWindow = 20;
inline constexpr double kStationarityTolerance = 0.005;

// Earliest index where two consecutive trailing windows of width `window`
// have means within `tol` of each other.
StationarityReport detect_stationary(std::span<const double> series,
                                     std::uint32_t window = kStationarityWindow,
                                     double tol = kStationarityTolerance);

// exp(-1/(m*lambda)); the stationary-prevalence law for preferential-
// attachment networks. Domain error for lambda <= 0 or m < 1.
double theoretical_prevalence(double m, double lambda);

// Named constants entering the lower-bound arithmetic, each with a one-line
// provenance note describing how it was obtained.
struct BoundConstants {
  double c0 = 0, c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0;
  double c_l = 0, c_bb = 0, c_omega = 0;
  double eps = 0, eps2 = 0;
  std::map<std::string, std::string> provenance;
};

struct CalibrationOptions {
  std::uint32_t cycle_range = 6;  // c1/eps2 calibrated over c in 1..range
  std::vector<std::uint32_t> ladder = {64, 128, 256, 512, 1024, 2048, 4096};
  std::vector<std::uint64_t> seeds = {101, 102, 103, 104, 105};
  protocol::CycleSchedule schedule;  // c_c calibrated for this family
  std::uint64_t schedule_x_max = 64;
};

// Measures every constant against the enumeration and a sampled ladder;
// the table should be built on input 0.
BoundConstants calibrate_constants(const EnumerationTable& table,
                                   const CalibrationOptions& opts = {});

// The frozen calibration shipped with the tool (K=14, step limit 1e5,
// input 0, identity schedule). A drift test recomputes and compares.
BoundConstants default_constants();

// (tau - omega)*lg N - omega*lg x - 2*omega*lg lg x - a_w - C5.
// Domain errors: N < 2, x < 2, tau or omega outside [0,1].
double emergence_lower_bound(std::uint64_t n, std::uint64_t x, double tau,
                            double omega, double a_w, const BoundConstants& c);

// Bound values are reported at fixed precision; two independent evaluations
// must agree exactly after this rounding.
double round_bits(double bits);

// exp(-1/(m*lambda)) > omega_term.
bool prevalence_exceeds_halting_mass(double m, double lambda, double omega_term);

// Emergent complexity of one node: networked minus isolated proxy bits.
double eac_node(Value networked_final, Value isolated_final,
                const EnumerationTable& table);

// Mean emergent complexity over nodes, then over (mapping, trial) samples.
// `isolated_by_member` is indexed by population member; each trace's nodes
// map through its mapping permutation.
double eeac(const std::vector<Trace>& traces,
            const std::vector<std::vector<std::uint32_t>>& mapping_perms,
            const std::vector<Value>& isolated_by_member,
            const EnumerationTable& table);

struct BoundReport {
  std::uint64_t n = 0;
  std::uint64_t x = 0;
  double tau = 0;
  double omega = 0;
  double a_w = 0;
  double bound_bits = 0;
  double eeac_bits = 0;
  double margin = 0;  // eeac - bound
};

// Ladder scan for the earliest start instant showing the open-endedness
// signature at this finite scale: eeac nondecreasing up the ladder (within
// `monotone_slack` bits) and a positive evaluated bound at the top rung.
struct ScanConfig {
  ExperimentConfig base;
  std::vector<std::uint32_t> ladder = {64, 128, 256, 512};
  std::vector<std::uint32_t> start_instants = {0};
  double monotone_slack = 0.25;  // quarter-bit guard under proxy quantization
};

struct ScanPoint {
  std::uint32_t start_instant = 0;
  std::vector<double> eeac_by_rung;
  std::vector<BoundReport> rung_reports;  // one per ladder rung
  BoundReport top_report;
  bool qualifies = false;
};

struct ScanReport {
  bool detected = false;
  std::uint32_t t_cen_estimate = 0;  // upper-bound estimate at this scale
  std::vector<ScanPoint> points;
};

ScanReport central_time_scan(const ScanConfig& cfg, std::uint64_t seed,
                             const EnumerationTable& table,
                             const BoundConstants& constants);

// Measured tau at the plan's interval end and the matching bound report for
// one experiment output.
BoundReport bound_report_for(const ExperimentOutput& out, const ExperimentConfig& cfg,
                             const EnumerationTable& table,
                             const BoundConstants& constants);

}  // namespace bbnet::analysis
