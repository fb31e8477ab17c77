#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbnet/rng.hpp"
#include "bbnet/temporal_graph.hpp"
#include "bbnet/vm.hpp"

namespace bbnet::protocol {

using graph::NodeId;
using graph::TemporalGraph;
using graph::TimeIndex;
using machine::Value;

enum class Tag : std::uint8_t { Susceptible = 0, Infected = 1, Raw = 2 };

char tag_letter(Tag t);

// Structured stand-in for the concatenated partial-output string: the tag,
// the cycle the record was formed in, the forming node and its value. The
// shared network input word is tracked once per trace, not per record.
struct Record {
  Tag tag = Tag::Susceptible;
  std::uint32_t cycle = 0;
  NodeId origin = 0;
  Value value = 0;

  bool operator==(const Record&) const = default;
};

// Canonical bit-exact serialization (2 tag bits, then varint fields) used
// for hashing and replay comparison.
void serialize_record(const Record& r, std::string& out);
std::optional<Record> deserialize_record(std::string_view bytes, std::size_t& pos);

struct SisParams {
  double nu = 1.0;     // infection probability
  double delta = 0.0;  // cure probability

  // Effective spreading rate nu/delta; undefined when delta == 0.
  std::optional<double> lambda() const {
    if (delta == 0.0) return std::nullopt;
    return nu / delta;
  }

  void validate() const;  // probabilities in [0,1]
};

// Node <-> population-member bijection plus the cycle bookkeeping: c0 idle
// cycles before the first instant and the total cycle count n.
struct NodeMapping {
  std::vector<std::uint32_t> node_to_member;  // size N, a permutation
  std::uint32_t c0 = 0;
  std::uint32_t total_cycles = 0;

  void validate(std::size_t times) const;  // bijectivity, c0 + |T| + 1 <= n
};

// Synchronous per-cycle state. `current` holds the records after the last
// completed cycle; `cycle_one` keeps the revert targets for cures.
struct NetworkState {
  std::uint32_t cycle = 0;  // last completed cycle, 1-based
  Value global_max = 0;     // population-wide maximum cycle-1 value
  std::vector<Record> current;
  std::vector<Record> cycle_one;
};

// Which of the five contagion rules fired for a node in one step; used by
// the rule-coverage tests.
enum class RuleApplied : std::uint8_t {
  InfectOnExposure = 4,   // susceptible, exposed, nu-draw success
  KeepUnexposed = 5,      // susceptible, not exposed (no draw)
  KeepExposed = 6,        // susceptible, exposed, nu-draw failure
  CureRevert = 7,         // infected, delta-draw success
  StayInfected = 8,       // infected, delta-draw failure
};

struct StepOptions {
  // When set, susceptible keep-branches still imitate the best visible
  // value while keeping the Susceptible tag (protocol variant; no bounds
  // are claimed for it).
  bool susceptible_ifp_variant = false;
};

// Cycle 1: every node evaluated in isolation on the network input; the
// population-wide maximizers are tagged Infected (all ties), everyone else
// Susceptible. `values[v]` is the cycle-1 value of node v.
NetworkState init_cycle_one(const std::vector<Value>& values, bool single_cycle);

// One synchronous contagion round into cycle `state.cycle + 1`, reading
// in-neighbors from `g` at send instant `send`. Exactly one Bernoulli draw
// per exposed susceptible (nu) and per infected node (delta), taken in
// node-id order.
void step_cycle(NetworkState& state, const TemporalGraph& g, TimeIndex send,
                const SisParams& sis, Rng& rng, const StepOptions& opts = {},
                std::vector<RuleApplied>* rule_log = nullptr);

// A cycle with no active instant: every record is carried verbatim.
void carry_cycle(NetworkState& state);

// Final outputs: the value field of each node's last record.
std::vector<Value> finalize(const NetworkState& state);

}  // namespace bbnet::protocol
