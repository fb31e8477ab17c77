#include "bbnet/protocol.hpp"

#include <algorithm>

#include "bbnet/errors.hpp"

namespace bbnet::protocol {

char tag_letter(Tag t) {
  switch (t) {
    case Tag::Susceptible: return 'S';
    case Tag::Infected: return 'I';
    case Tag::Raw: return 'R';
  }
  return '?';
}

namespace {

void put_varint(std::uint64_t v, std::string& out) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>(0x80 | (v & 0x7f)));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

std::optional<std::uint64_t> get_varint(std::string_view bytes, std::size_t& pos) {
  std::uint64_t v = 0;
  int shift = 0;
  while (pos < bytes.size() && shift <= 63) {
    const auto b = static_cast<std::uint8_t>(bytes[pos++]);
    v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if ((b & 0x80) == 0) return v;
    shift += 7;
  }
  return std::nullopt;
}

}  // namespace

void serialize_record(const Record& r, std::string& out) {
  out.push_back(static_cast<char>(r.tag));
  put_varint(r.cycle, out);
  put_varint(r.origin, out);
  put_varint(r.value, out);
}

std::optional<Record> deserialize_record(std::string_view bytes, std::size_t& pos) {
  if (pos >= bytes.size()) return std::nullopt;
  const auto tag_raw = static_cast<std::uint8_t>(bytes[pos++]);
  if (tag_raw > 2) return std::nullopt;
  auto cycle = get_varint(bytes, pos);
  auto origin = get_varint(bytes, pos);
  auto value = get_varint(bytes, pos);
  if (!cycle || !origin || !value) return std::nullopt;
  Record r;
  r.tag = static_cast<Tag>(tag_raw);
  r.cycle = static_cast<std::uint32_t>(*cycle);
  r.origin = static_cast<NodeId>(*origin);
  r.value = *value;
  return r;
}

void SisParams::validate() const {
  if (!(nu >= 0.0 && nu <= 1.0) || !(delta >= 0.0 && delta <= 1.0)) {
    throw config_error("SIS probabilities must lie in [0,1]");
  }
}

void NodeMapping::validate(std::size_t times) const {
  std::vector<char> seen(node_to_member.size(), 0);
  for (std::uint32_t member : node_to_member) {
    if (member >= node_to_member.size() || seen[member]) {
      throw config_error("node mapping is not a bijection");
    }
    seen[member] = 1;
  }
  // One-cycle runs are the degenerate no-communication case.
  if (total_cycles != 1 && static_cast<std::size_t>(c0) + times + 1 > total_cycles) {
    throw config_error("cycle budget too small: need c0 + |T| + 1 <= n");
  }
}

NetworkState init_cycle_one(const std::vector<Value>& values, bool single_cycle) {
  NetworkState st;
  st.cycle = 1;
  st.global_max = values.empty() ? 0 : *std::max_element(values.begin(), values.end());
  st.current.resize(values.size());
  for (NodeId v = 0; v < values.size(); ++v) {
    Record& r = st.current[v];
    r.cycle = 1;
    r.origin = v;
    r.value = values[v];
    if (single_cycle) {
      r.tag = Tag::Raw;
    } else {
      r.tag = values[v] == st.global_max ? Tag::Infected : Tag::Susceptible;
    }
  }
  st.cycle_one = st.current;
  return st;
}

void step_cycle(NetworkState& state, const TemporalGraph& g, TimeIndex send,
                const SisParams& sis, Rng& rng, const StepOptions& opts,
                std::vector<RuleApplied>* rule_log) {
  const std::size_t n = state.current.size();
  const std::uint32_t next_cycle = state.cycle + 1;
  if (rule_log) rule_log->assign(n, RuleApplied::KeepUnexposed);

  // Exposure: the max over a node's own previous record and its incoming
  // neighbors' records equals the global maximum. Carriers of the maximum
  // mark their out-neighbors; self-exposure falls out of the value check.
  std::vector<char> exposed(n, 0);
  std::vector<Value> best_seen;
  if (opts.susceptible_ifp_variant) best_seen.assign(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    if (state.current[u].value == state.global_max) exposed[u] = 1;
    if (state.current[u].value == state.global_max || opts.susceptible_ifp_variant) {
      for (NodeId v : g.out_neighbors_at(u, send)) {
        if (state.current[u].value == state.global_max) exposed[v] = 1;
        if (opts.susceptible_ifp_variant) {
          best_seen[v] = std::max(best_seen[v], state.current[u].value);
        }
      }
    }
  }

  std::vector<Record> next(n);
  for (NodeId v = 0; v < n; ++v) {
    const Record& prev = state.current[v];
    Record& out = next[v];
    if (prev.tag == Tag::Infected) {
      if (rng.bernoulli(sis.delta)) {
        out = state.cycle_one[v];  // rule 7: revert to the cycle-1 record
        if (rule_log) (*rule_log)[v] = RuleApplied::CureRevert;
      } else {
        out = prev;  // rule 8
        if (rule_log) (*rule_log)[v] = RuleApplied::StayInfected;
      }
    } else if (exposed[v]) {
      if (rng.bernoulli(sis.nu)) {
        out = Record{Tag::Infected, next_cycle, v, state.global_max};  // rule 4
        if (rule_log) (*rule_log)[v] = RuleApplied::InfectOnExposure;
      } else {
        out = prev;  // rule 6
        if (rule_log) (*rule_log)[v] = RuleApplied::KeepExposed;
        if (opts.susceptible_ifp_variant) {
          out = Record{Tag::Susceptible, next_cycle, v,
                       std::max(prev.value, best_seen[v])};
        }
      }
    } else {
      out = prev;  // rule 5: not exposed, no draw
      if (rule_log) (*rule_log)[v] = RuleApplied::KeepUnexposed;
      if (opts.susceptible_ifp_variant) {
        out = Record{Tag::Susceptible, next_cycle, v,
                     std::max(prev.value, best_seen[v])};
      }
    }
  }
  state.current = std::move(next);
  state.cycle = next_cycle;
}

void carry_cycle(NetworkState& state) { ++state.cycle; }

std::vector<Value> finalize(const NetworkState& state) {
  std::vector<Value> finals(state.current.size());
  for (std::size_t v = 0; v < finals.size(); ++v) {
    finals[v] = state.current[v].value;
  }
  return finals;
}

}  // namespace bbnet::protocol
