// Test-side oracles, deliberately independent of the library code paths
// they check.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace oracles {

// ---------------------------------------------------------------------------
// Reachability: dynamic programming over (node, time) states. Consumes raw
// edge quadruples, not the graph structure under test.
struct RawEdge {
  std::uint32_t from, send, to, arrive;
};

inline std::vector<std::optional<std::uint32_t>> reach_dp(
    std::size_t nodes, std::size_t times, const std::vector<RawEdge>& edges,
    std::uint32_t source, std::uint32_t start) {
  std::vector<std::vector<char>> reach(times, std::vector<char>(nodes, 0));
  reach[start][source] = 1;
  for (std::uint32_t t = start; t < times; ++t) {
    if (t > start) {
      for (std::size_t v = 0; v < nodes; ++v) {
        reach[t][v] |= reach[t - 1][v];
      }
    }
    for (const RawEdge& e : edges) {
      if (e.send == t && reach[t][e.from]) reach[e.arrive][e.to] = 1;
    }
  }
  std::vector<std::optional<std::uint32_t>> earliest(nodes);
  for (std::size_t v = 0; v < nodes; ++v) {
    for (std::uint32_t t = start; t < times; ++t) {
      if (reach[t][v]) {
        earliest[v] = t - start;
        break;
      }
    }
  }
  return earliest;
}

// ---------------------------------------------------------------------------
// A from-scratch interpreter and decoder for the 3-bit opcode language,
// written against the documented semantics rather than the vm.hpp types.
struct MiniOutcome {
  unsigned long long value = 0;
  bool halted = false;
};

inline MiniOutcome mini_run(const std::vector<int>& ops, unsigned long long input,
                            unsigned long long step_limit) {
  const unsigned long long sat = 1ull << 62;
  unsigned long long acc = 0;
  std::size_t pc = 0;
  for (unsigned long long step = 0; step < step_limit; ++step) {
    const int op = ops[pc];
    if (op == 0) return {acc + 1, true};
    if (op == 1) {
      if (acc < sat) ++acc;
    } else if (op == 2) {
      acc = acc >= sat / 2 ? sat : acc * 2;
    } else if (op == 3) {
      if (acc != 0) {
        pc = 0;
        continue;
      }
    } else if (op == 4) {
      acc = input > sat ? sat : input;
    }
    ++pc;
  }
  return {0, false};
}

// Decodes an exact-length bit pattern (MSB-first fields); returns the op
// run only when the whole pattern is one valid program.
inline std::optional<std::vector<int>> mini_decode(std::uint64_t bits, int len_bits) {
  if (len_bits % 3 != 0 || len_bits == 0) return std::nullopt;
  std::vector<int> ops;
  for (int i = 0; i < len_bits; i += 3) {
    const int field = static_cast<int>((bits >> (len_bits - i - 3)) & 0x7);
    if (field > 4) return std::nullopt;
    ops.push_back(field);
    if (field == 0) {
      if (i + 3 != len_bits) return std::nullopt;  // trailing bits
      return ops;
    }
  }
  return std::nullopt;  // never terminated
}

// Cycle-bounded halting mass by brute force over every bit pattern up to
// the cap: sum 2^-len over programs halting in all `cycles` isolated runs.
inline double omega_brute(int max_len_bits, unsigned long long input, int cycles,
                          unsigned long long step_limit) {
  double mass = 0.0;
  for (int len = 3; len <= max_len_bits; len += 3) {
    for (std::uint64_t bits = 0; bits < (1ull << len); ++bits) {
      auto ops = mini_decode(bits, len);
      if (!ops) continue;
      unsigned long long next = input;
      bool ok = true;
      for (int c = 0; c < cycles; ++c) {
        MiniOutcome out = mini_run(*ops, next, step_limit);
        if (!out.halted) {
          ok = false;
          break;
        }
        next = out.value;
      }
      if (ok) mass += std::ldexp(1.0, -len);
    }
  }
  return mass;
}

// ---------------------------------------------------------------------------
// Second evaluator for the emergence lower bound: long double arithmetic,
// terms accumulated in reverse order, own rounding.
inline double bound_eval2(std::uint64_t n, std::uint64_t x, double tau, double omega,
                          double a_w, double c5) {
  long double acc = 0.0L;
  acc -= static_cast<long double>(c5);
  acc -= static_cast<long double>(a_w);
  const long double lgx = std::log2(static_cast<long double>(x));
  acc -= 2.0L * static_cast<long double>(omega) * std::log2(lgx);
  acc -= static_cast<long double>(omega) * lgx;
  acc += (static_cast<long double>(tau) - static_cast<long double>(omega)) *
         std::log2(static_cast<long double>(n));
  return static_cast<double>(std::round(acc * 1e6L) / 1e6L);
}

// ---------------------------------------------------------------------------
// Text-level trace recount: parses trace.csv rows itself and tallies the
// per-cycle counts of the run's maximum cycle-1 value.
struct TraceRecount {
  // key: (trial, mapping) -> per-cycle count of max carriers, node totals
  std::map<std::pair<int, int>, std::vector<int>> max_carriers;
  std::map<std::pair<int, int>, int> nodes;
  std::map<std::pair<int, int>, std::vector<unsigned long long>> last_values;
};

inline TraceRecount recount_trace(const std::string& csv_text) {
  TraceRecount rc;
  std::istringstream in(csv_text);
  std::string line;
  std::getline(in, line);  // header
  struct Row {
    int trial, mapping, cycle, node;
    unsigned long long value;
  };
  std::vector<Row> rows;
  std::map<std::pair<int, int>, unsigned long long> vmax;
  std::map<std::pair<int, int>, int> max_cycle, max_node;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row r{};
    std::istringstream row(line);
    std::string tok;
    std::getline(row, tok, ',');
    r.trial = std::stoi(tok);
    std::getline(row, tok, ',');
    r.mapping = std::stoi(tok);
    std::getline(row, tok, ',');
    r.cycle = std::stoi(tok);
    std::getline(row, tok, ',');
    r.node = std::stoi(tok);
    std::getline(row, tok, ',');  // tag
    std::getline(row, tok, ',');  // origin
    std::getline(row, tok, ',');
    r.value = std::stoull(tok);
    rows.push_back(r);
    auto key = std::make_pair(r.trial, r.mapping);
    if (r.cycle == 1) vmax[key] = std::max(vmax[key], r.value);
    max_cycle[key] = std::max(max_cycle[key], r.cycle);
    max_node[key] = std::max(max_node[key], r.node);
  }
  for (const Row& r : rows) {
    auto key = std::make_pair(r.trial, r.mapping);
    auto& counts = rc.max_carriers[key];
    if (static_cast<int>(counts.size()) < max_cycle[key]) counts.resize(max_cycle[key], 0);
    if (r.value == vmax[key]) ++counts[r.cycle - 1];
    auto& lasts = rc.last_values[key];
    if (static_cast<int>(lasts.size()) < max_node[key] + 1) lasts.resize(max_node[key] + 1, 0);
    if (r.cycle == max_cycle[key]) lasts[r.node] = r.value;
    rc.nodes[key] = max_node[key] + 1;
  }
  return rc;
}

// ---------------------------------------------------------------------------
// Chi-square statistic over observed vs expected counts.
inline double chi_square(const std::vector<double>& observed,
                         const std::vector<double>& expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

}  // namespace oracles
