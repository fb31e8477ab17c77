#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bbnet/vm.hpp"

namespace bbnet::machine {

// ceil(lg v) for v >= 1.
std::uint32_t ceil_lg(Value v);

// Literal-encoding upper bound on program length for the number x:
// ceil(lg(x+1)) + 2*ceil(lg(ceil(lg(x+2))+1)) + overhead.
std::uint32_t fallback_complexity_bits(Value x);

struct TableEntry {
  Program program;
  RunOutcome first_run;             // cycle 1 on the table's input word
  std::uint32_t halted_cycles = 0;  // consecutive halting isolated cycles (capped)
  std::vector<Value> cycle_values;  // output per halting cycle, cycle 1 first
};

struct BusyBeaverResult {
  Value value = 0;  // max halting output among programs of length <= k bits
  std::optional<Program> witness;
};

// Exhaustive table of every syntactically valid program up to a bit cap,
// with bounded executions on one input word. Canonical order: shorter
// programs first, ties by lexicographic bit pattern.
class EnumerationTable {
 public:
  struct Params {
    std::uint32_t max_len_bits = 16;
    Value input = 0;
    std::uint64_t step_limit = 100000;
    std::uint32_t cycle_cap = 32;
  };

  static EnumerationTable build(const Params& params);

  const Params& params() const { return params_; }
  const std::vector<TableEntry>& entries() const { return entries_; }

  // Sum of 2^-|p| over all enumerated programs; exact in double for the
  // bit caps this tool supports.
  double kraft_mass() const;

  // Cycle-bounded halting mass: sum of 2^-|p| over programs that halt in
  // every isolated cycle up to `cycles`. Raw (not Kraft-normalized).
  double omega(std::uint32_t cycles) const;

  // Max halting output over programs of length <= k_bits; witness is the
  // canonically first maximizer. k above the table cap is a caller error.
  BusyBeaverResult busy_beaver(std::uint32_t k_bits) const;

  // Shortest enumerated program whose raw halting output equals x, or the
  // literal fallback when the enumeration never produces x; the smaller of
  // the two when both exist. Meaningful for tables built on input 0.
  std::uint32_t complexity_proxy(Value x) const;

  // Shortest enumerated producer of x, if any (no fallback).
  std::optional<std::uint32_t> enumerated_complexity(Value x) const;

  void export_csv(const std::filesystem::path& file) const;
  void save_cache(const std::filesystem::path& file) const;
  static std::optional<EnumerationTable> load_cache(const std::filesystem::path& file,
                                                    const Params& expect);

  // Cache file name for a parameter set, e.g. enum_v1_k16_s100000_w0.bin.
  static std::string cache_name(const Params& params);

 private:
  Params params_;
  std::vector<TableEntry> entries_;
  std::unordered_map<Value, std::uint32_t> min_bits_by_output_;

  void rebuild_output_index();
};

// Programs whose cycle-1 outcome differs between two tables; used to size
// the halting frontier between two step budgets.
std::vector<const TableEntry*> frontier_diff(const EnumerationTable& a,
                                             const EnumerationTable& b);

}  // namespace bbnet::machine
