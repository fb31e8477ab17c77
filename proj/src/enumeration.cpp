#include "bbnet/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "bbnet/errors.hpp"

namespace bbnet::machine {

std::uint32_t ceil_lg(Value v) {
  if (v <= 1) return 0;
  return static_cast<std::uint32_t>(std::bit_width(v - 1));
}

std::uint32_t fallback_complexity_bits(Value x) {
  const std::uint32_t digits = ceil_lg(x + 1);
  const std::uint32_t digits_of_digits = ceil_lg(static_cast<Value>(ceil_lg(x + 2)) + 1);
  return digits + 2 * digits_of_digits + kLiteralOverheadBits;
}

namespace {

// Non-terminal opcodes in bit-pattern order; indexing with base-4 digits
// yields the canonical (length, lexicographic) enumeration order.
constexpr Op kBodyOps[4] = {Op::Inc, Op::Dbl, Op::Jnz, Op::LoadInput};

TableEntry evaluate(Program program, const EnumerationTable::Params& params) {
  TableEntry entry;
  entry.first_run = run_bounded(program, params.input, params.step_limit);
  Value next_input = params.input;
  for (std::uint32_t c = 0; c < params.cycle_cap; ++c) {
    RunOutcome out = c == 0 ? entry.first_run
                            : run_bounded(program, next_input, params.step_limit);
    if (!out.halted) break;
    ++entry.halted_cycles;
    entry.cycle_values.push_back(out.value);
    next_input = out.value;
  }
  entry.program = std::move(program);
  return entry;
}

}  // namespace

EnumerationTable EnumerationTable::build(const Params& params) {
  EnumerationTable table;
  table.params_ = params;
  const std::uint32_t max_ops = params.max_len_bits / kOpBits;
  for (std::uint32_t n_ops = 1; n_ops <= max_ops; ++n_ops) {
    const std::uint32_t body = n_ops - 1;
    std::vector<std::uint32_t> digits(body, 0);
    for (;;) {
      std::vector<Op> ops;
      ops.reserve(n_ops);
      for (std::uint32_t d : digits) ops.push_back(kBodyOps[d]);
      ops.push_back(Op::OutHalt);
      auto program = Program::from_ops(std::move(ops));
      table.entries_.push_back(evaluate(std::move(*program), params));

      // Increment the base-4 counter, least significant digit last.
      std::size_t i = body;
      while (i > 0) {
        if (++digits[i - 1] < 4) break;
        digits[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  table.rebuild_output_index();
  return table;
}

void EnumerationTable::rebuild_output_index() {
  min_bits_by_output_.clear();
  for (const TableEntry& e : entries_) {
    if (!e.first_run.halted) continue;
    const Value raw = e.first_run.value - 1;
    auto [it, inserted] = min_bits_by_output_.try_emplace(raw, e.program.bit_length());
    if (!inserted && e.program.bit_length() < it->second) {
      it->second = e.program.bit_length();
    }
  }
}

double EnumerationTable::kraft_mass() const {
  double mass = 0.0;
  for (const TableEntry& e : entries_) {
    mass += std::ldexp(1.0, -static_cast<int>(e.program.bit_length()));
  }
  return mass;
}

double EnumerationTable::omega(std::uint32_t cycles) const {
  if (cycles < 1) throw domain_error("omega: cycle count must be >= 1");
  if (cycles > params_.cycle_cap) {
    throw domain_error("omega: cycle count exceeds the table's cycle cap");
  }
  double mass = 0.0;
  for (const TableEntry& e : entries_) {
    if (e.halted_cycles >= cycles) {
      mass += std::ldexp(1.0, -static_cast<int>(e.program.bit_length()));
    }
  }
  return mass;
}

BusyBeaverResult EnumerationTable::busy_beaver(std::uint32_t k_bits) const {
  if (k_bits > params_.max_len_bits) {
    throw domain_error("busy_beaver: k exceeds the enumeration cap");
  }
  BusyBeaverResult result;
  for (const TableEntry& e : entries_) {
    if (e.program.bit_length() > k_bits || !e.first_run.halted) continue;
    if (!result.witness || e.first_run.value > result.value) {
      result.value = e.first_run.value;
      result.witness = e.program;
    }
  }
  return result;
}

std::optional<std::uint32_t> EnumerationTable::enumerated_complexity(Value x) const {
  auto it = min_bits_by_output_.find(x);
  if (it == min_bits_by_output_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t EnumerationTable::complexity_proxy(Value x) const {
  const std::uint32_t fb = fallback_complexity_bits(x);
  auto enumerated = enumerated_complexity(x);
  return enumerated ? std::min(*enumerated, fb) : fb;
}

void EnumerationTable::export_csv(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw parse_error("cannot open for writing: " + file.string());
  out << "program_bits,length,halted,value,steps\n";
  for (const TableEntry& e : entries_) {
    out << e.program.bit_string() << ',' << e.program.bit_length() << ','
        << (e.first_run.halted ? 1 : 0) << ',' << e.first_run.value << ','
        << e.first_run.steps_used << '\n';
  }
}

namespace {

constexpr std::uint32_t kCacheMagic = 0x4e454242;  // "BBEN"
constexpr std::uint32_t kCacheVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
bool get(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return static_cast<bool>(in);
}

}  // namespace

std::string EnumerationTable::cache_name(const Params& params) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "enum_v%u_k%u_s%llu_w%llu.bin", kVmVersion,
                params.max_len_bits,
                static_cast<unsigned long long>(params.step_limit),
                static_cast<unsigned long long>(params.input));
  return buf;
}

void EnumerationTable::save_cache(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw parse_error("cannot open for writing: " + file.string());
  put(out, kCacheMagic);
  put(out, kCacheVersion);
  put(out, kVmVersion);
  put(out, params_.max_len_bits);
  put(out, params_.input);
  put(out, params_.step_limit);
  put(out, params_.cycle_cap);
  put(out, static_cast<std::uint64_t>(entries_.size()));
  for (const TableEntry& e : entries_) {
    put(out, static_cast<std::uint32_t>(e.program.ops().size()));
    for (Op op : e.program.ops()) put(out, static_cast<std::uint8_t>(op));
    put(out, e.first_run.value);
    put(out, static_cast<std::uint8_t>(e.first_run.halted ? 1 : 0));
    put(out, e.first_run.steps_used);
    put(out, e.halted_cycles);
    for (Value v : e.cycle_values) put(out, v);
  }
}

std::optional<EnumerationTable> EnumerationTable::load_cache(
    const std::filesystem::path& file, const Params& expect) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::uint32_t magic = 0, version = 0, vm_version = 0;
  Params params;
  std::uint64_t count = 0;
  if (!get(in, magic) || magic != kCacheMagic) return std::nullopt;
  if (!get(in, version) || version != kCacheVersion) return std::nullopt;
  if (!get(in, vm_version) || vm_version != kVmVersion) return std::nullopt;
  if (!get(in, params.max_len_bits) || !get(in, params.input) ||
      !get(in, params.step_limit) || !get(in, params.cycle_cap) || !get(in, count)) {
    return std::nullopt;
  }
  if (params.max_len_bits != expect.max_len_bits || params.input != expect.input ||
      params.step_limit != expect.step_limit || params.cycle_cap != expect.cycle_cap) {
    return std::nullopt;
  }
  EnumerationTable table;
  table.params_ = params;
  table.entries_.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint32_t n_ops = 0;
    if (!get(in, n_ops) || n_ops == 0 || n_ops > params.max_len_bits / kOpBits) {
      return std::nullopt;
    }
    std::vector<Op> ops(n_ops);
    for (auto& op : ops) {
      std::uint8_t raw = 0;
      if (!get(in, raw) || raw >= kOpCount) return std::nullopt;
      op = static_cast<Op>(raw);
    }
    TableEntry e;
    auto program = Program::from_ops(std::move(ops));
    if (!program) return std::nullopt;
    e.program = std::move(*program);
    std::uint8_t halted = 0;
    if (!get(in, e.first_run.value) || !get(in, halted) ||
        !get(in, e.first_run.steps_used) || !get(in, e.halted_cycles)) {
      return std::nullopt;
    }
    e.first_run.halted = halted != 0;
    e.cycle_values.resize(e.halted_cycles);
    for (auto& v : e.cycle_values) {
      if (!get(in, v)) return std::nullopt;
    }
    table.entries_.push_back(std::move(e));
  }
  table.rebuild_output_index();
  return table;
}

std::vector<const TableEntry*> frontier_diff(const EnumerationTable& a,
                                             const EnumerationTable& b) {
  if (a.entries().size() != b.entries().size()) {
    throw domain_error("frontier_diff: tables enumerate different program sets");
  }
  std::vector<const TableEntry*> diff;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    const auto& ea = a.entries()[i];
    const auto& eb = b.entries()[i];
    if (ea.first_run.halted != eb.first_run.halted ||
        ea.first_run.value != eb.first_run.value) {
      diff.push_back(&ea);
    }
  }
  return diff;
}

}  // namespace bbnet::machine
