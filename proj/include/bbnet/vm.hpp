#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bbnet::machine {

using Value = std::uint64_t;

// The accumulator saturates here so that doubling can never wrap to zero and
// spuriously release a JNZ loop.
inline constexpr Value kAccSaturation = Value{1} << 62;

// Version tag for persisted enumeration caches; bump on any semantic change
// to the instruction set or its encoding.
inline constexpr std::uint32_t kVmVersion = 1;

// Fixed encoding overhead charged by the literal-length fallback of the
// complexity estimate: one terminal opcode field.
inline constexpr std::uint32_t kLiteralOverheadBits = 3;

// Opcodes, one 3-bit field each. A program is a run of non-terminal opcodes
// closed by OutHalt; the decoder stops at the first OutHalt, which makes the
// code set prefix-free. Field values 5..7 are invalid and decode as dead
// ends.
enum class Op : std::uint8_t {
  OutHalt = 0,    // emit accumulator and halt
  Inc = 1,        // acc += 1
  Dbl = 2,        // acc *= 2
  Jnz = 3,        // if acc != 0, jump to the first instruction
  LoadInput = 4,  // acc = input word
};

inline constexpr int kOpBits = 3;
inline constexpr std::uint8_t kOpCount = 5;

inline char op_mnemonic(Op op) {
  switch (op) {
    case Op::OutHalt: return 'H';
    case Op::Inc: return 'I';
    case Op::Dbl: return 'D';
    case Op::Jnz: return 'J';
    case Op::LoadInput: return 'L';
  }
  return '?';
}

// A syntactically valid, self-delimiting program.
class Program {
 public:
  Program() = default;

  // Builds from an opcode run; the last op must be the only OutHalt.
  // Returns nullopt for malformed runs.
  static std::optional<Program> from_ops(std::vector<Op> ops);

  // Parses a '0'/'1' string; the whole string must be consumed exactly.
  static std::optional<Program> from_bit_string(std::string_view bits);

  const std::vector<Op>& ops() const { return ops_; }
  std::uint32_t bit_length() const {
    return static_cast<std::uint32_t>(ops_.size()) * kOpBits;
  }

  std::string bit_string() const;

  bool operator==(const Program& other) const { return ops_ == other.ops_; }

 private:
  std::vector<Op> ops_;
};

// Feeds bits from `source` (a callable returning bool) into the decoder
// until it either completes a program or hits an invalid opcode field.
struct DecodeResult {
  std::optional<Program> program;  // empty on dead end
  std::uint32_t bits_consumed = 0;
};

template <typename BitSource>
DecodeResult decode_stream(BitSource&& source) {
  DecodeResult result;
  std::vector<Op> ops;
  for (;;) {
    std::uint8_t field = 0;
    for (int i = 0; i < kOpBits; ++i) {
      field = static_cast<std::uint8_t>((field << 1) | (source() ? 1 : 0));
    }
    result.bits_consumed += kOpBits;
    if (field >= kOpCount) {
      return result;  // dead end
    }
    ops.push_back(static_cast<Op>(field));
    if (static_cast<Op>(field) == Op::OutHalt) {
      result.program = Program::from_ops(std::move(ops));
      return result;
    }
  }
}

// One bounded execution. `value` follows the total-machine convention:
// raw output + 1 on halt, 0 when the step budget runs out.
struct RunOutcome {
  Value value = 0;
  bool halted = false;
  std::uint64_t steps_used = 0;
};

RunOutcome run_bounded(const Program& p, Value input, std::uint64_t step_limit);

// Isolated multi-cycle execution: cycle 1 runs on `input`, every later cycle
// reruns the program on its own previous output. A cycle that exhausts the
// step budget marks the whole run non-halting with final output 0.
struct IsolatedRun {
  std::vector<Value> partials;  // one entry per completed halting cycle
  bool halted_all = false;
  Value final_output = 0;
};

IsolatedRun run_isolated(const Program& p, Value input, std::uint32_t cycles,
                         std::uint64_t step_limit);

}  // namespace bbnet::machine
