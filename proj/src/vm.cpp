#include "bbnet/vm.hpp"

namespace bbnet::machine {

std::optional<Program> Program::from_ops(std::vector<Op> ops) {
  if (ops.empty() || ops.back() != Op::OutHalt) return std::nullopt;
  for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
    if (ops[i] == Op::OutHalt) return std::nullopt;
    if (static_cast<std::uint8_t>(ops[i]) >= kOpCount) return std::nullopt;
  }
  Program p;
  p.ops_ = std::move(ops);
  return p;
}

std::optional<Program> Program::from_bit_string(std::string_view bits) {
  if (bits.empty() || bits.size() % kOpBits != 0) return std::nullopt;
  std::size_t pos = 0;
  auto source = [&]() -> bool { return bits[pos++] == '1'; };
  for (char c : bits) {
    if (c != '0' && c != '1') return std::nullopt;
  }
  DecodeResult r = decode_stream(source);
  if (!r.program || r.bits_consumed != bits.size()) return std::nullopt;
  return r.program;
}

std::string Program::bit_string() const {
  std::string out;
  out.reserve(ops_.size() * kOpBits);
  for (Op op : ops_) {
    auto v = static_cast<std::uint8_t>(op);
    for (int i = kOpBits - 1; i >= 0; --i) {
      out.push_back(((v >> i) & 1u) ? '1' : '0');
    }
  }
  return out;
}

RunOutcome run_bounded(const Program& p, Value input, std::uint64_t step_limit) {
  RunOutcome out;
  const auto& ops = p.ops();
  Value acc = 0;
  std::size_t pc = 0;
  while (out.steps_used < step_limit) {
    ++out.steps_used;
    switch (ops[pc]) {
      case Op::OutHalt:
        out.halted = true;
        out.value = acc + 1;
        return out;
      case Op::Inc:
        if (acc < kAccSaturation) ++acc;
        break;
      case Op::Dbl:
        acc = acc >= kAccSaturation / 2 ? kAccSaturation : acc * 2;
        break;
      case Op::Jnz:
        if (acc != 0) {
          pc = 0;
          continue;
        }
        break;
      case Op::LoadInput:
        acc = input > kAccSaturation ? kAccSaturation : input;
        break;
    }
    ++pc;
  }
  return out;  // budget exhausted: value 0, halted false
}

IsolatedRun run_isolated(const Program& p, Value input, std::uint32_t cycles,
                         std::uint64_t step_limit) {
  IsolatedRun run;
  Value next_input = input;
  for (std::uint32_t c = 0; c < cycles; ++c) {
    RunOutcome out = run_bounded(p, next_input, step_limit);
    if (!out.halted) {
      run.halted_all = false;
      run.final_output = 0;
      return run;
    }
    run.partials.push_back(out.value);
    next_input = out.value;
  }
  run.halted_all = true;
  run.final_output = run.partials.empty() ? 0 : run.partials.back();
  return run;
}

}  // namespace bbnet::machine
