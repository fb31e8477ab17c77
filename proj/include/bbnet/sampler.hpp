#pragma once

#include <cstdint>
#include <vector>

#include "bbnet/rng.hpp"
#include "bbnet/vm.hpp"

namespace bbnet::machine {

// Attempt bookkeeping: a dead end is a fair-coin bit sequence the decoder
// rejects (invalid opcode field); such attempts are resampled in full.
struct SampleStats {
  std::uint64_t attempts = 0;
  std::uint64_t dead_ends = 0;

  double dead_end_fraction() const {
    return attempts == 0 ? 0.0 : static_cast<double>(dead_ends) / static_cast<double>(attempts);
  }
};

// Draws one program by feeding fair coin flips to the prefix-free decoder.
// Among raw attempts each valid program appears with probability exactly
// 2^-|p|; accepted draws follow the same law conditioned on validity.
Program sample_program(Rng& rng, SampleStats* stats = nullptr);

struct Population {
  std::vector<Program> members;
  std::uint64_t seed = 0;
  SampleStats stats;

  std::size_t size() const { return members.size(); }
};

// N i.i.d. draws from one dedicated stream. Draws are sequential, so for a
// fixed seed the first k members of a size-n population equal the size-k
// population; ladder experiments lean on this prefix property.
Population sample_population(std::size_t n, std::uint64_t seed);

}  // namespace bbnet::machine
