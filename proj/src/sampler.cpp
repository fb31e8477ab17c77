#include "bbnet/sampler.hpp"

namespace bbnet::machine {

Program sample_program(Rng& rng, SampleStats* stats) {
  for (;;) {
    if (stats) ++stats->attempts;
    DecodeResult r = decode_stream([&]() { return rng.next_bit(); });
    if (r.program) return std::move(*r.program);
    if (stats) ++stats->dead_ends;
  }
}

Population sample_population(std::size_t n, std::uint64_t seed) {
  Population pop;
  pop.seed = seed;
  pop.members.reserve(n);
  Rng rng(derive_seed(seed, "population"));
  for (std::size_t i = 0; i < n; ++i) {
    pop.members.push_back(sample_program(rng, &pop.stats));
  }
  return pop;
}

}  // namespace bbnet::machine
