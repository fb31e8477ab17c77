#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bbnet {

// splitmix64; used for seed derivation only.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a master seed, a domain label and
// up to two indices. Streams with distinct (domain, a, b) never collide in
// practice, which is what keeps parallel trial workers deterministic.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view domain,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = 0xcbf29ce484222325ull ^ master;
  for (char c : domain) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  std::uint64_t s = h;
  std::uint64_t x = splitmix64(s) ^ a;
  x = splitmix64(x);
  x ^= b;
  return splitmix64(x);
}

// Deterministic RNG. std::mt19937_64 output is pinned by the standard, but
// the std distributions are not, so all draws go through our own helpers to
// stay bit-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Single fair bit, buffered 64 at a time, most significant first.
  bool next_bit() {
    if (bits_left_ == 0) {
      bit_buffer_ = next_u64();
      bits_left_ = 64;
    }
    --bits_left_;
    return (bit_buffer_ >> bits_left_) & 1u;
  }

  // Uniform in [0,1) with 53 random mantissa bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound) by rejection; exact for any bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  bool bernoulli(double p) { return next_unit() < p; }

 private:
  std::mt19937_64 eng_;
  std::uint64_t bit_buffer_ = 0;
  int bits_left_ = 0;
};

}  // namespace bbnet
