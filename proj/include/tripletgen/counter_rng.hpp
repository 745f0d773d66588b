#pragma once

#include <cstdint>
#include <limits>

namespace tripletgen {

/// Counter-based 64-bit generator: output n of stream (seed, stream_id) is a
/// SplitMix64 finalizer applied to key + n * golden. Streams are independent
/// of how work is partitioned, which keeps parallel Monte Carlo reproducible.
/// Satisfies UniformRandomBitGenerator so it plugs into <random> distributions.
class CounterEngine {
public:
  using result_type = std::uint64_t;

  CounterEngine(std::uint64_t seed, std::uint64_t stream_id)
      : key_(mix(seed ^ mix(stream_id + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGolden); }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace tripletgen
