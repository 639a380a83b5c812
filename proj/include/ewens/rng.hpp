#pragma once

#include <cstdint>

namespace ewens {

// SplitMix64 finalizer; bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based generator: output i is a hash of (key, i), where the key is
// derived from (seed, stream). Any (seed, stream) pair yields an independent
// reproducible substream, so parallel replication keyed by replicate index
// gives results independent of the worker count.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(mix64(seed) ^ (0xd1342543de82ef95ULL * (stream + 1)))) {}

  std::uint64_t next_u64() {
    return mix64(key_ ^ (0x9e3779b97f4a7c15ULL * ++counter_));
  }

  // Uniform double in [0,1) with 53 random bits.
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ewens
