#pragma once

#include <cstdint>

namespace spindle {

// Counter-keyed substream generator (splitmix64 key expansion feeding
// xoshiro256++). Streams are fully determined by (seed, key_a, key_b), so
// replication (seed, n, rep) substreams are reproducible no matter how work
// is scheduled across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t key_a = 0, std::uint64_t key_b = 0);

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53 random bits.
  double uniform01();

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

 private:
  std::uint64_t s_[4];
};

}  // namespace spindle
