#pragma once

#include <cstdint>

namespace mtpp {

// Counter-based generator: draw i of stream (seed, stream_id) is
// SplitMix64's finalizer applied to a key derived from all three, so any
// stream can be reproduced independently of how work is split across
// threads, and results are identical on every platform.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t NextU64();
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  // Uniform integer in [lo, hi] (inclusive); rejection sampling, no modulo bias.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);
  // Standard normal via the Box-Muller transform; the second variate of each
  // pair is discarded so the stream position depends only on the call count.
  double Normal(double mean, double stddev);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace mtpp
