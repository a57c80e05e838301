#include "mtpp/rng.h"

#include <cmath>
#include <numbers>

#include "mtpp/errors.h"

namespace mtpp {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream_id)
    : key_(SplitMix64(SplitMix64(seed) ^ (stream_id * 0xd1b54a32d192ed03ULL))) {}

std::uint64_t CounterRng::NextU64() {
  return SplitMix64(key_ ^ SplitMix64(counter_++));
}

double CounterRng::Uniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

std::int64_t CounterRng::UniformInt(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw PreconditionError("UniformInt: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == ~0ULL) return static_cast<std::int64_t>(NextU64());
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = ~0ULL - (~0ULL % range);
  std::uint64_t x;
  do {
    x = NextU64();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % range);
}

double CounterRng::Normal(double mean, double stddev) {
  // 1 - U lies in (0, 1], keeping the logarithm finite.
  const double u1 = 1.0 - Uniform();
  const double u2 = Uniform();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + stddev * z;
}

}  // namespace mtpp
