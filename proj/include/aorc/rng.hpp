#pragma once

#include <cstdint>

namespace aorc {

// Counter-based per-replication random streams.
//
// Every replication r of a simulation gets its own generator whose state is a
// pure function of (master seed, r). Replications can therefore run in any
// order and on any number of threads and still consume identical randomness,
// which is what makes simulation output bit-reproducible.
//
// The stream is xoshiro256++ with state derived from splitmix64, the standard
// seeding recipe for that family. Doubles use the top 53 bits.
class RepStream {
 public:
  RepStream(std::uint64_t seed, std::uint64_t rep);

  std::uint64_t next_bits();

  // Uniform on [0, 1).
  double uniform();

  // Standard normal via Box-Muller; draws two uniforms per call, no caching
  // (a cached second value would make draw positions depend on call history).
  double normal();

 private:
  std::uint64_t state_[4];
};

}  // namespace aorc
