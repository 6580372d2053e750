#include "aorc/rng.hpp"

#include <cmath>

namespace aorc {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// splitmix64: the recommended way to expand a seed into xoshiro state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

RepStream::RepStream(std::uint64_t seed, std::uint64_t rep) {
  // Feed (seed, rep) through two splitmix steps before expanding, so that
  // neighbouring reps (and neighbouring seeds) start from well-separated
  // states. The stream is a pure function of the pair.
  std::uint64_t s = seed;
  std::uint64_t mix = splitmix64(s) ^ (rep + 0x9e3779b97f4a7c15ULL);
  std::uint64_t h = splitmix64(mix);
  std::uint64_t st = h;
  for (auto& word : state_) {
    word = splitmix64(st);
  }
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
    state_[0] = 0x9e3779b97f4a7c15ULL;  // xoshiro must not start from all zero
  }
}

std::uint64_t RepStream::next_bits() {
  // xoshiro256++
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RepStream::uniform() {
  return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
}

double RepStream::normal() {
  // Box-Muller, cosine branch only; u1 shifted into (0,1] so log never sees 0
  const double u1 = (static_cast<double>(next_bits() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace aorc
