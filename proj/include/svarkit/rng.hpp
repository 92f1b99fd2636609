#pragma once

#include <cstdint>
#include <random>

namespace svarkit {

// splitmix64 finalizer; decorrelates nearby seeds
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream seeding: replication r of a run seeded with `seed`
// always sees the same generator state, no matter which thread runs it or
// in which order. This is what makes parallel bootstrap output identical
// to the serial reference.
inline std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(mix64(mix64(seed) ^ mix64(stream + 0x51ed270b74a9cc4eULL)));
}

}  // namespace svarkit
