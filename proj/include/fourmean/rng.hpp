#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fourmean {

// All randomness in the toolkit flows from a single user seed through named
// sub-streams, so bulk runs are reproducible regardless of how work is split
// across restarts or threads.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Independent generator for (seed, stream index). Streams with distinct
// indices are decorrelated even for adjacent seeds.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = splitmix64(seed ^ splitmix64(stream + 0x51ed2701));
  return std::mt19937_64(s);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::string_view tag,
                                   std::uint64_t index = 0) {
  return make_stream(seed, fnv1a(tag) + index);
}

}  // namespace fourmean
