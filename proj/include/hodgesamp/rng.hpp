#pragma once

#include <cstdint>
#include <random>

namespace hodgesamp {

using Rng = std::mt19937_64;

/// Independent streams derived from one experiment seed.
enum class SeedPurpose : std::uint64_t {
  synthesis = 1,
  noise = 2,
  sampling = 3,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Sub-seed for (purpose, index) under `master`:
///   splitmix64(splitmix64(master ^ splitmix64(purpose)) + index).
/// Distinct (purpose, index) pairs give unrelated streams; the map is
/// fixed so every table can be regenerated from the master seed alone.
inline std::uint64_t sub_seed(std::uint64_t master, SeedPurpose purpose, std::uint64_t index = 0) {
  const std::uint64_t stream = splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(purpose)));
  return splitmix64(stream + index);
}

}  // namespace hodgesamp
