#pragma once

#include <cstddef>
#include <cstdint>

namespace hqc {

/// One step of the splitmix64 sequence.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the independent substream `index` derived from a user seed.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(0x5851f42d4c957f2dULL + index));
}

}  // namespace hqc
