#pragma once

#include <cstdint>

namespace skewlab {

// Counter-based splittable generator. A stream is addressed by
// (seed, particle, step, lane); draws are pure functions of the address,
// so results are identical under any execution schedule.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t particle,
                                  std::uint64_t step, std::uint64_t lane = 0) {
  std::uint64_t h = splitmix64(seed ^ 0x243f6a8885a308d3ULL);
  h = splitmix64(h ^ particle * 0x9e3779b97f4a7c15ULL);
  h = splitmix64(h ^ step * 0xd1b54a32d192ed03ULL);
  h = splitmix64(h ^ lane * 0x8cb92ba72f3d8dd7ULL);
  return h;
}

/// Uniform double in [0,1) from a stream address.
inline double uniform01(std::uint64_t seed, std::uint64_t particle,
                        std::uint64_t step, std::uint64_t lane = 0) {
  return static_cast<double>(counter_hash(seed, particle, step, lane) >> 11) *
         0x1.0p-53;
}

}  // namespace skewlab
