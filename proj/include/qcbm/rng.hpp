#pragma once

#include <cstdint>
#include <random>

namespace qcbm {

using RngStream = std::mt19937_64;

// splitmix64 finalizer; used to whiten seeds and derive substreams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a base seed and up to three
// labels (step, slot, shift sign, ...). Results are stable across
// platforms and independent of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (a + 0x100000001b3ULL));
  h = splitmix64(h ^ (b + 0x1000193ULL));
  h = splitmix64(h ^ (c + 0x811c9dc5ULL));
  return h;
}

inline RngStream make_stream(std::uint64_t seed) { return RngStream(splitmix64(seed)); }

// Uniform double in [0, 1) with 53 random bits. Hand-rolled so that
// sampled counts are bit-identical across standard libraries.
inline double uniform_unit(RngStream& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qcbm
