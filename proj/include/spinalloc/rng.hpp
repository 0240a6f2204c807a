#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace spinalloc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derive a stream seed from a master seed and a tuple tag, e.g.
// mix_seed(master, {model_tag, i, q, realization}). Order-sensitive.
inline std::uint64_t mix_seed(std::uint64_t seed,
                              std::initializer_list<std::uint64_t> tags) {
  for (std::uint64_t t : tags) seed = splitmix64(seed ^ t);
  return splitmix64(seed);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

}  // namespace spinalloc
