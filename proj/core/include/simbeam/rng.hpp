// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace simbeam {

/// Stream identifiers used when deriving per-purpose seeds from a trial seed.
enum class Stream : std::uint64_t {
  kTrial = 0x7472,
  kChannel = 0x6368,
  kPhaseInit = 0x7068,
  kCodebook = 0x6362,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based seed derivation: the result depends only on (parent, path), never on
/// how many draws other streams have made. This keeps trials order-independent.
inline std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(parent);
  for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p + 0x632BE59BD9B4E019ULL));
  return s;
}

inline std::uint64_t derive_seed(std::uint64_t parent, Stream stream, std::uint64_t index = 0) {
  return derive_seed(parent, {static_cast<std::uint64_t>(stream), index});
}

using Rng = std::mt19937_64;

}  // namespace simbeam
