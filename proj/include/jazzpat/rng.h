// Pinned deterministic randomness: SplitMix64 streams keyed by FNV-1a
// hashes, driving Fisher-Yates shuffles. Subsets and splits must be
// reproducible across platforms and releases, so the algorithms are part
// of the output contract and never change behind a seed.

#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace jazzpat {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Stream for one named draw: independent of every other label and of
/// evaluation order.
inline SplitMix64 streamFor(std::uint64_t seed, std::string_view label) {
  return SplitMix64(seed ^ fnv1a64(label));
}

/// In-place Fisher-Yates; the modulo draw is part of the pinned contract.
template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.next() % i]);
}

}  // namespace jazzpat
