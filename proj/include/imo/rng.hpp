#pragma once

#include <cstdint>
#include <string_view>

namespace imo {

/// SplitMix64: tiny, fully portable generator. Used everywhere randomness is
/// needed so campaign results do not depend on the standard library's
/// distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return (next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  uint64_t state_;
};

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministic per-run stream: independent of execution order, so
/// parallel campaigns reproduce serial ones bit for bit.
inline SplitMix64 run_stream(uint64_t seed, std::string_view problem,
                             uint64_t run_index) {
  SplitMix64 mix(seed ^ (fnv1a64(problem) + 0x632be59bd9b4e019ULL * (run_index + 1)));
  return SplitMix64(mix.next());
}

}  // namespace imo
