#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace revkit {

// Deterministic generator behind every seeded operation in the toolkit:
// splitmix64 expands the user seed into the 256-bit state of a
// xoshiro256** generator. The exact recipe (including the [0,1) mapping,
// the modulo range reduction and the shuffle order) is documented in the
// README so draws can be reproduced bit-for-bit outside this codebase.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& s : state_) s = split_next(x);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0,1), 53 significant bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0,n). Plain modulo; bias is negligible at the
  // index ranges used here and the reduction is trivial to replicate.
  uint64_t next_below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("next_below: n must be positive");
    return next_u64() % n;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Fisher-Yates, walking from the back of the vector.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_below(i)]);
    }
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static uint64_t split_next(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t state_[4];
};

// First index whose cumulative probability exceeds u, walking ids in
// ascending order. Rounding can leave u at or above the total mass; the
// last index is returned in that case.
inline int inverse_cdf_draw(const std::vector<double>& probs, double u) {
  if (probs.empty()) throw std::invalid_argument("inverse_cdf_draw: empty distribution");
  double cum = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace revkit
