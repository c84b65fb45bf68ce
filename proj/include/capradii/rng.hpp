#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace capradii {

// splitmix64 step, used both as a mixer for deriving sub-stream seeds and to
// seed the main engine. Constants from Vigna's reference implementation.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  uint64_t s = seed;
  uint64_t h = splitmix64(s);
  s ^= a * 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64(s);
  s ^= b + 0xd1b54a32d192ed03ULL;
  h ^= splitmix64(s);
  s ^= c + 0x8cb92ba72f3d8dd7ULL;
  h ^= splitmix64(s);
  return h;
}

// Seeded generator: mt19937_64 with explicit output derivations so runs are
// reproducible from a single 64-bit seed (generator "capradii-rng v1", see
// the format notes in the README).
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // Uniform in [0, bound) by rejection on the top multiple of bound.
  uint64_t next_below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("rng bound must be positive");
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % bound;
  }

  int pick_index(int count) { return static_cast<int>(next_below(static_cast<uint64_t>(count))); }

  // Uniform element of a nonempty vector.
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[pick_index(static_cast<int>(v.size()))];
  }

  bool coin() { return (eng_() >> 63) != 0; }

  // Uniform double in [0,1) from the top 53 bits.
  double next_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double next_real(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace capradii
