#pragma once

#include <cstdint>
#include <string_view>

#include "matbreak/inverse.hpp"

namespace matbreak {

/// SplitMix64 step, used for seeding and stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** 1.0 (Blackman & Vigna), state filled from SplitMix64(seed).
/// Bounded draws use rejection on the high bits, so a given seed yields the
/// same stream on every platform.
class Rng {
 public:
  using result_type = std::uint64_t;
  static constexpr std::string_view kName = "xoshiro256**";

  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  static Rng from_state(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2, std::uint64_t s3) {
    Rng r(0);
    r.s_[0] = s0;
    r.s_[1] = s1;
    r.s_[2] = s2;
    r.s_[3] = s3;
    return r;
  }

  /// Independent stream for (seed, index), e.g. one per campaign trial.
  static Rng derive(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t sm = seed ^ (index * 0xd1342543de82ef95ULL);
    splitmix64(sm);
    return Rng(splitmix64(sm) ^ index);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const int bits = 64 - __builtin_clzll(bound - 1);
    for (;;) {
      const std::uint64_t v = bits == 64 ? (*this)() : ((*this)() >> (64 - bits));
      if (v < bound) return v;
    }
  }

  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(below(span));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

inline ModMatrix random_matrix(std::size_t dim, Modulus mod, Rng& rng) {
  ModMatrix m(dim, mod);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m.set(i, j, rng.below(mod.value()));
  return m;
}

/// Resamples until the matrix inverts.
inline ModMatrix random_invertible(std::size_t dim, Modulus mod, Rng& rng) {
  for (;;) {
    ModMatrix m = random_matrix(dim, mod, rng);
    if (is_invertible(m)) return m;
  }
}

/// Uniform prime in [lo, hi); the range must contain one.
inline std::uint64_t random_prime(std::uint64_t lo, std::uint64_t hi, Rng& rng) {
  for (;;) {
    const std::uint64_t c = lo + rng.below(hi - lo);
    if (is_prime(c)) return c;
  }
}

}  // namespace matbreak
