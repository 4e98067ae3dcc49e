#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "matbreak/inverse.hpp"
#include "matbreak/random.hpp"

namespace matbreak {

/// Public parameters: two non-commuting invertible matrices over a prime
/// field. The ambient group GL(dim, F_p) is identified by (modulus, dim).
class KexParams {
 public:
  /// Validates prime modulus, dim >= 2, invertibility and M1*M2 != M2*M1.
  static KexParams make(ModMatrix m1, ModMatrix m2) {
    if (m1.dim() != m2.dim()) throw DimensionMismatch();
    if (!(m1.modulus() == m2.modulus())) throw ModulusMismatch();
    m1.modulus().require_field();
    if (m1.dim() < 2) throw DegenerateDim();
    if (!is_invertible(m1) || !is_invertible(m2)) throw Error("M1 and M2 must be invertible");
    if (m1 * m2 == m2 * m1) throw Error("M1 and M2 must not commute");
    return KexParams(std::move(m1), std::move(m2));
  }

  const ModMatrix& m1() const { return m1_; }
  const ModMatrix& m2() const { return m2_; }
  const Modulus& modulus() const { return m1_.modulus(); }
  std::size_t dim() const { return m1_.dim(); }

  friend bool operator==(const KexParams&, const KexParams&) = default;

 private:
  KexParams(ModMatrix m1, ModMatrix m2) : m1_(std::move(m1)), m2_(std::move(m2)) {}
  ModMatrix m1_;
  ModMatrix m2_;
};

/// One party's exponent pair: (a1, a2) for Alice or (b1, b2) for Bob.
struct KexSecret {
  std::int64_t e1 = 0;
  std::int64_t e2 = 0;
  friend bool operator==(const KexSecret&, const KexSecret&) = default;
};

/// Everything a passive observer sees.
struct KexTranscript {
  KexParams params;
  ModMatrix c1;
  ModMatrix c2;
  std::optional<std::uint64_t> seed;
  std::string generator = std::string(Rng::kName);

  friend bool operator==(const KexTranscript&, const KexTranscript&) = default;
};

inline constexpr std::int64_t kDefaultExponentMin = 2;
inline constexpr std::int64_t kDefaultExponentMax = std::int64_t{1} << 20;

inline KexParams kex_keygen(Modulus modulus, std::size_t dim, Rng& rng) {
  if (dim < 2) throw DegenerateDim();
  modulus.require_field();
  for (;;) {
    ModMatrix m1 = random_invertible(dim, modulus, rng);
    ModMatrix m2 = random_invertible(dim, modulus, rng);
    if (!(m1 * m2 == m2 * m1)) return KexParams::make(std::move(m1), std::move(m2));
  }
}

inline KexParams kex_keygen(Modulus modulus, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return kex_keygen(modulus, dim, rng);
}

inline KexSecret sample_secret(Rng& rng, std::int64_t lo = kDefaultExponentMin,
                               std::int64_t hi = kDefaultExponentMax) {
  KexSecret s;
  s.e1 = rng.range(lo, hi);
  s.e2 = rng.range(lo, hi);
  return s;
}

/// C1 = M1^{a1} M2^{a2}
inline ModMatrix alice_init(const KexParams& params, const KexSecret& alice) {
  return mat_pow(params.m1(), alice.e1) * mat_pow(params.m2(), alice.e2);
}

struct BobResponse {
  ModMatrix c2;
  ModMatrix key;
};

/// C2 = M1^{b1} C1 M2^{b2}, K = M1^{b1} M2^{b2}
inline BobResponse bob_respond(const KexParams& params, const ModMatrix& c1, const KexSecret& bob) {
  const ModMatrix left = mat_pow(params.m1(), bob.e1);
  const ModMatrix right = mat_pow(params.m2(), bob.e2);
  return {left * c1 * right, left * right};
}

/// K = M1^{-a1} C2 M2^{-a2}
inline ModMatrix alice_finalize(const KexParams& params, const KexSecret& alice, const ModMatrix& c2) {
  return mat_pow(params.m1(), -alice.e1) * c2 * mat_pow(params.m2(), -alice.e2);
}

/// An honest run: the public transcript plus both parties' keys, which only
/// test harnesses get to see.
struct KexRun {
  KexTranscript transcript;
  ModMatrix alice_key;
  ModMatrix bob_key;
};

inline KexRun run_exchange(const KexParams& params, const KexSecret& alice, const KexSecret& bob,
                           std::optional<std::uint64_t> seed = std::nullopt) {
  ModMatrix c1 = alice_init(params, alice);
  BobResponse resp = bob_respond(params, c1, bob);
  ModMatrix ka = alice_finalize(params, alice, resp.c2);
  return {KexTranscript{params, std::move(c1), resp.c2, seed}, std::move(ka), std::move(resp.key)};
}

}  // namespace matbreak
