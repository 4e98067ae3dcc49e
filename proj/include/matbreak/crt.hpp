#pragma once

#include <numeric>

#include "matbreak/matrix.hpp"

namespace matbreak {

/// The unique x mod p*q with x = a mod p and x = b mod q.
inline u64 crt_pair(u64 a, u64 p, u64 b, u64 q) {
  // x = a + p * ((b - a) * p^{-1} mod q)
  const u64 pinv = inverse_mod(p % q, q);
  const u64 t = mul_mod(sub_mod(b % q, a % q, q), pinv, q);
  return a + p * t;  // < p + p(q-1) = pq < 2^63
}

/// Entrywise CRT: the matrix mod p*q reducing to mp and mq.
inline ModMatrix crt_recombine(const ModMatrix& mp, const ModMatrix& mq) {
  if (mp.dim() != mq.dim()) throw DimensionMismatch();
  const u64 p = mp.modulus().value();
  const u64 q = mq.modulus().value();
  if (std::gcd(p, q) != 1) throw ModuliNotCoprime();
  if (static_cast<u128>(p) * q >= kMaxModulus) throw InvalidModulus("p*q must stay below 2^63");
  const Modulus n(p * q);
  ModMatrix out(mp.dim(), n);
  for (std::size_t i = 0; i < mp.dim(); ++i)
    for (std::size_t j = 0; j < mp.dim(); ++j) out.set(i, j, crt_pair(mp(i, j), p, mq(i, j), q));
  return out;
}

}  // namespace matbreak
