#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matbreak/inverse.hpp"
#include "matbreak/polynomial.hpp"
#include "matbreak/random.hpp"

namespace matbreak {

/// (A, B, G) over Z_n with B = C A C and G a polynomial in C.
struct PatentPublicKey {
  ModMatrix a;
  ModMatrix b;
  ModMatrix g;

  const Modulus& modulus() const { return a.modulus(); }
  std::size_t dim() const { return a.dim(); }
  friend bool operator==(const PatentPublicKey&, const PatentPublicKey&) = default;
};

struct PatentPrivateKey {
  ModMatrix c;
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  friend bool operator==(const PatentPrivateKey&, const PatentPrivateKey&) = default;
};

struct PatentCiphertext {
  ModMatrix km;  // K * M
  ModMatrix e;   // D * A * D
  friend bool operator==(const PatentCiphertext&, const PatentCiphertext&) = default;
};

struct PatentKeyPair {
  PatentPublicKey pub;
  PatentPrivateKey priv;
};

/// How the encryptor's D and the key's G are drawn from the polynomial ring.
enum class PolyDegree {
  kFull,      // degree <= k-1
  kLinear,    // alpha*1 + beta*X
};

/// Checks p != q, both prime, and that p*q fits the modulus range.
inline Modulus patent_modulus(std::uint64_t p, std::uint64_t q) {
  if (p == q) throw BadFactors("p and q must be distinct");
  if (!is_prime(p) || !is_prime(q)) throw BadFactors("p and q must both be prime");
  if (static_cast<u128>(p) * q >= kMaxModulus) throw BadFactors("p*q must stay below 2^63");
  return Modulus(p * q);
}

inline std::vector<u64> random_poly_coeffs(std::size_t k, PolyDegree deg, Modulus mod, Rng& rng) {
  const std::size_t terms = deg == PolyDegree::kLinear ? 2 : k;
  std::vector<u64> c(terms);
  for (auto& v : c) v = rng.below(mod.value());
  return c;
}

inline PatentKeyPair patent_keygen(std::uint64_t p, std::uint64_t q, std::size_t k, Rng& rng,
                                   PolyDegree deg = PolyDegree::kFull) {
  const Modulus n = patent_modulus(p, q);
  if (k < 2) throw DegenerateDim();
  ModMatrix a = random_invertible(k, n, rng);
  ModMatrix c = random_invertible(k, n, rng);
  ModMatrix b = c * a * c;
  ModMatrix g = Polynomial(random_poly_coeffs(k, deg, n, rng), n)(c);
  return {PatentPublicKey{std::move(a), std::move(b), std::move(g)}, PatentPrivateKey{std::move(c), p, q}};
}

/// Ciphertext plus the session key K = D B D. K is ground truth for test
/// harnesses and never goes into a ciphertext file.
struct PatentEncryption {
  PatentCiphertext ct;
  ModMatrix key;
};

/// Encrypt with a caller-chosen D, which must be a polynomial in G.
inline PatentEncryption patent_encrypt_with(const PatentPublicKey& pk, const ModMatrix& m, const ModMatrix& d) {
  ModMatrix key = d * pk.b * d;
  ModMatrix e = d * pk.a * d;
  ModMatrix km = key * m;
  return {PatentCiphertext{std::move(km), std::move(e)}, std::move(key)};
}

/// D = d(G) for random d, resampled until D inverts.
inline PatentEncryption patent_encrypt(const PatentPublicKey& pk, const ModMatrix& m, Rng& rng,
                                       PolyDegree deg = PolyDegree::kFull) {
  if (m.dim() != pk.dim()) throw DimensionMismatch();
  if (!(m.modulus() == pk.modulus())) throw ModulusMismatch();
  for (;;) {
    ModMatrix d = Polynomial(random_poly_coeffs(pk.dim(), deg, pk.modulus(), rng), pk.modulus())(pk.g);
    if (is_invertible(d)) return patent_encrypt_with(pk, m, d);
  }
}

/// K = C E C, M = K^{-1} (K M).
inline ModMatrix patent_decrypt(const PatentPrivateKey& sk, const PatentPublicKey& pk, const PatentCiphertext& ct) {
  (void)pk;
  const ModMatrix key = sk.c * ct.e * sk.c;
  return mat_inverse(key) * ct.km;
}

}  // namespace matbreak
