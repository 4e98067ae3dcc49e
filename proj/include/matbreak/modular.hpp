#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "matbreak/error.hpp"

namespace matbreak {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMaxModulus = u64{1} << 63;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
  // a, b < m < 2^63, so a + b cannot wrap
  u64 s = a + b;
  return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 pow_mod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin. The first twelve prime bases are exact for
/// every input below 3.3 * 10^24, which covers the whole u64 range.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Inverse of a modulo m, or NonUnit carrying gcd(a, m).
inline u64 inverse_mod(u64 a, u64 m) {
  a %= m;
  // extended Euclid on signed 128-bit to avoid overflow for m near 2^63
  __int128 old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    __int128 quot = old_r / r;
    __int128 t = old_r - quot * r;
    old_r = r;
    r = t;
    t = old_s - quot * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw NonUnit(static_cast<u64>(old_r));
  if (old_s < 0) old_s += m;
  return static_cast<u64>(old_s) % m;
}

/// Reduce a signed integer into [0, m).
inline u64 reduce_signed(i64 v, u64 m) {
  if (v >= 0) return static_cast<u64>(v) % m;
  u64 mag = static_cast<u64>(-(v + 1)) + 1;  // |v| without overflow at INT64_MIN
  u64 r = mag % m;
  return r == 0 ? 0 : m - r;
}

/// A modulus 2 <= value < 2^63 with its primality decided once.
class Modulus {
 public:
  explicit Modulus(u64 value) : value_(value) {
    if (value < 2 || value >= kMaxModulus) {
      throw InvalidModulus("modulus must satisfy 2 <= m < 2^63, got " + std::to_string(value));
    }
    prime_ = matbreak::is_prime(value);
  }

  u64 value() const { return value_; }
  bool is_prime() const { return prime_; }
  /// Throws NotAField unless the modulus is prime.
  void require_field() const {
    if (!prime_) throw NotAField();
  }

  u64 reduce(i64 v) const { return reduce_signed(v, value_); }
  u64 add(u64 a, u64 b) const { return add_mod(a, b, value_); }
  u64 sub(u64 a, u64 b) const { return sub_mod(a, b, value_); }
  u64 mul(u64 a, u64 b) const { return mul_mod(a, b, value_); }
  u64 neg(u64 a) const { return a == 0 ? 0 : value_ - a; }
  u64 inv(u64 a) const { return inverse_mod(a, value_); }
  u64 pow(u64 a, u64 e) const { return pow_mod(a, e, value_); }

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.value_ == b.value_; }

 private:
  u64 value_;
  bool prime_;
};

/// A residue tied to its modulus.
class ModInt {
 public:
  ModInt(u64 residue, Modulus m) : residue_(residue % m.value()), mod_(m) {}
  static ModInt from_signed(i64 v, Modulus m) { return ModInt(m.reduce(v), m); }

  u64 value() const { return residue_; }
  const Modulus& modulus() const { return mod_; }
  bool is_zero() const { return residue_ == 0; }

  ModInt operator+(const ModInt& o) const { return {mod_.add(residue_, check(o)), mod_}; }
  ModInt operator-(const ModInt& o) const { return {mod_.sub(residue_, check(o)), mod_}; }
  ModInt operator*(const ModInt& o) const { return {mod_.mul(residue_, check(o)), mod_}; }
  ModInt operator-() const { return {mod_.neg(residue_), mod_}; }
  ModInt& operator+=(const ModInt& o) { return *this = *this + o; }
  ModInt& operator-=(const ModInt& o) { return *this = *this - o; }
  ModInt& operator*=(const ModInt& o) { return *this = *this * o; }

  ModInt pow(u64 e) const { return {mod_.pow(residue_, e), mod_}; }

  friend bool operator==(const ModInt& a, const ModInt& b) {
    return a.mod_ == b.mod_ && a.residue_ == b.residue_;
  }
  friend std::ostream& operator<<(std::ostream& os, const ModInt& a) { return os << a.residue_; }

 private:
  u64 check(const ModInt& o) const {
    if (!(o.mod_ == mod_)) throw ModulusMismatch();
    return o.residue_;
  }

  u64 residue_;
  Modulus mod_;
};

/// b with a*b = 1, or NonUnit{gcd}.
inline ModInt mod_inverse(const ModInt& a) {
  return ModInt(a.modulus().inv(a.value()), a.modulus());
}

}  // namespace matbreak
