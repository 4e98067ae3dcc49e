#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "matbreak/polynomial.hpp"

namespace matbreak {

namespace detail {

/// M^{-1} = -c0^{-1} (M^{n-1} + c_{n-1} M^{n-2} + ... + c1 I), valid over
/// any commutative ring once det(M) is a unit.
inline ModMatrix inverse_by_charpoly(const ModMatrix& m) {
  const Modulus& md = m.modulus();
  const Polynomial f = charpoly(m);
  const auto& c = f.coeffs();
  std::vector<u64> tail(c.begin() + 1, c.end());
  ModMatrix h = Polynomial(std::move(tail), md)(m);
  return h.scaled(md.neg(md.inv(c[0])));
}

}  // namespace detail

/// Gauss-Jordan inverse. Over a prime modulus the pivot is the first
/// nonzero entry at or below the diagonal. Over a composite modulus it is
/// the first unit; a column with no unit falls back to the determinant,
/// reporting gcd(det, m) when that is a proper factor.
inline ModMatrix mat_inverse(const ModMatrix& m) {
  const Modulus& md = m.modulus();
  const std::size_t n = m.dim();
  const u64 mv = md.value();
  std::vector<u64> a(m.flat().begin(), m.flat().end());
  const ModMatrix id = ModMatrix::identity(n, md);
  std::vector<u64> inv(id.flat().begin(), id.flat().end());
  std::optional<u64> seen_factor;

  auto row_op = [&](std::vector<u64>& v, std::size_t dst, std::size_t src, u64 f) {
    for (std::size_t j = 0; j < n; ++j) v[dst * n + j] = md.sub(v[dst * n + j], md.mul(f, v[src * n + j]));
  };

  for (std::size_t col = 0; col < n; ++col) {
    std::optional<std::size_t> pivot;
    for (std::size_t r = col; r < n; ++r) {
      const u64 v = a[r * n + col];
      if (v == 0) continue;
      if (md.is_prime()) {
        pivot = r;
        break;
      }
      const u64 g = std::gcd(v, mv);
      if (g == 1) {
        pivot = r;
        break;
      }
      if (!seen_factor) seen_factor = g;
    }
    if (!pivot) {
      if (md.is_prime()) throw NotInvertible();
      const u64 g = std::gcd(determinant(m), mv);
      if (g == 1) return detail::inverse_by_charpoly(m);
      if (g != mv) throw NotInvertible(g);
      throw NotInvertible(seen_factor);
    }
    if (*pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[*pivot * n + j], a[col * n + j]);
        std::swap(inv[*pivot * n + j], inv[col * n + j]);
      }
    }
    const u64 s = md.inv(a[col * n + col]);
    for (std::size_t j = 0; j < n; ++j) {
      a[col * n + j] = md.mul(a[col * n + j], s);
      inv[col * n + j] = md.mul(inv[col * n + j], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const u64 f = a[r * n + col];
      if (f == 0) continue;
      row_op(a, r, col, f);
      row_op(inv, r, col, f);
    }
  }
  return ModMatrix::from_flat(n, md, inv);
}

/// m^e for any signed e; negative exponents invert first.
inline ModMatrix mat_pow(const ModMatrix& m, i64 e) {
  if (e >= 0) return m.pow(static_cast<u64>(e));
  const u64 mag = static_cast<u64>(-(e + 1)) + 1;
  return mat_inverse(m).pow(mag);
}

inline bool is_invertible(const ModMatrix& m) {
  try {
    (void)mat_inverse(m);
    return true;
  } catch (const NotInvertible&) {
    return false;
  }
}

}  // namespace matbreak
