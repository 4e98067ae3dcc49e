#pragma once

#include <cstddef>
#include <vector>

#include "matbreak/matrix.hpp"

namespace matbreak {

/// Univariate polynomial over Z_m; coeffs[i] multiplies X^i.
class Polynomial {
 public:
  explicit Polynomial(Modulus mod) : mod_(mod) {}
  Polynomial(std::vector<u64> coeffs, Modulus mod) : mod_(mod), coeffs_(std::move(coeffs)) {
    for (u64& c : coeffs_) c %= mod_.value();
  }

  const Modulus& modulus() const { return mod_; }
  const std::vector<u64>& coeffs() const { return coeffs_; }
  std::vector<ModInt> coefficients() const {
    std::vector<ModInt> out;
    out.reserve(coeffs_.size());
    for (u64 c : coeffs_) out.emplace_back(c, mod_);
    return out;
  }

  /// Degree of the trimmed form; -1 for the zero polynomial.
  int degree() const {
    for (std::size_t i = coeffs_.size(); i > 0; --i)
      if (coeffs_[i - 1] != 0) return static_cast<int>(i) - 1;
    return -1;
  }

  Polynomial trimmed() const {
    Polynomial r = *this;
    while (!r.coeffs_.empty() && r.coeffs_.back() == 0) r.coeffs_.pop_back();
    return r;
  }

  u64 operator()(u64 x) const {
    u64 acc = 0;
    for (std::size_t i = coeffs_.size(); i > 0; --i) acc = mod_.add(mod_.mul(acc, x), coeffs_[i - 1]);
    return acc;
  }

  /// p(T) by Horner's rule. The matrix modulus must equal ours.
  ModMatrix operator()(const ModMatrix& t) const {
    if (!(t.modulus() == mod_)) throw ModulusMismatch();
    ModMatrix acc(t.dim(), mod_);
    for (std::size_t i = coeffs_.size(); i > 0; --i) {
      acc = acc * t + ModMatrix::scalar(t.dim(), mod_, coeffs_[i - 1]);
    }
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!(a.mod_ == b.mod_)) return false;
    return a.trimmed().coeffs_ == b.trimmed().coeffs_;
  }

 private:
  Modulus mod_;
  std::vector<u64> coeffs_;
};

/// Characteristic polynomial det(X*I - M) by Berkowitz's division-free
/// recurrence, so composite moduli are fine. Monic, degree dim.
///
/// The leading (r+1)x(r+1) block is [[A, s], [t, a]] with A the r x r
/// leading block. Its characteristic polynomial (coefficients from X^{r+1}
/// down) is T * c_r, where c_r belongs to A and T is the lower triangular
/// Toeplitz matrix whose first column is (1, -a, -t s, -t A s, ..., -t A^{r-1} s).
inline Polynomial charpoly(const ModMatrix& m) {
  const Modulus& md = m.modulus();
  const std::size_t n = m.dim();

  // coefficients, highest power first
  std::vector<u64> c{1, md.neg(m(0, 0))};

  for (std::size_t r = 1; r < n; ++r) {
    std::vector<u64> col(r + 2);
    col[0] = 1;
    col[1] = md.neg(m(r, r));

    // v = A^k s, starting from s = column r above the diagonal
    std::vector<u64> v(r), next(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = m(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      u64 dot = 0;
      for (std::size_t i = 0; i < r; ++i) dot = md.add(dot, md.mul(m(r, i), v[i]));
      col[k + 2] = md.neg(dot);
      if (k + 1 == r) break;
      for (std::size_t i = 0; i < r; ++i) {
        u64 acc = 0;
        for (std::size_t j = 0; j < r; ++j) acc = md.add(acc, md.mul(m(i, j), v[j]));
        next[i] = acc;
      }
      std::swap(v, next);
    }

    std::vector<u64> out(r + 2, 0);
    for (std::size_t i = 0; i < r + 2; ++i) {
      u64 acc = 0;
      for (std::size_t j = 0; j <= i && j < r + 1; ++j) acc = md.add(acc, md.mul(col[i - j], c[j]));
      out[i] = acc;
    }
    c = std::move(out);
  }

  std::vector<u64> low_first(c.rbegin(), c.rend());
  return Polynomial(std::move(low_first), md);
}

/// det(M) = (-1)^n * constant term of the characteristic polynomial.
inline u64 determinant(const ModMatrix& m) {
  u64 c0 = charpoly(m).coeffs()[0];
  return (m.dim() % 2 == 0) ? c0 : m.modulus().neg(c0);
}

}  // namespace matbreak
