#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "matbreak/modular.hpp"

namespace matbreak {

/// Dense square matrix over Z_m, row-major, every entry in [0, m).
class ModMatrix {
 public:
  ModMatrix(std::size_t dim, Modulus mod) : dim_(dim), mod_(mod), data_(dim * dim, 0) {
    if (dim == 0) throw DimensionMismatch("matrix dimension must be positive");
  }

  /// Rows of signed integers, reduced on entry.
  ModMatrix(std::initializer_list<std::initializer_list<i64>> rows, Modulus mod)
      : ModMatrix(rows.size(), mod) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != dim_) throw DimensionMismatch("matrix rows must be square");
      std::size_t j = 0;
      for (i64 v : row) data_[i * dim_ + j++] = mod_.reduce(v);
      ++i;
    }
  }

  /// Row-major residues; values are reduced modulo mod.
  static ModMatrix from_flat(std::size_t dim, Modulus mod, std::span<const u64> flat) {
    if (flat.size() != dim * dim) throw DimensionMismatch("flat data has wrong length");
    ModMatrix r(dim, mod);
    for (std::size_t k = 0; k < flat.size(); ++k) r.data_[k] = flat[k] % mod.value();
    return r;
  }

  static ModMatrix identity(std::size_t dim, Modulus mod) {
    ModMatrix r(dim, mod);
    for (std::size_t i = 0; i < dim; ++i) r.data_[i * dim + i] = 1;
    return r;
  }

  static ModMatrix scalar(std::size_t dim, Modulus mod, u64 s) {
    ModMatrix r(dim, mod);
    for (std::size_t i = 0; i < dim; ++i) r.data_[i * dim + i] = s % mod.value();
    return r;
  }

  std::size_t dim() const { return dim_; }
  const Modulus& modulus() const { return mod_; }
  std::span<const u64> flat() const { return data_; }

  u64 operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  /// Store v mod m at (i, j).
  void set(std::size_t i, std::size_t j, u64 v) { data_[i * dim_ + j] = v % mod_.value(); }

  bool is_zero() const {
    for (u64 v : data_)
      if (v != 0) return false;
    return true;
  }
  bool is_identity() const { return *this == identity(dim_, mod_); }

  ModMatrix operator+(const ModMatrix& o) const {
    check_conformant(o);
    ModMatrix r(dim_, mod_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = mod_.add(data_[k], o.data_[k]);
    return r;
  }

  ModMatrix operator-(const ModMatrix& o) const {
    check_conformant(o);
    ModMatrix r(dim_, mod_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = mod_.sub(data_[k], o.data_[k]);
    return r;
  }

  ModMatrix operator*(const ModMatrix& o) const {
    check_conformant(o);
    const u64 m = mod_.value();
    ModMatrix r(dim_, mod_);
    std::vector<u128> acc(dim_);
    // accumulate in 128 bits and reduce every few terms; each product is < 2^126
    for (std::size_t i = 0; i < dim_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < dim_; ++k) {
        const u64 a = data_[i * dim_ + k];
        if (a == 0) continue;
        const u64* brow = &o.data_[k * dim_];
        for (std::size_t j = 0; j < dim_; ++j) {
          acc[j] += static_cast<u128>(a) * brow[j];
          if ((k & 1) == 1) acc[j] %= m;
        }
      }
      for (std::size_t j = 0; j < dim_; ++j) r.data_[i * dim_ + j] = static_cast<u64>(acc[j] % m);
    }
    return r;
  }

  ModMatrix scaled(u64 s) const {
    ModMatrix r(dim_, mod_);
    s %= mod_.value();
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = mod_.mul(data_[k], s);
    return r;
  }

  ModMatrix transposed() const {
    ModMatrix r(dim_, mod_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) r.data_[j * dim_ + i] = data_[i * dim_ + j];
    return r;
  }

  /// Square-and-multiply for e >= 0; signed exponents live in inverse.hpp.
  ModMatrix pow(u64 e) const {
    ModMatrix result = identity(dim_, mod_);
    ModMatrix base = *this;
    while (e != 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e != 0) base = base * base;
    }
    return result;
  }

  /// Entrywise reduction to a modulus that divides this one.
  ModMatrix reduced(Modulus target) const {
    if (mod_.value() % target.value() != 0) throw NotADivisor();
    ModMatrix r(dim_, target);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] % target.value();
    return r;
  }

  friend bool operator==(const ModMatrix& a, const ModMatrix& b) {
    return a.dim_ == b.dim_ && a.mod_ == b.mod_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ModMatrix& a) {
    os << '[';
    for (std::size_t i = 0; i < a.dim_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < a.dim_; ++j) os << (j ? "," : "") << a(i, j);
      os << ']';
    }
    return os << "] mod " << a.mod_.value();
  }

 private:
  void check_conformant(const ModMatrix& o) const {
    if (o.dim_ != dim_) throw DimensionMismatch();
    if (!(o.mod_ == mod_)) throw ModulusMismatch();
  }

  std::size_t dim_;
  Modulus mod_;
  std::vector<u64> data_;
};

inline ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b) { return a * b; }

inline ModMatrix reduce_mod(const ModMatrix& x, Modulus target) { return x.reduced(target); }

}  // namespace matbreak
