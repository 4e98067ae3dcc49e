#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "matbreak/modular.hpp"

namespace matbreak {

/// coeff (rows x cols, row-major) * x = rhs over a prime field.
struct LinearSystem {
  Modulus modulus;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<u64> coeff;
  std::vector<u64> rhs;

  u64 at(std::size_t r, std::size_t c) const { return coeff[r * cols + c]; }
};

struct LinearSolveResult {
  Modulus modulus;
  /// One solution, free variables set to zero.
  std::vector<u64> particular;
  /// Basis of the kernel of coeff, one vector per free column.
  std::vector<std::vector<u64>> nullspace;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;

  std::vector<ModInt> particular_ints() const {
    std::vector<ModInt> out;
    for (u64 v : particular) out.emplace_back(v, modulus);
    return out;
  }
};

/// coeff * x, reduced.
inline std::vector<u64> evaluate(const LinearSystem& sys, const std::vector<u64>& x) {
  const Modulus& md = sys.modulus;
  std::vector<u64> out(sys.rows, 0);
  for (std::size_t r = 0; r < sys.rows; ++r) {
    u64 acc = 0;
    for (std::size_t c = 0; c < sys.cols; ++c) acc = md.add(acc, md.mul(sys.at(r, c), x[c]));
    out[r] = acc;
  }
  return out;
}

/// True when coeff * particular = rhs and coeff * v = 0 for every kernel vector.
inline bool verify_solution(const LinearSystem& sys, const LinearSolveResult& res) {
  if (evaluate(sys, res.particular) != sys.rhs) return false;
  const std::vector<u64> zero(sys.rows, 0);
  for (const auto& v : res.nullspace)
    if (evaluate(sys, v) != zero) return false;
  return true;
}

/// Reduced row echelon elimination. Pivot = first nonzero entry scanning
/// down the column. Throws NotAField on composite moduli and Inconsistent
/// when the augmented rank exceeds the coefficient rank.
inline LinearSolveResult solve_linear(const LinearSystem& sys) {
  sys.modulus.require_field();
  if (sys.coeff.size() != sys.rows * sys.cols || sys.rhs.size() != sys.rows)
    throw DimensionMismatch("linear system shape does not match its data");

  const Modulus& md = sys.modulus;
  const std::size_t width = sys.cols + 1;
  std::vector<u64> a(sys.rows * width);
  for (std::size_t r = 0; r < sys.rows; ++r) {
    for (std::size_t c = 0; c < sys.cols; ++c) a[r * width + c] = sys.at(r, c) % md.value();
    a[r * width + sys.cols] = sys.rhs[r] % md.value();
  }

  LinearSolveResult res{md, {}, {}, 0, {}};
  std::size_t row = 0;
  for (std::size_t col = 0; col < sys.cols && row < sys.rows; ++col) {
    std::size_t pivot = row;
    while (pivot < sys.rows && a[pivot * width + col] == 0) ++pivot;
    if (pivot == sys.rows) continue;
    if (pivot != row)
      std::swap_ranges(a.begin() + pivot * width, a.begin() + (pivot + 1) * width, a.begin() + row * width);

    u64* prow = &a[row * width];
    const u64 s = md.inv(prow[col]);
    for (std::size_t j = col; j < width; ++j) prow[j] = md.mul(prow[j], s);

    for (std::size_t r = 0; r < sys.rows; ++r) {
      if (r == row) continue;
      u64* trow = &a[r * width];
      const u64 f = trow[col];
      if (f == 0) continue;
      for (std::size_t j = col; j < width; ++j) {
        if (prow[j] != 0) trow[j] = md.sub(trow[j], md.mul(f, prow[j]));
      }
    }
    res.pivot_columns.push_back(col);
    ++row;
  }
  res.rank = row;

  for (std::size_t r = res.rank; r < sys.rows; ++r)
    if (a[r * width + sys.cols] != 0) throw Inconsistent();

  res.particular.assign(sys.cols, 0);
  for (std::size_t k = 0; k < res.rank; ++k) res.particular[res.pivot_columns[k]] = a[k * width + sys.cols];

  std::vector<bool> is_pivot(sys.cols, false);
  for (std::size_t c : res.pivot_columns) is_pivot[c] = true;
  for (std::size_t f = 0; f < sys.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<u64> v(sys.cols, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < res.rank; ++k) v[res.pivot_columns[k]] = md.neg(a[k * width + f]);
    res.nullspace.push_back(std::move(v));
  }

#ifdef MATBREAK_CHECKED
  if (!verify_solution(sys, res)) throw Error("solve_linear produced a non-solution");
#endif
  return res;
}

}  // namespace matbreak
