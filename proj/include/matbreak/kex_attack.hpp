#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matbreak/kex_protocol.hpp"
#include "matbreak/linear_solve.hpp"

namespace matbreak {

class NotRankOne : public Error {
 public:
  NotRankOne() : Error("matrix does not have rank one") {}
};

class ZeroMatrix : public Error {
 public:
  ZeroMatrix() : Error("matrix is zero") {}
};

/// Per-stage failure counts of a key-recovery run that gave up.
struct RetryDiagnostics {
  std::size_t nullspace_dim = 0;
  int not_rank_one = 0;
  int singular_p = 0;
  int singular_q = 0;
  int product_mismatch = 0;
};

class RetriesExhausted : public Error {
 public:
  explicit RetriesExhausted(RetryDiagnostics d)
      : Error("retry budget exhausted (nullspace_dim=" + std::to_string(d.nullspace_dim) +
              ", not_rank_one=" + std::to_string(d.not_rank_one) +
              ", singular_p=" + std::to_string(d.singular_p) +
              ", singular_q=" + std::to_string(d.singular_q) +
              ", product_mismatch=" + std::to_string(d.product_mismatch) + ")"),
        diagnostics(d) {}
  RetryDiagnostics diagnostics;
};

using Millis = std::chrono::duration<double, std::milli>;

struct AttackReport {
  explicit AttackReport(ModMatrix k, int attempts_ = 1) : recovered_k(std::move(k)), attempts(attempts_) {}

  ModMatrix recovered_k;
  int attempts = 1;
  Millis elapsed{0};
  /// Set only when the caller supplied the true key.
  std::optional<bool> verified;
  Millis build_time{0};
  Millis solve_time{0};
};

/// The relinearized form of C1 = sum_{i,j} x_i y_j M1^i M2^j: one unknown
/// u_{i,j} = x_i y_j per column, column index i*n + j holding the row-major
/// flattening of M1^i M2^j, and one equation per entry of C1.
struct RelinSystem {
  std::size_t dim;
  std::vector<ModMatrix> m1_powers;  // M1^0 .. M1^{n-1}
  std::vector<ModMatrix> m2_powers;
  LinearSystem linear;

  /// M1^i M2^j, read back out of the coefficient columns.
  ModMatrix basis(std::size_t i, std::size_t j) const {
    const std::size_t n = dim, col = i * n + j;
    std::vector<u64> flat(n * n);
    for (std::size_t r = 0; r < n * n; ++r) flat[r] = linear.at(r, col);
    return ModMatrix::from_flat(n, linear.modulus, flat);
  }
};

/// Powers 0..count-1 of m.
inline std::vector<ModMatrix> power_table(const ModMatrix& m, std::size_t count) {
  std::vector<ModMatrix> out;
  out.reserve(count);
  out.push_back(ModMatrix::identity(m.dim(), m.modulus()));
  for (std::size_t k = 1; k < count; ++k) out.push_back(out.back() * m);
  return out;
}

inline RelinSystem build_relin_system(const KexParams& params, const ModMatrix& c1) {
  if (c1.dim() != params.dim()) throw DimensionMismatch();
  if (!(c1.modulus() == params.modulus())) throw ModulusMismatch();
  const std::size_t n = params.dim();
  const std::size_t unknowns = n * n;

  RelinSystem sys{n, power_table(params.m1(), n), power_table(params.m2(), n),
                  LinearSystem{params.modulus(), unknowns, unknowns,
                               std::vector<u64>(unknowns * unknowns), {}}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ModMatrix prod = sys.m1_powers[i] * sys.m2_powers[j];
      const std::size_t col = i * n + j;
      const auto flat = prod.flat();
      for (std::size_t r = 0; r < unknowns; ++r) sys.linear.coeff[r * unknowns + col] = flat[r];
    }
  }
  sys.linear.rhs.assign(c1.flat().begin(), c1.flat().end());
  return sys;
}

/// A solved relinearized system: particular solution and kernel basis.
struct RelinSolution {
  std::size_t dim;
  LinearSolveResult result;
};

inline RelinSolution solve_relin_system(const RelinSystem& sys) {
  return {sys.dim, solve_linear(sys.linear)};
}

/// particular + random combination of the kernel basis, arranged as the
/// n x n matrix (u_{i,j}). A trivial kernel gives the unique solution.
inline ModMatrix sample_solution(const RelinSolution& sol, Rng& rng) {
  const Modulus& md = sol.result.modulus;
  std::vector<u64> u = sol.result.particular;
  for (const auto& v : sol.result.nullspace) {
    const u64 t = rng.below(md.value());
    if (t == 0) continue;
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = md.add(u[k], md.mul(t, v[k]));
  }
  return ModMatrix::from_flat(sol.dim, md, u);
}

/// u = x y^T with x, y the coefficient vectors of p and q.
struct RankOneFactor {
  std::vector<ModInt> x;
  std::vector<ModInt> y;

  /// sum_i x_i T^i
  static ModMatrix evaluate(const std::vector<ModInt>& coeffs, const std::vector<ModMatrix>& powers) {
    ModMatrix acc(powers.front().dim(), powers.front().modulus());
    for (std::size_t i = 0; i < coeffs.size(); ++i) acc = acc + powers[i].scaled(coeffs[i].value());
    return acc;
  }
};

namespace detail {

enum class RankOneFailure { kZero, kNotRankOne };

/// Pivot at the first nonzero u_{r,c} (row-major scan); y = row r and
/// x_i = u_{i,c} / u_{r,c}, so x_r = 1. Every product x_i y_j is checked.
inline std::optional<RankOneFactor> try_rank_one(const ModMatrix& u, RankOneFailure* why = nullptr) {
  const Modulus& md = u.modulus();
  const std::size_t n = u.dim();
  std::optional<std::pair<std::size_t, std::size_t>> pivot;
  for (std::size_t i = 0; i < n && !pivot; ++i)
    for (std::size_t j = 0; j < n && !pivot; ++j)
      if (u(i, j) != 0) pivot = {i, j};
  if (!pivot) {
    if (why) *why = RankOneFailure::kZero;
    return std::nullopt;
  }
  const auto [r, c] = *pivot;
  const u64 inv = md.inv(u(r, c));
  RankOneFactor f;
  for (std::size_t i = 0; i < n; ++i) f.x.emplace_back(md.mul(u(i, c), inv), md);
  for (std::size_t j = 0; j < n; ++j) f.y.emplace_back(u(r, j), md);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (md.mul(f.x[i].value(), f.y[j].value()) != u(i, j)) {
        if (why) *why = RankOneFailure::kNotRankOne;
        return std::nullopt;
      }
    }
  }
  return f;
}

}  // namespace detail

/// Splits u into x y^T; the pair is unique up to (lambda x, lambda^{-1} y).
inline RankOneFactor rank_one_factor(const ModMatrix& u) {
  detail::RankOneFailure why{};
  auto f = detail::try_rank_one(u, &why);
  if (f) return *f;
  if (why == detail::RankOneFailure::kZero) throw ZeroMatrix();
  throw NotRankOne();
}

inline constexpr int kDefaultRetryBudget = 64;

/// Passive key recovery from the public transcript alone. Each attempt
/// samples a solution u, factors it as x y^T, and accepts only when p(M1)
/// and q(M2) invert and p(M1) q(M2) = C1; then K = p(M1)^{-1} C2 q(M2)^{-1}.
inline AttackReport recover_key(const KexTranscript& transcript, Rng& rng,
                                int retry_budget = kDefaultRetryBudget,
                                const std::optional<ModMatrix>& true_key = std::nullopt) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const RelinSystem sys = build_relin_system(transcript.params, transcript.c1);
  const auto t1 = clock::now();
  const RelinSolution sol = solve_relin_system(sys);
  const auto t2 = clock::now();

  RetryDiagnostics diag;
  diag.nullspace_dim = sol.result.nullspace.size();
  for (int attempt = 1; attempt <= retry_budget; ++attempt) {
    const ModMatrix u = sample_solution(sol, rng);
    const auto factor = detail::try_rank_one(u);
    if (!factor) {
      ++diag.not_rank_one;
      continue;
    }
    const ModMatrix p = RankOneFactor::evaluate(factor->x, sys.m1_powers);
    const ModMatrix q = RankOneFactor::evaluate(factor->y, sys.m2_powers);
    std::optional<ModMatrix> p_inv, q_inv;
    try {
      p_inv = mat_inverse(p);
    } catch (const NotInvertible&) {
      ++diag.singular_p;
      continue;
    }
    try {
      q_inv = mat_inverse(q);
    } catch (const NotInvertible&) {
      ++diag.singular_q;
      continue;
    }
    if (!(p * q == transcript.c1)) {
      ++diag.product_mismatch;
      continue;
    }
    AttackReport report{*p_inv * transcript.c2 * *q_inv, attempt};
    report.build_time = t1 - t0;
    report.solve_time = t2 - t1;
    report.elapsed = clock::now() - t0;
    if (true_key) report.verified = (report.recovered_k == *true_key);
    return report;
  }
  throw RetriesExhausted(diag);
}

}  // namespace matbreak
