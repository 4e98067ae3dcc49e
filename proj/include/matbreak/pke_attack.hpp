#pragma once

#include <chrono>
#include <optional>
#include <utility>
#include <vector>

#include "matbreak/crt.hpp"
#include "matbreak/kex_attack.hpp"
#include "matbreak/pke_patent.hpp"

namespace matbreak {

/// E = (sum_i x_i G^i) A (sum_j x_j G^j) over F_p, relinearized with
/// symmetric unknowns u_{i,j} = x_i x_j for i <= j. Unknown t corresponds to
/// pairs[t]; its coefficient matrix is G^i A G^j + G^j A G^i (i < j) or
/// G^i A G^i (i = j). The B-side basis uses the same pairs with B for A.
struct QuadraticSystem {
  Modulus prime;
  std::size_t dim;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<ModMatrix> sym_basis_a;
  std::vector<ModMatrix> sym_basis_b;
  LinearSystem linear;

  std::size_t unknowns() const { return pairs.size(); }
  std::size_t equations() const { return linear.rows; }
};

struct PartialKey {
  Modulus prime;
  ModMatrix kp;
};

namespace detail {

inline std::vector<ModMatrix> symmetric_basis(const std::vector<ModMatrix>& gpow, const ModMatrix& middle,
                                              const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<ModMatrix> out;
  out.reserve(pairs.size());
  for (auto [i, j] : pairs) {
    ModMatrix s = gpow[i] * middle * gpow[j];
    if (i != j) s = s + gpow[j] * middle * gpow[i];
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

/// Coefficient matrices for A (and B when given) plus the k^2 x k(k+1)/2
/// linear system whose right-hand side is E.
inline QuadraticSystem build_quadratic_system(const ModMatrix& gp, const ModMatrix& ap, const ModMatrix& ep,
                                              const std::optional<ModMatrix>& bp = std::nullopt) {
  const Modulus& md = gp.modulus();
  md.require_field();
  if (ap.dim() != gp.dim() || ep.dim() != gp.dim()) throw DimensionMismatch();
  if (!(ap.modulus() == md) || !(ep.modulus() == md)) throw ModulusMismatch();
  const std::size_t k = gp.dim();

  QuadraticSystem sys{md, k, {}, {}, {}, LinearSystem{md, k * k, 0, {}, {}}};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) sys.pairs.emplace_back(i, j);

  const auto gpow = power_table(gp, k);
  sys.sym_basis_a = detail::symmetric_basis(gpow, ap, sys.pairs);
  if (bp) sys.sym_basis_b = detail::symmetric_basis(gpow, *bp, sys.pairs);

  const std::size_t cols = sys.pairs.size();
  sys.linear.cols = cols;
  sys.linear.coeff.assign(k * k * cols, 0);
  for (std::size_t t = 0; t < cols; ++t) {
    const auto flat = sys.sym_basis_a[t].flat();
    for (std::size_t r = 0; r < k * k; ++r) sys.linear.coeff[r * cols + t] = flat[r];
  }
  sys.linear.rhs.assign(ep.flat().begin(), ep.flat().end());
  return sys;
}

/// sum_t u_t * basis[t]
inline ModMatrix combine(const std::vector<ModMatrix>& basis, const std::vector<u64>& u) {
  ModMatrix acc(basis.front().dim(), basis.front().modulus());
  for (std::size_t t = 0; t < basis.size(); ++t)
    if (u[t] != 0) acc = acc + basis[t].scaled(u[t]);
  return acc;
}

/// K_p = sum u_{i,j} S^B_{i,j} for the particular solution u. Any solution
/// works: G commutes with C, so S^B_{i,j} = C S^A_{i,j} C and the sum is
/// C E_p C = K_p. No rank-one extraction is needed.
inline PartialKey recover_partial_key(const PatentPublicKey& pk_mod_prime, const ModMatrix& ep) {
  const QuadraticSystem sys = build_quadratic_system(pk_mod_prime.g, pk_mod_prime.a, ep, pk_mod_prime.b);
  const LinearSolveResult sol = solve_linear(sys.linear);
  return {sys.prime, combine(sys.sym_basis_b, sol.particular)};
}

inline PatentPublicKey reduce_public_key(const PatentPublicKey& pk, Modulus prime) {
  return {pk.a.reduced(prime), pk.b.reduced(prime), pk.g.reduced(prime)};
}

struct PatentAttackResult {
  ModMatrix key;
  ModMatrix message;
  AttackReport report;
};

/// Recovers K mod p and mod q independently, glues them with the CRT, and
/// decrypts M = K^{-1} (K M). Needs only public data and the factors.
inline PatentAttackResult recover_key_and_message(const PatentPublicKey& pk, const PatentCiphertext& ct,
                                                  std::uint64_t p, std::uint64_t q,
                                                  const std::optional<ModMatrix>& true_key = std::nullopt) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const Modulus n = patent_modulus(p, q);
  if (!(n == pk.modulus())) throw BadFactors("p*q does not equal the public modulus");
  const Modulus mp(p), mq(q);

  const PartialKey kp = recover_partial_key(reduce_public_key(pk, mp), ct.e.reduced(mp));
  const PartialKey kq = recover_partial_key(reduce_public_key(pk, mq), ct.e.reduced(mq));
  const auto t1 = clock::now();
  ModMatrix key = crt_recombine(kp.kp, kq.kp);
  ModMatrix message = mat_inverse(key) * ct.km;

  AttackReport report{key, 1};
  report.solve_time = t1 - t0;
  report.elapsed = clock::now() - t0;
  if (true_key) report.verified = (key == *true_key);
  return {std::move(key), std::move(message), std::move(report)};
}

}  // namespace matbreak
