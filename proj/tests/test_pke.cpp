#include <gtest/gtest.h>

#include "matbreak/pke_attack.hpp"
#include "matbreak/worked_examples.hpp"
#include "test_support.hpp"

namespace matbreak {
namespace {

namespace wp = worked::pke;

/// The worked pipeline recomputed from C, A and the generator scalars.
struct WorkedPipeline {
  PatentPublicKey pk;
  PatentPrivateKey sk;
  ModMatrix d;
  PatentEncryption enc;
};

WorkedPipeline worked_pipeline(const ModMatrix& message) {
  const Modulus n(wp::kN);
  const ModMatrix c = wp::c(), a = wp::a();
  const ModMatrix g = Polynomial({wp::kGCoeffs[0], wp::kGCoeffs[1]}, n)(c);
  const ModMatrix d = Polynomial({wp::kDCoeffs[0], wp::kDCoeffs[1]}, n)(g);
  PatentPublicKey pk{a, c * a * c, g};
  return {pk, PatentPrivateKey{c, wp::kP, wp::kQ}, d, patent_encrypt_with(pk, message, d)};
}

std::pair<std::uint64_t, std::uint64_t> distinct_primes(Rng& rng) {
  for (;;) {
    const auto p = testing::random_16bit_prime(rng), q = testing::random_16bit_prime(rng);
    if (p != q) return {p, q};
  }
}

// ----------------------------------------------------------------- scheme

TEST(PatentScheme, WorkedPipelineMatchesPrintedValues) {
  const WorkedPipeline w = worked_pipeline(ModMatrix::identity(2, Modulus(wp::kN)));
  EXPECT_EQ(w.pk.b, wp::printed_b());
  EXPECT_EQ(w.pk.g, wp::printed_g());
  EXPECT_EQ(w.d, wp::printed_d());
  EXPECT_EQ(w.enc.ct.e, wp::printed_e());
  EXPECT_EQ(w.enc.key, wp::printed_key());
  EXPECT_EQ(w.sk.c * w.enc.ct.e * w.sk.c, wp::printed_key());
}

TEST(PatentScheme, PrintedCoefficientsExpressDInTermsOfC) {
  for (auto [prime, coeffs] : {std::pair{wp::kP, wp::kPrintedCoeffs541}, std::pair{wp::kQ, wp::kPrintedCoeffs113}}) {
    const Modulus md(prime);
    const ModMatrix cp = wp::c().reduced(md);
    const ModMatrix dp = ModMatrix::scalar(2, md, coeffs[0]) + cp.scaled(coeffs[1]);
    EXPECT_EQ(dp, wp::printed_d().reduced(md));
    EXPECT_EQ(dp * wp::printed_b().reduced(md) * dp, wp::printed_key().reduced(md));
  }
}

TEST(PatentScheme, KeygenInvariants) {
  Rng rng(40);
  for (int t = 0; t < 30; ++t) {
    const auto [p, q] = distinct_primes(rng);
    const PatentKeyPair kp = patent_keygen(p, q, 2 + rng.below(4), rng);
    EXPECT_EQ(kp.pub.b, kp.priv.c * kp.pub.a * kp.priv.c);
    EXPECT_EQ(kp.pub.g * kp.priv.c, kp.priv.c * kp.pub.g);
    EXPECT_TRUE(is_invertible(kp.pub.a));
    EXPECT_TRUE(is_invertible(kp.priv.c));
    EXPECT_EQ(kp.priv.p * kp.priv.q, kp.pub.modulus().value());
  }
}

TEST(PatentScheme, KeygenRejectsBadFactors) {
  Rng rng(0);
  EXPECT_THROW(patent_keygen(541, 541, 2, rng), BadFactors);
  EXPECT_THROW(patent_keygen(541, 100, 2, rng), BadFactors);
  EXPECT_THROW(patent_keygen(541, 113, 1, rng), DegenerateDim);
}

TEST(PatentScheme, IdentityMessageAndIdentityD) {
  Rng rng(41);
  const PatentKeyPair kp = patent_keygen(541, 113, 3, rng);
  const ModMatrix id = ModMatrix::identity(3, kp.pub.modulus());
  const PatentEncryption enc = patent_encrypt(kp.pub, id, rng);
  EXPECT_EQ(enc.ct.km, enc.key);

  const PatentEncryption forced = patent_encrypt_with(kp.pub, id, id);
  EXPECT_EQ(forced.key, kp.pub.b);
  EXPECT_EQ(forced.ct.e, kp.pub.a);
  const ModMatrix m = random_matrix(3, kp.pub.modulus(), rng);
  const PatentCiphertext hooked{kp.pub.b * m, kp.pub.a};
  EXPECT_EQ(patent_decrypt(kp.priv, kp.pub, hooked), m);
}

TEST(PatentScheme, RoundTripAndCommutation) {
  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    const auto [p, q] = distinct_primes(rng);
    const std::size_t k = 2 + rng.below(4);
    const PolyDegree deg = t % 4 == 0 ? PolyDegree::kLinear : PolyDegree::kFull;
    const PatentKeyPair kp = patent_keygen(p, q, k, rng, deg);
    const ModMatrix m = random_matrix(k, kp.pub.modulus(), rng);
    const PatentEncryption enc = patent_encrypt(kp.pub, m, rng, deg);
    ASSERT_EQ(patent_decrypt(kp.priv, kp.pub, enc.ct), m);
    EXPECT_EQ(kp.priv.c * enc.ct.e * kp.priv.c, enc.key);
  }
}

TEST(PatentScheme, EncryptorPolynomialCommutesWithC) {
  Rng rng(43);
  const PatentKeyPair kp = patent_keygen(541, 113, 4, rng);
  for (int t = 0; t < 20; ++t) {
    std::vector<u64> coeffs = random_poly_coeffs(4, PolyDegree::kFull, kp.pub.modulus(), rng);
    const ModMatrix d = Polynomial(coeffs, kp.pub.modulus())(kp.pub.g);
    EXPECT_EQ(d * kp.priv.c, kp.priv.c * d);
  }
}

TEST(PatentScheme, ReductionsPreserveRelations) {
  Rng rng(44);
  for (int t = 0; t < 30; ++t) {
    const auto [p, q] = distinct_primes(rng);
    const PatentKeyPair kp = patent_keygen(p, q, 3, rng);
    const PatentEncryption enc = patent_encrypt(kp.pub, random_matrix(3, kp.pub.modulus(), rng), rng);
    for (u64 prime : {p, q}) {
      const Modulus md(prime);
      const ModMatrix a = kp.pub.a.reduced(md), b = kp.pub.b.reduced(md), g = kp.pub.g.reduced(md);
      const ModMatrix c = kp.priv.c.reduced(md);
      EXPECT_EQ(b, c * a * c);
      EXPECT_EQ(g * c, c * g);
      EXPECT_EQ(c * enc.ct.e.reduced(md) * c, enc.key.reduced(md));
    }
  }
}

// ----------------------------------------------------------------- attack

TEST(PatentAttack, ReduceWorkedE) {
  const WorkedPipeline w = worked_pipeline(ModMatrix::identity(2, Modulus(wp::kN)));
  EXPECT_EQ(reduce_mod(w.enc.ct.e, Modulus(wp::kP)), wp::printed_e_541());
  EXPECT_EQ(reduce_mod(wp::printed_e(), Modulus(wp::kP)), wp::printed_e_541());
  EXPECT_THROW(reduce_mod(wp::printed_e(), Modulus(7)), NotADivisor);
}

TEST(PatentAttack, QuadraticSystemShape) {
  Rng rng(50);
  const Modulus md(10007);
  for (std::size_t k = 2; k <= 5; ++k) {
    const ModMatrix g = random_matrix(k, md, rng), a = random_matrix(k, md, rng), e = random_matrix(k, md, rng);
    const QuadraticSystem sys = build_quadratic_system(g, a, e);
    EXPECT_EQ(sys.equations(), k * k);
    EXPECT_EQ(sys.unknowns(), k * (k + 1) / 2);
  }
}

TEST(PatentAttack, QuadraticSystemCoefficientStructure) {
  Rng rng(51);
  const Modulus md(10007);
  const ModMatrix g = random_matrix(2, md, rng), a = random_matrix(2, md, rng), e = random_matrix(2, md, rng);
  const QuadraticSystem sys = build_quadratic_system(g, a, e);
  ASSERT_EQ(sys.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(sys.sym_basis_a[0], a);
  EXPECT_EQ(sys.sym_basis_a[1], g * a + a * g);
  EXPECT_EQ(sys.sym_basis_a[2], g * a * g);
}

TEST(PatentAttack, IdentityGCollapses) {
  Rng rng(52);
  const Modulus md(10007);
  const ModMatrix a = random_invertible(3, md, rng);
  const QuadraticSystem sys = build_quadratic_system(ModMatrix::identity(3, md), a, a.scaled(36));
  // every basis matrix is A (i = j) or 2A (i < j): (x0 + x1 + x2)^2 A
  for (std::size_t t = 0; t < sys.pairs.size(); ++t)
    EXPECT_EQ(sys.sym_basis_a[t], sys.pairs[t].first == sys.pairs[t].second ? a : a.scaled(2));
  const LinearSolveResult sol = solve_linear(sys.linear);
  EXPECT_EQ(combine(sys.sym_basis_a, sol.particular), a.scaled(36));
}

TEST(PatentAttack, TrueCoefficientsSolveSystem) {
  Rng rng(53);
  for (int t = 0; t < 50; ++t) {
    const Modulus md(testing::random_16bit_prime(rng));
    const std::size_t k = 2 + rng.below(4);
    const ModMatrix g = random_matrix(k, md, rng), a = random_matrix(k, md, rng);
    std::vector<u64> x(k);
    for (auto& v : x) v = rng.below(md.value());
    const ModMatrix d = Polynomial(x, md)(g);
    const QuadraticSystem sys = build_quadratic_system(g, a, d * a * d);
    std::vector<u64> u;
    for (auto [i, j] : sys.pairs) u.push_back(md.mul(x[i], x[j]));
    EXPECT_EQ(evaluate(sys.linear, u), sys.linear.rhs);
  }
}

TEST(PatentAttack, WorkedPartialKeys) {
  const WorkedPipeline w = worked_pipeline(ModMatrix::identity(2, Modulus(wp::kN)));
  for (u64 prime : {wp::kP, wp::kQ}) {
    const Modulus md(prime);
    const PartialKey kp = recover_partial_key(reduce_public_key(w.pk, md), w.enc.ct.e.reduced(md));
    const ModMatrix cp = w.sk.c.reduced(md);
    EXPECT_EQ(kp.kp, cp * w.enc.ct.e.reduced(md) * cp);
  }
  EXPECT_EQ(recover_partial_key(reduce_public_key(w.pk, Modulus(wp::kP)), w.enc.ct.e.reduced(Modulus(wp::kP))).kp,
            wp::printed_key_541());
  EXPECT_EQ(recover_partial_key(reduce_public_key(w.pk, Modulus(wp::kQ)), w.enc.ct.e.reduced(Modulus(wp::kQ))).kp,
            wp::printed_key_113());
}

TEST(PatentAttack, IdentityDHook) {
  Rng rng(54);
  const PatentKeyPair kp = patent_keygen(541, 113, 3, rng);
  const ModMatrix id = ModMatrix::identity(3, kp.pub.modulus());
  const ModMatrix m = random_matrix(3, kp.pub.modulus(), rng);
  const PatentEncryption enc = patent_encrypt_with(kp.pub, m, id);
  const Modulus p(541);
  const QuadraticSystem sys = build_quadratic_system(kp.pub.g.reduced(p), kp.pub.a.reduced(p), enc.ct.e.reduced(p));
  std::vector<u64> e00(sys.unknowns(), 0);
  e00[0] = 1;
  EXPECT_EQ(evaluate(sys.linear, e00), sys.linear.rhs);
  EXPECT_EQ(recover_partial_key(reduce_public_key(kp.pub, p), enc.ct.e.reduced(p)).kp, kp.pub.b.reduced(p));
  const PatentAttackResult res = recover_key_and_message(kp.pub, enc.ct, 541, 113);
  EXPECT_EQ(res.key, kp.pub.b);
  EXPECT_EQ(res.message, m);
}

TEST(PatentAttack, WorkedCrtTriple) {
  EXPECT_EQ(crt_recombine(wp::printed_key_541(), wp::printed_key_113()), wp::printed_key());
}

TEST(PatentAttack, WorkedEndToEnd) {
  Rng rng(55);
  const ModMatrix m = random_matrix(2, Modulus(wp::kN), rng);
  const WorkedPipeline w = worked_pipeline(m);
  const PatentAttackResult res = recover_key_and_message(w.pk, w.enc.ct, wp::kP, wp::kQ, w.enc.key);
  EXPECT_EQ(res.key, wp::printed_key());
  EXPECT_EQ(res.message, m);
  EXPECT_EQ(res.report.verified, std::optional<bool>(true));
}

TEST(PatentAttack, AnySolutionSuffices) {
  Rng rng(56);
  for (int t = 0; t < 40; ++t) {
    const auto [p, q] = distinct_primes(rng);
    const std::size_t k = 2 + rng.below(4);
    const PatentKeyPair kp = patent_keygen(p, q, k, rng, t % 2 ? PolyDegree::kLinear : PolyDegree::kFull);
    const PatentEncryption enc = patent_encrypt(kp.pub, random_matrix(k, kp.pub.modulus(), rng), rng);
    const Modulus md(p);
    const PatentPublicKey pk = reduce_public_key(kp.pub, md);
    const ModMatrix ep = enc.ct.e.reduced(md), cp = kp.priv.c.reduced(md);
    const QuadraticSystem sys = build_quadratic_system(pk.g, pk.a, ep, pk.b);
    const LinearSolveResult sol = solve_linear(sys.linear);
    for (int s = 0; s < 50; ++s) {
      std::vector<u64> u = sol.particular;
      for (const auto& v : sol.nullspace) {
        const u64 c = rng.below(md.value());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = md.add(u[i], md.mul(c, v[i]));
      }
      ASSERT_EQ(combine(sys.sym_basis_b, u), cp * ep * cp);
    }
  }
}

TEST(PatentAttack, RandomInstancesMatchDecryptor) {
  Rng rng(57);
  for (int t = 0; t < 100; ++t) {
    const auto [p, q] = distinct_primes(rng);
    const std::size_t k = 2 + rng.below(4);
    const PatentKeyPair kp = patent_keygen(p, q, k, rng);
    const ModMatrix m = random_matrix(k, kp.pub.modulus(), rng);
    const PatentEncryption enc = patent_encrypt(kp.pub, m, rng);
    const PatentAttackResult res = recover_key_and_message(kp.pub, enc.ct, p, q, enc.key);
    ASSERT_EQ(res.key, enc.key);
    ASSERT_EQ(res.message, patent_decrypt(kp.priv, kp.pub, enc.ct));
    EXPECT_EQ(res.key.reduced(Modulus(p)), enc.key.reduced(Modulus(p)));
    EXPECT_EQ(res.report.attempts, 1);
  }
}

TEST(PatentAttack, WrongFactorsRejected) {
  const WorkedPipeline w = worked_pipeline(ModMatrix::identity(2, Modulus(wp::kN)));
  EXPECT_THROW(recover_key_and_message(w.pk, w.enc.ct, 541, 109), BadFactors);
  EXPECT_THROW(recover_key_and_message(w.pk, w.enc.ct, 541, 541), BadFactors);
}

}  // namespace
}  // namespace matbreak
