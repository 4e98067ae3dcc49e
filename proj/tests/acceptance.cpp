// Acceptance run: one PASS/FAIL line per criterion, supporting detail
// indented beneath it. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "matbreak/matbreak.hpp"
#include "test_support.hpp"

using namespace matbreak;
using clk = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(const char* name, bool ok) {
  std::printf("%s  %s\n", ok ? "PASS" : "FAIL", name);
  if (!ok) ++failures;
}

void detail(const std::string& s) { std::printf("      %s\n", s.c_str()); }

const char* yn(bool b) { return b ? "yes" : "no"; }

std::string brackets(const ModMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.dim(); ++j) s += (j ? "," : "") + std::to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

double ms_since(clk::time_point t0) { return Millis(clk::now() - t0).count(); }

// Repeated multiplication, independent of square-and-multiply.
ModMatrix slow_pow(const ModMatrix& m, std::int64_t e) { return testing::naive_pow(m, static_cast<unsigned>(e)); }

std::pair<u64, u64> distinct_primes(Rng& rng) {
  for (;;) {
    const u64 p = testing::random_16bit_prime(rng), q = testing::random_16bit_prime(rng);
    if (p != q) return {p, q};
  }
}

// ------------------------------------------------------------------------

void kex_golden() {
  namespace wk = worked::kex;
  const auto t0 = clk::now();
  const ModMatrix m1 = wk::m1(), m2 = wk::m2();
  const auto [a1, a2] = std::pair{wk::kListedAlice[0], wk::kListedAlice[1]};
  const auto [b1, b2] = std::pair{wk::kListedBob[0], wk::kListedBob[1]};

  // (a1,a2) = (449,41) for Alice, (b1,b2) = (509,131) for Bob, as listed.
  const ModMatrix c1 = slow_pow(m1, a1) * slow_pow(m2, a2);
  const ModMatrix c2 = slow_pow(m1, b1) * c1 * slow_pow(m2, b2);
  const ModMatrix k = slow_pow(m1, b1) * slow_pow(m2, b2);
  const ModMatrix k_alice = mat_inverse(slow_pow(m1, a1)) * c2 * mat_inverse(slow_pow(m2, a2));
  const bool c1_ok = c1 == wk::printed_c1();
  const bool c2_ok = c2 == wk::printed_c2();
  const bool k_ok = k == wk::printed_key() && k_alice == k;

  const KexParams params = KexParams::make(m1, m2);
  Rng rng(1);
  const KexTranscript printed{params, wk::printed_c1(), wk::printed_c2(), std::nullopt};
  const AttackReport on_printed = recover_key(printed, rng, kDefaultRetryBudget, wk::printed_key());
  const KexTranscript listed{params, c1, c2, std::nullopt};
  const AttackReport on_listed = recover_key(listed, rng, kDefaultRetryBudget, k);
  const double ms = ms_since(t0);

  criterion("key-exchange worked example reproduced bit-exactly with the listed exponents",
            c1_ok && c2_ok && k_ok && *on_printed.verified && *on_listed.verified && ms < 1000);
  detail(std::string("C1 = printed: ") + yn(c1_ok) + ", C2 = printed: " + yn(c2_ok) + ", K = printed: " + yn(k_ok));
  detail("computed C1 = " + brackets(c1) + ", printed C1 = " + brackets(wk::printed_c1()));
  detail("computed K  = " + brackets(k) + ", printed K  = " + brackets(wk::printed_key()));
  detail(std::string("attack on printed (M1,M2,C1,C2) outputs printed K: ") + yn(*on_printed.verified));
  detail(std::string("attack on computed transcript outputs computed K: ") + yn(*on_listed.verified));

  // Exchange the two exponent pairs: Alice (509,131), Bob (449,41).
  const ModMatrix sc1 = slow_pow(m1, b1) * slow_pow(m2, b2);
  const ModMatrix sc2 = slow_pow(m1, a1) * sc1 * slow_pow(m2, a2);
  const ModMatrix sk = slow_pow(m1, a1) * slow_pow(m2, a2);
  detail(std::string("with the exponent pairs exchanged: C1 ") + yn(sc1 == wk::printed_c1()) + ", C2 " +
         yn(sc2 == wk::printed_c2()) + ", K " + yn(sk == wk::printed_key()));
  char buf[64];
  std::snprintf(buf, sizeof buf, "runtime %.3f ms", ms);
  detail(buf);
}

void pke_golden() {
  namespace wp = worked::pke;
  const Modulus n(wp::kN), mp(wp::kP), mq(wp::kQ);
  // CRT by direct search, independent of crt_recombine.
  const ModMatrix k541 = wp::printed_key_541(), k113 = wp::printed_key_113();
  ModMatrix glued(2, n);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (u64 x = k541(i, j); x < wp::kN; x += wp::kP)
        if (x % wp::kQ == k113(i, j)) {
          glued.set(i, j, x);
          break;
        }
  const bool crt_ok = glued == wp::printed_key() && crt_recombine(k541, k113) == wp::printed_key();
  const bool e541_ok = reduce_mod(wp::printed_e(), mp) == wp::printed_e_541();

  const ModMatrix c = wp::c(), a = wp::a();
  const ModMatrix g = ModMatrix::scalar(2, n, wp::kGCoeffs[0]) + c.scaled(wp::kGCoeffs[1]);
  const ModMatrix d = ModMatrix::scalar(2, n, wp::kDCoeffs[0]) + g.scaled(wp::kDCoeffs[1]);
  const PatentPublicKey pk{a, c * a * c, g};
  Rng rng(2);
  const ModMatrix msg = random_matrix(2, n, rng);
  const ModMatrix e = d * a * d;
  const ModMatrix key = d * pk.b * d;
  const PatentCiphertext ct{key * msg, e};
  const PatentAttackResult res = recover_key_and_message(pk, ct, wp::kP, wp::kQ, key);
  const bool attack_ok = res.key == key && res.message == msg;
  const bool recomputed_e541 = reduce_mod(e, mp) == wp::printed_e_541();

  criterion("patent worked example: CRT triple, E mod 541, recomputed pipeline attacked",
            crt_ok && e541_ok && recomputed_e541 && attack_ok);
  detail(std::string("CRT(K_541, K_113) = printed K mod 541*113 = 61133: ") + yn(crt_ok));
  detail(std::string("printed E mod 541 = [[369,67],[204,153]]: ") + yn(e541_ok));
  detail(std::string("recomputed E mod 541 = [[369,67],[204,153]]: ") + yn(recomputed_e541));
  detail(std::string("attack K = recomputed K and M = plaintext: ") + yn(attack_ok));
  detail(std::string("recomputed B, G, D, E, K equal the printed values mod 61133: ") +
         yn(pk.b == wp::printed_b() && g == wp::printed_g() && d == wp::printed_d() && e == wp::printed_e() &&
            key == wp::printed_key()));
  detail("the modulus is read as 541*113 = 61133; with 6133 the CRT triple cannot hold (6133 != 541*113)");
}

void kex_campaign() {
  const auto t0 = clk::now();
  int ok = 0, first = 0, max_attempts = 0;
  std::size_t max_nullity = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(0xacce97, static_cast<u64>(t));
    const Modulus md(testing::random_16bit_prime(rng));
    const std::size_t n = 2 + rng.below(5);
    const KexParams params = kex_keygen(md, n, rng);
    const KexSecret alice = sample_secret(rng, 2, std::int64_t{1} << 20);
    const KexSecret bob = sample_secret(rng, 2, std::int64_t{1} << 20);
    const KexRun run = run_exchange(params, alice, bob);
    // Bob's key straight from his exponents, not from the exchange.
    const ModMatrix truth = mat_pow(params.m1(), bob.e1) * mat_pow(params.m2(), bob.e2);
    if (!(truth == run.alice_key)) continue;
    try {
      const AttackReport rep = recover_key(run.transcript, rng, 64, truth);
      if (*rep.verified) {
        ++ok;
        if (rep.attempts == 1) ++first;
        max_attempts = std::max(max_attempts, rep.attempts);
      }
      max_nullity = std::max(max_nullity, solve_relin_system(build_relin_system(params, run.transcript.c1))
                                              .result.nullspace.size());
    } catch (const RetriesExhausted&) {
    }
  }
  criterion("key-exchange attack campaign: 500 instances, n in 2..6, 16-bit primes, budget 64, all recovered",
            ok == trials);
  char buf[160];
  std::snprintf(buf, sizeof buf, "recovered %d/%d, first-attempt %d/%d (%.1f%%), max attempts %d, max nullity %zu, %.0f ms",
                ok, trials, first, trials, 100.0 * first / trials, max_attempts, max_nullity, ms_since(t0));
  detail(buf);
}

void pke_campaign() {
  const auto t0 = clk::now();
  int ok = 0, retried = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(0x9a7e47, static_cast<u64>(t));
    const auto [p, q] = distinct_primes(rng);
    const std::size_t k = 2 + rng.below(4);
    const PatentKeyPair kp = patent_keygen(p, q, k, rng);
    const ModMatrix msg = random_matrix(k, kp.pub.modulus(), rng);
    const PatentEncryption enc = patent_encrypt(kp.pub, msg, rng);
    // Key as the private-key holder computes it: C E C.
    const ModMatrix truth = kp.priv.c * enc.ct.e * kp.priv.c;
    if (!(truth == enc.key)) continue;
    const PatentAttackResult res = recover_key_and_message(kp.pub, enc.ct, p, q, truth);
    if (res.report.attempts != 1) ++retried;
    if (res.key == truth && res.message == msg) ++ok;
  }
  criterion("patent attack campaign: 200 instances, k in 2..5, distinct 16-bit p, q, K and M recovered",
            ok == trials && retried == 0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "recovered %d/%d, runs needing a retry %d, %.0f ms", ok, trials, retried,
                ms_since(t0));
  detail(buf);
}

void properties() {
  Rng rng(0x9e0);

  int ch_ok = 0, leibniz_ok = 0;
  for (int t = 0; t < 1000; ++t) {
    const Modulus md(testing::random_16bit_prime(rng));
    const std::size_t n = 2 + rng.below(5);
    const ModMatrix m = random_matrix(n, md, rng);
    const Polynomial f = charpoly(m);
    if (f(m).is_zero()) ++ch_ok;
    if (f.coeffs() == testing::leibniz_charpoly(m)) ++leibniz_ok;
  }

  int cz_ok = 0;
  for (int t = 0; t < 500; ++t) {
    const Modulus md(testing::random_16bit_prime(rng));
    const std::size_t n = 2 + rng.below(5);
    const ModMatrix tm = random_matrix(n, md, rng);
    std::vector<u64> coeffs(1 + rng.below(n));
    for (auto& c : coeffs) c = rng.below(md.value());
    const ModMatrix pt = Polynomial(coeffs, md)(tm);
    if (!is_invertible(pt)) {
      --t;
      continue;
    }
    const ModMatrix inv = mat_inverse(pt);
    if (inv * pt == ModMatrix::identity(n, md) && inv * tm == tm * inv) ++cz_ok;
  }

  int crt_ok = 0;
  const int crt_cases = 500;
  for (int t = 0; t < crt_cases; ++t) {
    const auto [p, q] = distinct_primes(rng);
    const std::size_t n = 1 + rng.below(5);
    const ModMatrix x = random_matrix(n, Modulus(p * q), rng);
    const ModMatrix xp = reduce_mod(x, Modulus(p)), xq = reduce_mod(x, Modulus(q));
    const ModMatrix back = crt_recombine(xp, xq);
    if (back == x && reduce_mod(back, Modulus(p)) == xp && reduce_mod(back, Modulus(q)) == xq) ++crt_ok;
  }

  // Any point of the solution set yields C_p E_p C_p. Three families: generic
  // keys, A commuting with G, and G = I, the latter two with large nullspaces.
  int any_instances = 0, any_ok = 0, nontrivial = 0;
  long points = 0;
  for (int t = 0; t < 60; ++t) {
    const auto [p, q] = distinct_primes(rng);
    const std::size_t k = 2 + rng.below(4);
    PatentKeyPair kp = patent_keygen(p, q, k, rng, t % 2 ? PolyDegree::kLinear : PolyDegree::kFull);
    const Modulus n = kp.pub.modulus();
    if (t % 3 == 1) {
      ModMatrix a(k, n);
      do {
        std::vector<u64> coeffs(k);
        for (auto& c : coeffs) c = rng.below(n.value());
        a = Polynomial(coeffs, n)(kp.pub.g);
      } while (!is_invertible(a));
      kp.pub.a = a;
      kp.pub.b = kp.priv.c * a * kp.priv.c;
    } else if (t % 3 == 2) {
      kp.pub.g = ModMatrix::identity(k, n);
    }
    const PatentEncryption enc = patent_encrypt(kp.pub, random_matrix(k, n, rng), rng);
    const Modulus md(p);
    const PatentPublicKey pk = reduce_public_key(kp.pub, md);
    const ModMatrix ep = enc.ct.e.reduced(md), cp = kp.priv.c.reduced(md);
    const QuadraticSystem sys = build_quadratic_system(pk.g, pk.a, ep, pk.b);
    const LinearSolveResult sol = solve_linear(sys.linear);
    if (!sol.nullspace.empty()) ++nontrivial;
    bool all = true;
    for (int s = 0; s < 50; ++s) {
      std::vector<u64> u = sol.particular;
      for (const auto& v : sol.nullspace) {
        const u64 c = rng.below(md.value());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = md.add(u[i], md.mul(c, v[i]));
      }
      all = all && evaluate(sys.linear, u) == sys.linear.rhs && combine(sys.sym_basis_b, u) == cp * ep * cp;
      ++points;
    }
    ++any_instances;
    any_ok += all;
  }

  criterion("property suites: Cayley-Hamilton, centralizer inverse, CRT roundtrip, any-solution sufficiency",
            ch_ok == 1000 && leibniz_ok == 1000 && cz_ok == 500 && crt_ok == crt_cases && any_ok == any_instances &&
                nontrivial > 0);
  char buf[200];
  std::snprintf(buf, sizeof buf, "Cayley-Hamilton f(M)=0 %d/1000, charpoly = Leibniz oracle %d/1000", ch_ok,
                leibniz_ok);
  detail(buf);
  std::snprintf(buf, sizeof buf, "p(T)^-1 T = T p(T)^-1 %d/500", cz_ok);
  detail(buf);
  std::snprintf(buf, sizeof buf, "CRT reduce/recombine roundtrip %d/%d", crt_ok, crt_cases);
  detail(buf);
  std::snprintf(buf, sizeof buf, "any-solution: %d/%d instances, %ld points (50 each), %d with nontrivial nullspace",
                any_ok, any_instances, points, nontrivial);
  detail(buf);
}

void scaling() {
  const std::vector<std::size_t> dims{2, 4, 8, 12, 16};
  const Modulus md(2147483647);
  const auto t0 = clk::now();
  const std::vector<BenchRecord> recs = run_bench(dims, md, 5, 0xbe4c);
  const double wall = ms_since(t0);
  std::vector<double> xs, ys;
  for (const DimMedian& d : per_dim_medians(recs)) {
    xs.push_back(static_cast<double>(d.n));
    ys.push_back(d.total_ms);
  }
  const auto slope = loglog_slope(xs, ys);
  criterion("scaling: log-log slope of median attack time over n in {2,4,8,12,16} <= 6.5, under 10 min",
            slope && *slope <= 6.5 && wall < 600000);
  char buf[160];
  std::snprintf(buf, sizeof buf, "modulus 2147483647 (31 bits), 5 trials per n, slope %.3f, wall %.1f ms",
                slope.value_or(-1), wall);
  detail(buf);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "n=%-2.0f median total %.4f ms", xs[i], ys[i]);
    detail(buf);
  }
}

}  // namespace

int main() {
  kex_golden();
  pke_golden();
  kex_campaign();
  pke_campaign();
  properties();
  scaling();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
