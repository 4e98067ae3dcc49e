// matbreak: command-line front end for the matrix key-exchange and
// patent-scheme attacks.
//
// Exit status: 0 success / verified, 1 attack failure, 2 input error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "matbreak/matbreak.hpp"

namespace fs = std::filesystem;
using namespace matbreak;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAttack = 1;
constexpr int kExitInput = 2;

/// Raised for failures that are the attack's, not the input's.
struct AttackFailed : Error {
  using Error::Error;
};

void emit(const std::string& path, std::string_view content) {
  if (path.empty()) std::cout << content;
  else write_file(path, content);
}

fs::path out_dir(const std::string& dir) {
  if (dir.empty()) return {};
  fs::create_directories(dir);
  return fs::path(dir);
}

/// Named-section file, or a bare canonical matrix.
ModMatrix read_matrix(const std::string& path, std::string_view name) {
  const std::string text = read_file(path);
  try {
    return parse_named_matrix(text, name).first;
  } catch (const ParseError&) {
    return parse_matrix(text);
  }
}

u64 random_16bit_prime(Rng& rng) { return random_prime(u64{1} << 15, u64{1} << 16, rng); }

const char* verdict(bool ok) { return ok ? "ok" : "MISMATCH"; }

// ------------------------------------------------------------------ config

struct Config {
  std::uint64_t seed = 0;
  std::optional<u64> modulus;
  std::optional<std::size_t> dim;
  std::optional<u64> p, q;
  std::optional<std::size_t> k;
  int retries = kDefaultRetryBudget;
  int trials = 1;
  std::string out;
  bool degree1 = false;
  std::string example;

  // file inputs
  std::string params, transcript, expect, pub, priv, ct, message, key_out;

  // bench
  std::vector<std::size_t> dims{2, 4, 8, 12, 16};
  int bench_trials = 5;

  // verify-paper
  std::string which = "all";

  PolyDegree degree() const { return degree1 ? PolyDegree::kLinear : PolyDegree::kFull; }
  FileMeta meta() const { return FileMeta{seed}; }
};

// -------------------------------------------------------------- key exchange

int cmd_kex_keygen(const Config& cfg) {
  Rng rng(cfg.seed);
  const Modulus md(cfg.modulus ? *cfg.modulus : random_16bit_prime(rng));
  const std::size_t n = cfg.dim.value_or(2 + rng.below(5));
  emit(cfg.out, serialize_params(kex_keygen(md, n, rng), cfg.meta()));
  return kExitOk;
}

struct KexOutcome {
  KexRun run;
  std::optional<AttackReport> report;
  std::optional<RetryDiagnostics> failure;
};

KexOutcome kex_instance(const KexParams& params, const KexSecret& alice, const KexSecret& bob,
                        std::optional<std::uint64_t> seed, Rng& rng, int retries) {
  KexOutcome out{run_exchange(params, alice, bob, seed), std::nullopt, std::nullopt};
  if (!(out.run.alice_key == out.run.bob_key)) throw Error("honest parties disagree on the key");
  try {
    out.report = recover_key(out.run.transcript, rng, retries, out.run.bob_key);
  } catch (const RetriesExhausted& e) {
    out.failure = e.diagnostics;
  }
  return out;
}

int write_kex_outputs(const Config& cfg, const KexOutcome& o) {
  const fs::path dir = out_dir(cfg.out);
  if (!dir.empty()) {
    write_file(dir / "transcript.txt", serialize_transcript(o.run.transcript));
    write_file(dir / "key.txt", serialize_named_matrix("K", o.run.bob_key, FileMeta{o.run.transcript.seed}));
    if (o.report) write_file(dir / "report.txt", serialize_report(make_report_file(*o.report, FileMeta{o.run.transcript.seed})));
  }
  std::cout << "shared key K (Bob):\n" << format_matrix(o.run.bob_key);
  if (!o.report) {
    std::cout << "attack: FAILED after " << cfg.retries << " attempts\n";
    return kExitAttack;
  }
  std::cout << "recovered K:\n" << format_matrix(o.report->recovered_k);
  std::cout << "attempts=" << o.report->attempts << " verified=" << (*o.report->verified ? "true" : "false") << "\n";
  return *o.report->verified ? kExitOk : kExitAttack;
}

int kex_worked_example(const Config& cfg) {
  namespace wk = worked::kex;
  const KexParams params = KexParams::make(wk::m1(), wk::m2());
  // The printed C1 and K belong to Alice = (509, 131), Bob = (449, 41);
  // with the roles as listed the exchange produces them the other way round.
  const KexSecret alice{wk::kListedBob[0], wk::kListedBob[1]};
  const KexSecret bob{wk::kListedAlice[0], wk::kListedAlice[1]};
  std::cout << "note: using Alice=(509,131), Bob=(449,41); the printed C1/K correspond to this assignment\n";
  Rng rng(cfg.seed);
  const KexOutcome o = kex_instance(params, alice, bob, cfg.seed, rng, cfg.retries);
  std::cout << "C1 " << verdict(o.run.transcript.c1 == wk::printed_c1()) << ", C2 "
            << verdict(o.run.transcript.c2 == wk::printed_c2()) << ", K "
            << verdict(o.run.bob_key == wk::printed_key()) << "\n";
  const int rc = write_kex_outputs(cfg, o);
  if (o.report && !(o.report->recovered_k == wk::printed_key())) return kExitAttack;
  return rc;
}

int cmd_kex_run(const Config& cfg) {
  if (!cfg.example.empty()) {
    if (cfg.example != "kex") throw InvalidArgument("kex-run --paper-example takes 'kex'");
    return kex_worked_example(cfg);
  }
  if (cfg.trials < 1) throw InvalidArgument("--trials must be >= 1");

  if (cfg.trials == 1) {
    Rng rng(cfg.seed);
    const Modulus md(cfg.modulus ? *cfg.modulus : random_16bit_prime(rng));
    const std::size_t n = cfg.dim.value_or(2 + rng.below(5));
    const KexParams params = cfg.params.empty() ? kex_keygen(md, n, rng) : parse_params(read_file(cfg.params)).first;
    const KexSecret alice = sample_secret(rng), bob = sample_secret(rng);
    std::cout << "n=" << params.dim() << " modulus=" << params.modulus().value() << " seed=" << cfg.seed << "\n";
    return write_kex_outputs(cfg, kex_instance(params, alice, bob, cfg.seed, rng, cfg.retries));
  }

  int verified = 0, first = 0, max_attempts = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng = Rng::derive(cfg.seed, static_cast<u64>(t));
    const Modulus md(cfg.modulus ? *cfg.modulus : random_16bit_prime(rng));
    const std::size_t n = cfg.dim.value_or(2 + rng.below(5));
    const KexParams params = kex_keygen(md, n, rng);
    const KexSecret alice = sample_secret(rng), bob = sample_secret(rng);
    const KexOutcome o = kex_instance(params, alice, bob, cfg.seed, rng, cfg.retries);
    if (o.report && *o.report->verified) {
      ++verified;
      if (o.report->attempts == 1) ++first;
      max_attempts = std::max(max_attempts, o.report->attempts);
    } else {
      std::cout << "trial " << t << ": FAILED (n=" << n << " modulus=" << md.value() << ")\n";
    }
  }
  std::printf("trials=%d verified=%d first_attempt=%d (%.2f%%) max_attempts=%d\n", cfg.trials, verified, first,
              100.0 * first / cfg.trials, max_attempts);
  return verified == cfg.trials ? kExitOk : kExitAttack;
}

int cmd_kex_attack(const Config& cfg) {
  const KexTranscript tx = parse_transcript(read_file(cfg.transcript));
  std::optional<ModMatrix> expect;
  if (!cfg.expect.empty()) expect = read_matrix(cfg.expect, "K");
  Rng rng(cfg.seed);
  const AttackReport rep = [&] {
    try {
      return recover_key(tx, rng, cfg.retries, expect);
    } catch (const RetriesExhausted& e) {
      throw AttackFailed(e.what());
    }
  }();
  emit(cfg.out, serialize_report(make_report_file(rep, cfg.meta())));
  return rep.verified.value_or(true) ? kExitOk : kExitAttack;
}

// ---------------------------------------------------------------- patent

std::pair<u64, u64> factors(const Config& cfg, Rng& rng) {
  if (cfg.p.has_value() != cfg.q.has_value()) throw InvalidArgument("--p and --q go together");
  if (cfg.p) return {*cfg.p, *cfg.q};
  for (;;) {
    const u64 p = random_16bit_prime(rng), q = random_16bit_prime(rng);
    if (p != q) return {p, q};
  }
}

int cmd_pke_keygen(const Config& cfg) {
  if (!cfg.p || !cfg.q) throw InvalidArgument("pke-keygen needs --p and --q");
  Rng rng(cfg.seed);
  const PatentKeyPair kp = patent_keygen(*cfg.p, *cfg.q, cfg.k.value_or(2), rng, cfg.degree());
  const fs::path dir = out_dir(cfg.out.empty() ? "." : cfg.out);
  write_file(dir / "public.txt", serialize_public_key(kp.pub, cfg.meta()));
  write_file(dir / "private.txt", serialize_private_key(kp.priv, cfg.meta()));
  return kExitOk;
}

int cmd_pke_encrypt(const Config& cfg) {
  const PatentPublicKey pk = parse_public_key(read_file(cfg.pub)).first;
  Rng rng(cfg.seed);
  const ModMatrix m = cfg.message.empty() ? random_matrix(pk.dim(), pk.modulus(), rng) : read_matrix(cfg.message, "M");
  const PatentEncryption enc = patent_encrypt(pk, m, rng, cfg.degree());
  emit(cfg.out, serialize_ciphertext(enc.ct, cfg.meta()));
  if (!cfg.key_out.empty()) write_file(cfg.key_out, serialize_named_matrix("K", enc.key, cfg.meta()));
  return kExitOk;
}

int cmd_pke_decrypt(const Config& cfg) {
  const PatentPublicKey pk = parse_public_key(read_file(cfg.pub)).first;
  const PatentPrivateKey sk = parse_private_key(read_file(cfg.priv)).first;
  const PatentCiphertext ct = parse_ciphertext(read_file(cfg.ct)).first;
  emit(cfg.out, serialize_named_matrix("M", patent_decrypt(sk, pk, ct), cfg.meta()));
  return kExitOk;
}

PatentAttackResult run_patent_attack(const PatentPublicKey& pk, const PatentCiphertext& ct, u64 p, u64 q,
                                     const std::optional<ModMatrix>& expect) {
  try {
    return recover_key_and_message(pk, ct, p, q, expect);
  } catch (const BadFactors&) {
    throw;
  } catch (const Inconsistent& e) {
    throw AttackFailed(std::string("no solution: ") + e.what());
  } catch (const NotInvertible& e) {
    throw AttackFailed(std::string("recovered key is singular: ") + e.what());
  }
}

int cmd_pke_attack(const Config& cfg) {
  if (!cfg.p || !cfg.q) throw InvalidArgument("pke-attack needs --p and --q");
  const PatentPublicKey pk = parse_public_key(read_file(cfg.pub)).first;
  const PatentCiphertext ct = parse_ciphertext(read_file(cfg.ct)).first;
  std::optional<ModMatrix> expect;
  if (!cfg.expect.empty()) expect = read_matrix(cfg.expect, "K");
  const PatentAttackResult res = run_patent_attack(pk, ct, *cfg.p, *cfg.q, expect);
  emit(cfg.out, serialize_report(make_report_file(res.report, cfg.meta(), res.message)));
  return res.report.verified.value_or(true) ? kExitOk : kExitAttack;
}

int pke_worked_example(const Config& cfg) {
  namespace wp = worked::pke;
  const Modulus n(wp::kN);
  std::cout << "note: modulus taken as 541*113 = 61133\n";
  const ModMatrix c = wp::c(), a = wp::a();
  const ModMatrix g = Polynomial({wp::kGCoeffs[0], wp::kGCoeffs[1]}, n)(c);
  const ModMatrix d = Polynomial({wp::kDCoeffs[0], wp::kDCoeffs[1]}, n)(g);
  const PatentPublicKey pk{a, c * a * c, g};
  const PatentPrivateKey sk{c, wp::kP, wp::kQ};
  Rng rng(cfg.seed);
  const ModMatrix m = random_matrix(2, n, rng);
  const PatentEncryption enc = patent_encrypt_with(pk, m, d);

  bool all = true;
  auto check = [&](const char* what, bool ok) {
    std::cout << what << ": " << verdict(ok) << "\n";
    all = all && ok;
  };
  check("B", pk.b == wp::printed_b());
  check("G", g == wp::printed_g());
  check("D", d == wp::printed_d());
  check("E", enc.ct.e == wp::printed_e());
  check("K", enc.key == wp::printed_key());
  check("E mod 541", reduce_mod(enc.ct.e, Modulus(wp::kP)) == wp::printed_e_541());
  check("CRT(K_541, K_113)", crt_recombine(wp::printed_key_541(), wp::printed_key_113()) == wp::printed_key());

  const PatentAttackResult res = run_patent_attack(pk, enc.ct, wp::kP, wp::kQ, enc.key);
  const ModMatrix decrypted = patent_decrypt(sk, pk, enc.ct);
  std::cout << "recovered K:\n" << format_matrix(res.key);
  check("attack K == encryptor K", *res.report.verified);
  check("attack M == decryptor M", res.message == decrypted && decrypted == m);

  const fs::path dir = out_dir(cfg.out);
  if (!dir.empty()) {
    write_file(dir / "public.txt", serialize_public_key(pk, FileMeta{std::nullopt}));
    write_file(dir / "private.txt", serialize_private_key(sk, FileMeta{std::nullopt}));
    write_file(dir / "ciphertext.txt", serialize_ciphertext(enc.ct, cfg.meta()));
    write_file(dir / "report.txt", serialize_report(make_report_file(res.report, cfg.meta(), res.message)));
  }
  return all ? kExitOk : kExitAttack;
}

int cmd_pke_run(const Config& cfg) {
  if (!cfg.example.empty()) {
    if (cfg.example != "pke") throw InvalidArgument("pke-run --paper-example takes 'pke'");
    return pke_worked_example(cfg);
  }
  if (cfg.trials < 1) throw InvalidArgument("--trials must be >= 1");

  int ok = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng = cfg.trials == 1 ? Rng(cfg.seed) : Rng::derive(cfg.seed, static_cast<u64>(t));
    const auto [p, q] = factors(cfg, rng);
    const std::size_t k = cfg.k.value_or(2 + rng.below(4));
    const PatentKeyPair kp = patent_keygen(p, q, k, rng, cfg.degree());
    const ModMatrix m = random_matrix(k, kp.pub.modulus(), rng);
    const PatentEncryption enc = patent_encrypt(kp.pub, m, rng, cfg.degree());
    const PatentAttackResult res = run_patent_attack(kp.pub, enc.ct, p, q, enc.key);
    const bool good = *res.report.verified && res.message == patent_decrypt(kp.priv, kp.pub, enc.ct) && res.message == m;
    ok += good;

    if (cfg.trials == 1) {
      std::cout << "k=" << k << " p=" << p << " q=" << q << " seed=" << cfg.seed << "\n";
      std::cout << "encryptor K:\n" << format_matrix(enc.key) << "recovered K:\n" << format_matrix(res.key);
      std::cout << "verified=" << (good ? "true" : "false") << "\n";
      const fs::path dir = out_dir(cfg.out);
      if (!dir.empty()) {
        write_file(dir / "public.txt", serialize_public_key(kp.pub, cfg.meta()));
        write_file(dir / "private.txt", serialize_private_key(kp.priv, cfg.meta()));
        write_file(dir / "ciphertext.txt", serialize_ciphertext(enc.ct, cfg.meta()));
        write_file(dir / "key.txt", serialize_named_matrix("K", enc.key, cfg.meta()));
        write_file(dir / "report.txt", serialize_report(make_report_file(res.report, cfg.meta(), res.message)));
      }
    } else if (!good) {
      std::cout << "trial " << t << ": FAILED (k=" << k << " p=" << p << " q=" << q << ")\n";
    }
  }
  if (cfg.trials > 1) std::printf("trials=%d verified=%d\n", cfg.trials, ok);
  return ok == cfg.trials ? kExitOk : kExitAttack;
}

// ----------------------------------------------------------------- bench

int cmd_bench(const Config& cfg) {
  if (cfg.dims.empty()) throw InvalidArgument("--dims is empty");
  if (cfg.bench_trials < 1) throw InvalidArgument("--trials must be >= 1");
  const Modulus md(cfg.modulus.value_or(2147483647));
  md.require_field();
  for (std::size_t n : cfg.dims)
    if (n < 2) throw InvalidArgument("bench dims must be >= 2");

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<BenchRecord> records = run_bench(cfg.dims, md, cfg.bench_trials, cfg.seed, cfg.retries);
  const Millis wall = std::chrono::steady_clock::now() - t0;

  const FileMeta meta = cfg.meta();
  const std::string csv = "# generator=" + meta.generator + " seed=" + std::to_string(cfg.seed) +
                          " version=" + meta.version + "\n" + format_bench_csv(records);
  emit(cfg.out, csv);

  std::vector<double> xs, ys;
  for (const DimMedian& d : per_dim_medians(records)) {
    std::printf("# n=%zu median_build_ms=%.6f median_solve_ms=%.6f median_total_ms=%.6f\n", d.n, d.build_ms,
                d.solve_ms, d.total_ms);
    xs.push_back(static_cast<double>(d.n));
    ys.push_back(d.total_ms);
  }
  if (const auto slope = loglog_slope(xs, ys)) std::printf("# loglog_slope=%.4f\n", *slope);
  else std::printf("# loglog_slope=n/a\n");
  std::printf("# wall_ms=%.3f\n", wall.count());
  return kExitOk;
}

// ---------------------------------------------------------- verify-paper

bool verify_kex() {
  namespace wk = worked::kex;
  const KexParams params = KexParams::make(wk::m1(), wk::m2());
  bool all = true;
  auto check = [&](const std::string& what, bool ok) {
    std::cout << "kex " << what << ": " << verdict(ok) << "\n";
    all = all && ok;
  };

  const KexSecret listed_a{wk::kListedAlice[0], wk::kListedAlice[1]};
  const KexSecret listed_b{wk::kListedBob[0], wk::kListedBob[1]};
  const KexRun listed = run_exchange(params, listed_a, listed_b);
  check("C1 (roles as listed)", listed.transcript.c1 == wk::printed_c1());
  check("C2 (roles as listed)", listed.transcript.c2 == wk::printed_c2());
  check("K (roles as listed)", listed.bob_key == wk::printed_key());

  const KexRun swapped = run_exchange(params, listed_b, listed_a);
  check("C1 (roles swapped)", swapped.transcript.c1 == wk::printed_c1());
  check("C2 (roles swapped)", swapped.transcript.c2 == wk::printed_c2());
  check("K (roles swapped)", swapped.bob_key == wk::printed_key());

  const KexTranscript printed{params, wk::printed_c1(), wk::printed_c2(), std::nullopt};
  Rng rng(0);
  try {
    const AttackReport rep = recover_key(printed, rng, kDefaultRetryBudget, wk::printed_key());
    check("attack on printed transcript gives printed K", *rep.verified);
  } catch (const RetriesExhausted&) {
    check("attack on printed transcript gives printed K", false);
  }
  return all;
}

bool verify_pke() {
  namespace wp = worked::pke;
  bool all = true;
  auto check = [&](const std::string& what, bool ok) {
    std::cout << "pke " << what << ": " << verdict(ok) << "\n";
    all = all && ok;
  };
  check("CRT(K_541, K_113) = K", crt_recombine(wp::printed_key_541(), wp::printed_key_113()) == wp::printed_key());
  check("E mod 541", reduce_mod(wp::printed_e(), Modulus(wp::kP)) == wp::printed_e_541());
  const Modulus n(wp::kN);
  const ModMatrix g = Polynomial({wp::kGCoeffs[0], wp::kGCoeffs[1]}, n)(wp::c());
  const ModMatrix d = Polynomial({wp::kDCoeffs[0], wp::kDCoeffs[1]}, n)(g);
  const PatentPublicKey pk{wp::a(), wp::c() * wp::a() * wp::c(), g};
  const PatentEncryption enc = patent_encrypt_with(pk, ModMatrix::identity(2, n), d);
  check("B", pk.b == wp::printed_b());
  check("G", g == wp::printed_g());
  check("D", d == wp::printed_d());
  check("E", enc.ct.e == wp::printed_e());
  check("K", enc.key == wp::printed_key());
  const PatentAttackResult res = recover_key_and_message(pk, enc.ct, wp::kP, wp::kQ, wp::printed_key());
  check("attack recovers K", *res.report.verified);
  return all;
}

int cmd_verify_examples(const Config& cfg) {
  if (cfg.which != "kex" && cfg.which != "pke" && cfg.which != "all")
    throw InvalidArgument("verify-paper takes kex, pke or all");
  bool ok = true;
  if (cfg.which != "pke") ok = verify_kex() && ok;
  if (cfg.which != "kex") ok = verify_pke() && ok;
  return ok ? kExitOk : kExitAttack;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matbreak: key recovery for matrix-power key exchange and the patent matrix cipher"};
  app.require_subcommand(1);
  Config cfg;

  auto seed = [&](CLI::App* s) { s->add_option("--seed", cfg.seed, "64-bit seed (default 0)"); };
  auto retries = [&](CLI::App* s) {
    s->add_option("--retries", cfg.retries, "attack retry budget")->check(CLI::PositiveNumber);
  };
  auto out = [&](CLI::App* s, const char* what) { s->add_option("--out", cfg.out, what); };

  auto* kex_keygen_cmd = app.add_subcommand("kex-keygen", "generate public parameters M1, M2");
  seed(kex_keygen_cmd);
  kex_keygen_cmd->add_option("--modulus", cfg.modulus, "prime modulus (default: random 16-bit prime)");
  kex_keygen_cmd->add_option("--dim", cfg.dim, "matrix dimension (default: random in 2..6)");
  out(kex_keygen_cmd, "params file (default stdout)");

  auto* kex_run_cmd = app.add_subcommand("kex-run", "honest exchange followed by the passive attack");
  seed(kex_run_cmd);
  retries(kex_run_cmd);
  kex_run_cmd->add_option("--modulus", cfg.modulus, "prime modulus (default: random 16-bit prime)");
  kex_run_cmd->add_option("--dim", cfg.dim, "matrix dimension (default: random in 2..6)");
  kex_run_cmd->add_option("--params", cfg.params, "use these public parameters");
  kex_run_cmd->add_option("--trials", cfg.trials, "run a campaign of independent instances");
  kex_run_cmd->add_option("--paper-example", cfg.example, "run the built-in worked example ('kex')");
  out(kex_run_cmd, "directory for transcript.txt, key.txt, report.txt");

  auto* kex_attack_cmd = app.add_subcommand("kex-attack", "recover the shared key from a transcript");
  seed(kex_attack_cmd);
  retries(kex_attack_cmd);
  kex_attack_cmd->add_option("transcript,--transcript", cfg.transcript, "transcript file")->required();
  kex_attack_cmd->add_option("--expect", cfg.expect, "true key, to set verified=");
  out(kex_attack_cmd, "report file (default stdout)");

  auto* pke_keygen_cmd = app.add_subcommand("pke-keygen", "patent-scheme key pair");
  seed(pke_keygen_cmd);
  pke_keygen_cmd->add_option("--p", cfg.p, "first prime factor");
  pke_keygen_cmd->add_option("--q", cfg.q, "second prime factor");
  pke_keygen_cmd->add_option("--k", cfg.k, "matrix dimension (default 2)");
  pke_keygen_cmd->add_flag("--degree1", cfg.degree1, "draw G as alpha + beta C");
  out(pke_keygen_cmd, "directory for public.txt and private.txt (default .)");

  auto* pke_encrypt_cmd = app.add_subcommand("pke-encrypt", "encrypt a message matrix");
  seed(pke_encrypt_cmd);
  pke_encrypt_cmd->add_option("--pub", cfg.pub, "public key file")->required();
  pke_encrypt_cmd->add_option("--message", cfg.message, "message matrix (default: random)");
  pke_encrypt_cmd->add_option("--key-out", cfg.key_out, "also write the encryptor's key K");
  pke_encrypt_cmd->add_flag("--degree1", cfg.degree1, "draw D as alpha + beta G");
  out(pke_encrypt_cmd, "ciphertext file (default stdout)");

  auto* pke_decrypt_cmd = app.add_subcommand("pke-decrypt", "decrypt with the private key");
  pke_decrypt_cmd->add_option("--pub", cfg.pub, "public key file")->required();
  pke_decrypt_cmd->add_option("--priv", cfg.priv, "private key file")->required();
  pke_decrypt_cmd->add_option("--ct", cfg.ct, "ciphertext file")->required();
  out(pke_decrypt_cmd, "message file (default stdout)");

  auto* pke_attack_cmd = app.add_subcommand("pke-attack", "recover K and M from public data and p, q");
  pke_attack_cmd->add_option("--pub", cfg.pub, "public key file")->required();
  pke_attack_cmd->add_option("--ct", cfg.ct, "ciphertext file")->required();
  pke_attack_cmd->add_option("--p", cfg.p, "first prime factor");
  pke_attack_cmd->add_option("--q", cfg.q, "second prime factor");
  pke_attack_cmd->add_option("--expect", cfg.expect, "true key, to set verified=");
  pke_attack_cmd->add_option("--seed", cfg.seed, "seed recorded in the report");
  out(pke_attack_cmd, "report file (default stdout)");

  auto* pke_run_cmd = app.add_subcommand("pke-run", "keygen, encrypt, attack, compare with the decryptor");
  seed(pke_run_cmd);
  pke_run_cmd->add_option("--p", cfg.p, "first prime factor (default: random 16-bit)");
  pke_run_cmd->add_option("--q", cfg.q, "second prime factor (default: random 16-bit)");
  pke_run_cmd->add_option("--k", cfg.k, "matrix dimension (default: random in 2..5)");
  pke_run_cmd->add_option("--trials", cfg.trials, "run a campaign of independent instances");
  pke_run_cmd->add_flag("--degree1", cfg.degree1, "draw G and D with degree 1");
  pke_run_cmd->add_option("--paper-example", cfg.example, "run the built-in worked example ('pke')");
  out(pke_run_cmd, "directory for the key, ciphertext and report files");

  auto* bench_cmd = app.add_subcommand("bench", "time the key-exchange attack against n");
  seed(bench_cmd);
  retries(bench_cmd);
  bench_cmd->add_option("--dims", cfg.dims, "dimensions, comma separated")->delimiter(',');
  bench_cmd->add_option("--modulus", cfg.modulus, "prime modulus (default 2147483647)");
  bench_cmd->add_option("--trials", cfg.bench_trials, "trials per dimension (default 5)");
  out(bench_cmd, "CSV file (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify-paper", "check the built-in worked examples");
  verify_cmd->add_option("which", cfg.which, "kex, pke or all")->default_val("all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "kex-keygen") return cmd_kex_keygen(cfg);
    if (name == "kex-run") return cmd_kex_run(cfg);
    if (name == "kex-attack") return cmd_kex_attack(cfg);
    if (name == "pke-keygen") return cmd_pke_keygen(cfg);
    if (name == "pke-encrypt") return cmd_pke_encrypt(cfg);
    if (name == "pke-decrypt") return cmd_pke_decrypt(cfg);
    if (name == "pke-attack") return cmd_pke_attack(cfg);
    if (name == "pke-run") return cmd_pke_run(cfg);
    if (name == "bench") return cmd_bench(cfg);
    if (name == "verify-paper") return cmd_verify_examples(cfg);
  } catch (const AttackFailed& e) {
    std::cerr << "matbreak: attack failed: " << e.what() << "\n";
    return kExitAttack;
  } catch (const std::exception& e) {
    std::cerr << "matbreak: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
