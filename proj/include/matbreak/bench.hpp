#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "matbreak/kex_attack.hpp"

namespace matbreak {

struct BenchRecord {
  std::size_t n = 0;
  int modulus_bits = 0;
  int trial = 0;
  double build_ms = 0;
  double solve_ms = 0;
  double total_ms = 0;
  int attempts = 0;
};

inline constexpr std::string_view kBenchCsvHeader = "n,modulus_bits,trial,build_ms,solve_ms,total_ms,attempts";

inline int bit_length(std::uint64_t v) { return v == 0 ? 0 : 64 - __builtin_clzll(v); }

/// One honest exchange plus attack per (dim, trial). Trial streams derive
/// from (seed, dim, trial), so attempt counts repeat across runs.
inline std::vector<BenchRecord> run_bench(const std::vector<std::size_t>& dims, Modulus modulus, int trials,
                                          std::uint64_t seed, int retry_budget = kDefaultRetryBudget) {
  std::vector<BenchRecord> out;
  for (std::size_t n : dims) {
    for (int t = 0; t < trials; ++t) {
      Rng rng = Rng::derive(seed, (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint32_t>(t));
      const KexParams params = kex_keygen(modulus, n, rng);
      const KexSecret alice = sample_secret(rng), bob = sample_secret(rng);
      const KexRun run = run_exchange(params, alice, bob);
      const AttackReport rep = recover_key(run.transcript, rng, retry_budget, run.bob_key);
      if (!rep.verified.value_or(false)) throw Error("bench attack recovered a wrong key");
      out.push_back({n, bit_length(modulus.value()), t, rep.build_time.count(), rep.solve_time.count(),
                     rep.elapsed.count(), rep.attempts});
    }
  }
  return out;
}

inline std::string format_bench_csv(const std::vector<BenchRecord>& records) {
  std::string s(kBenchCsvHeader);
  s += '\n';
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%zu,%d,%d,%.6f,%.6f,%.6f,%d\n", r.n, r.modulus_bits, r.trial, r.build_ms,
                  r.solve_ms, r.total_ms, r.attempts);
    s += buf;
  }
  return s;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

struct DimMedian {
  std::size_t n;
  double build_ms;
  double solve_ms;
  double total_ms;
};

inline std::vector<DimMedian> per_dim_medians(const std::vector<BenchRecord>& records) {
  std::vector<std::size_t> dims;
  for (const auto& r : records)
    if (std::find(dims.begin(), dims.end(), r.n) == dims.end()) dims.push_back(r.n);
  std::vector<DimMedian> out;
  for (std::size_t n : dims) {
    std::vector<double> b, s, t;
    for (const auto& r : records) {
      if (r.n != n) continue;
      b.push_back(r.build_ms);
      s.push_back(r.solve_ms);
      t.push_back(r.total_ms);
    }
    out.push_back({n, median(b), median(s), median(t)});
  }
  return out;
}

/// Least-squares slope of log(y) against log(x); nullopt with fewer than
/// two distinct x values.
inline std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  if (lx.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= ly.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace matbreak
