#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "matbreak/kex_attack.hpp"
#include "matbreak/pke_patent.hpp"

namespace matbreak {

inline constexpr std::string_view kToolVersion = "matbreak 0.1.0";

// Canonical matrix text:
//   dim=<n> mod=<m>
//   n lines of n space-separated residues
// LF line endings, no trailing whitespace. Every file is a sequence of
// "[section]" headers, each followed by its body lines, in a fixed order.

/// Provenance written into every file.
struct FileMeta {
  std::optional<std::uint64_t> seed;
  std::string generator = std::string(Rng::kName);
  std::string version = std::string(kToolVersion);
  friend bool operator==(const FileMeta&, const FileMeta&) = default;
};

namespace detail {

inline std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  if (s.empty() || (s.size() > 1 && s[0] == '0')) throw ParseError("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

inline std::string_view expect_prefix(std::string_view line, std::string_view key) {
  if (line.substr(0, key.size()) != key) throw ParseError("expected '" + std::string(key) + "', got '" + std::string(line) + "'");
  return line.substr(key.size());
}

/// Line cursor over an LF-terminated text.
class Lines {
 public:
  explicit Lines(std::string_view text) {
    if (!text.empty() && text.back() != '\n') throw ParseError("file must end with a newline");
    if (text.find('\r') != std::string_view::npos) throw ParseError("CR characters are not allowed");
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t nl = text.find('\n', pos);
      lines_.emplace_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }
  bool done() const { return next_ == lines_.size(); }
  std::string_view next() {
    if (done()) throw ParseError("unexpected end of file");
    return lines_[next_++];
  }
  void expect(std::string_view exact) {
    std::string_view l = next();
    if (l != exact) throw ParseError("expected '" + std::string(exact) + "', got '" + std::string(l) + "'");
  }
  void expect_end() const {
    if (!done()) throw ParseError("trailing content after last section");
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t next_ = 0;
};

inline std::string format_meta(const FileMeta& meta) {
  std::string s = "[meta]\n";
  s += "generator=" + meta.generator + "\n";
  s += "seed=" + (meta.seed ? std::to_string(*meta.seed) : std::string("none")) + "\n";
  s += "version=" + meta.version + "\n";
  return s;
}

inline FileMeta parse_meta(Lines& in) {
  in.expect("[meta]");
  FileMeta meta;
  meta.generator = std::string(expect_prefix(in.next(), "generator="));
  std::string_view seed = expect_prefix(in.next(), "seed=");
  if (seed == "none") meta.seed = std::nullopt;
  else meta.seed = parse_u64(seed, "seed");
  meta.version = std::string(expect_prefix(in.next(), "version="));
  return meta;
}

}  // namespace detail

inline std::string format_matrix(const ModMatrix& m) {
  std::string s = "dim=" + std::to_string(m.dim()) + " mod=" + std::to_string(m.modulus().value()) + "\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) s += ' ';
      s += std::to_string(m(i, j));
    }
    s += '\n';
  }
  return s;
}

namespace detail {

inline ModMatrix parse_matrix(Lines& in) {
  std::string_view header = in.next();
  const std::size_t sp = header.find(' ');
  if (sp == std::string_view::npos) throw ParseError("malformed matrix header '" + std::string(header) + "'");
  const std::uint64_t dim = parse_u64(expect_prefix(header.substr(0, sp), "dim="), "dim");
  const std::uint64_t mod = parse_u64(expect_prefix(header.substr(sp + 1), "mod="), "mod");
  if (dim == 0 || dim > 4096) throw ParseError("matrix dimension out of range");
  const Modulus md = [&] {
    try {
      return Modulus(mod);
    } catch (const InvalidModulus& e) {
      throw ParseError(e.what());
    }
  }();
  ModMatrix m(dim, md);
  for (std::size_t i = 0; i < dim; ++i) {
    std::string_view row = in.next();
    std::size_t pos = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      std::size_t end = (j + 1 == dim) ? row.size() : row.find(' ', pos);
      if (end == std::string_view::npos) throw ParseError("matrix row has too few entries");
      const std::uint64_t v = parse_u64(row.substr(pos, end - pos), "matrix entry");
      if (v >= mod) throw ParseError("matrix entry not reduced modulo " + std::to_string(mod));
      m.set(i, j, v);
      pos = end + 1;
    }
  }
  return m;
}

inline ModMatrix parse_section_matrix(Lines& in, std::string_view name) {
  in.expect("[" + std::string(name) + "]");
  return parse_matrix(in);
}

inline std::string section(std::string_view name, const ModMatrix& m) {
  return "[" + std::string(name) + "]\n" + format_matrix(m);
}

inline std::string format_ms(Millis ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms.count());
  return buf;
}

}  // namespace detail

/// Bare canonical form, no sections.
inline ModMatrix parse_matrix(std::string_view text) {
  detail::Lines in(text);
  ModMatrix m = detail::parse_matrix(in);
  in.expect_end();
  return m;
}

// Transcript: [meta] [params] (M1 then M2) [C1] [C2]

inline std::string serialize_transcript(const KexTranscript& t) {
  FileMeta meta{t.seed, t.generator};
  return detail::format_meta(meta) + "[params]\n" + format_matrix(t.params.m1()) + format_matrix(t.params.m2()) +
         detail::section("C1", t.c1) + detail::section("C2", t.c2);
}

inline KexTranscript parse_transcript(std::string_view text) {
  detail::Lines in(text);
  FileMeta meta = detail::parse_meta(in);
  in.expect("[params]");
  ModMatrix m1 = detail::parse_matrix(in);
  ModMatrix m2 = detail::parse_matrix(in);
  ModMatrix c1 = detail::parse_section_matrix(in, "C1");
  ModMatrix c2 = detail::parse_section_matrix(in, "C2");
  in.expect_end();
  KexParams params = [&] {
    try {
      return KexParams::make(std::move(m1), std::move(m2));
    } catch (const Error& e) {
      throw ParseError(std::string("invalid params: ") + e.what());
    }
  }();
  if (c1.dim() != params.dim() || c2.dim() != params.dim() || !(c1.modulus() == params.modulus()) ||
      !(c2.modulus() == params.modulus()))
    throw ParseError("C1/C2 do not match the params");
  return KexTranscript{std::move(params), std::move(c1), std::move(c2), meta.seed, meta.generator};
}

// Params file: [meta] [params]

inline std::string serialize_params(const KexParams& p, const FileMeta& meta) {
  return detail::format_meta(meta) + "[params]\n" + format_matrix(p.m1()) + format_matrix(p.m2());
}

inline std::pair<KexParams, FileMeta> parse_params(std::string_view text) {
  detail::Lines in(text);
  FileMeta meta = detail::parse_meta(in);
  in.expect("[params]");
  ModMatrix m1 = detail::parse_matrix(in);
  ModMatrix m2 = detail::parse_matrix(in);
  in.expect_end();
  try {
    return {KexParams::make(std::move(m1), std::move(m2)), meta};
  } catch (const Error& e) {
    throw ParseError(std::string("invalid params: ") + e.what());
  }
}

// Single named matrix: [meta] [<name>]

inline std::string serialize_named_matrix(std::string_view name, const ModMatrix& m, const FileMeta& meta) {
  return detail::format_meta(meta) + detail::section(name, m);
}

inline std::pair<ModMatrix, FileMeta> parse_named_matrix(std::string_view text, std::string_view name) {
  detail::Lines in(text);
  FileMeta meta = detail::parse_meta(in);
  ModMatrix m = detail::parse_section_matrix(in, name);
  in.expect_end();
  return {std::move(m), meta};
}

// Patent public key: [meta] [A] [B] [G]

inline std::string serialize_public_key(const PatentPublicKey& pk, const FileMeta& meta) {
  return detail::format_meta(meta) + detail::section("A", pk.a) + detail::section("B", pk.b) +
         detail::section("G", pk.g);
}

inline std::pair<PatentPublicKey, FileMeta> parse_public_key(std::string_view text) {
  detail::Lines in(text);
  FileMeta meta = detail::parse_meta(in);
  ModMatrix a = detail::parse_section_matrix(in, "A");
  ModMatrix b = detail::parse_section_matrix(in, "B");
  ModMatrix g = detail::parse_section_matrix(in, "G");
  in.expect_end();
  if (!(a.modulus() == b.modulus()) || !(a.modulus() == g.modulus()) || a.dim() != b.dim() || a.dim() != g.dim())
    throw ParseError("A, B, G must share dim and modulus");
  return {PatentPublicKey{std::move(a), std::move(b), std::move(g)}, meta};
}

// Patent private key: [meta] [factors] p= q= [C]

inline std::string serialize_private_key(const PatentPrivateKey& sk, const FileMeta& meta) {
  return detail::format_meta(meta) + "[factors]\np=" + std::to_string(sk.p) + "\nq=" + std::to_string(sk.q) +
         "\n" + detail::section("C", sk.c);
}

inline std::pair<PatentPrivateKey, FileMeta> parse_private_key(std::string_view text) {
  detail::Lines in(text);
  FileMeta meta = detail::parse_meta(in);
  in.expect("[factors]");
  const std::uint64_t p = detail::parse_u64(detail::expect_prefix(in.next(), "p="), "p");
  const std::uint64_t q = detail::parse_u64(detail::expect_prefix(in.next(), "q="), "q");
  ModMatrix c = detail::parse_section_matrix(in, "C");
  in.expect_end();
  if (static_cast<u128>(p) * q != c.modulus().value()) throw ParseError("p*q does not match the modulus of C");
  return {PatentPrivateKey{std::move(c), p, q}, meta};
}

// Patent ciphertext: [meta] [KM] [E]

inline std::string serialize_ciphertext(const PatentCiphertext& ct, const FileMeta& meta) {
  return detail::format_meta(meta) + detail::section("KM", ct.km) + detail::section("E", ct.e);
}

inline std::pair<PatentCiphertext, FileMeta> parse_ciphertext(std::string_view text) {
  detail::Lines in(text);
  FileMeta meta = detail::parse_meta(in);
  ModMatrix km = detail::parse_section_matrix(in, "KM");
  ModMatrix e = detail::parse_section_matrix(in, "E");
  in.expect_end();
  if (!(km.modulus() == e.modulus()) || km.dim() != e.dim()) throw ParseError("KM and E must share dim and modulus");
  return {PatentCiphertext{std::move(km), std::move(e)}, meta};
}

// Attack report: [meta] [report] attempts= elapsed_ms= verified= [recovered_k] ([recovered_m])

struct ReportFile {
  FileMeta meta;
  int attempts = 1;
  std::string elapsed_ms = "0.000";
  std::optional<bool> verified;
  ModMatrix recovered_k;
  std::optional<ModMatrix> recovered_m;
  friend bool operator==(const ReportFile&, const ReportFile&) = default;
};

inline ReportFile make_report_file(const AttackReport& r, const FileMeta& meta,
                                   std::optional<ModMatrix> message = std::nullopt) {
  return {meta, r.attempts, detail::format_ms(r.elapsed), r.verified, r.recovered_k, std::move(message)};
}

inline std::string serialize_report(const ReportFile& r) {
  std::string s = detail::format_meta(r.meta) + "[report]\n";
  s += "attempts=" + std::to_string(r.attempts) + "\n";
  s += "elapsed_ms=" + r.elapsed_ms + "\n";
  s += std::string("verified=") + (r.verified ? (*r.verified ? "true" : "false") : "unknown") + "\n";
  s += detail::section("recovered_k", r.recovered_k);
  if (r.recovered_m) s += detail::section("recovered_m", *r.recovered_m);
  return s;
}

inline ReportFile parse_report(std::string_view text) {
  detail::Lines in(text);
  FileMeta meta = detail::parse_meta(in);
  in.expect("[report]");
  const auto attempts = detail::parse_u64(detail::expect_prefix(in.next(), "attempts="), "attempts");
  if (attempts < 1 || attempts > 1'000'000'000) throw ParseError("attempts out of range");
  std::string elapsed(detail::expect_prefix(in.next(), "elapsed_ms="));
  {
    const auto dot = elapsed.find('.');
    if (dot == std::string::npos || elapsed.size() - dot != 4) throw ParseError("elapsed_ms must have 3 decimals");
    detail::parse_u64(std::string_view(elapsed).substr(0, dot), "elapsed_ms");
    for (char ch : elapsed.substr(dot + 1))
      if (ch < '0' || ch > '9') throw ParseError("malformed elapsed_ms");
  }
  std::string_view v = detail::expect_prefix(in.next(), "verified=");
  std::optional<bool> verified;
  if (v == "true") verified = true;
  else if (v == "false") verified = false;
  else if (v != "unknown") throw ParseError("verified must be true, false or unknown");
  ModMatrix k = detail::parse_section_matrix(in, "recovered_k");
  std::optional<ModMatrix> m;
  if (!in.done()) m = detail::parse_section_matrix(in, "recovered_m");
  in.expect_end();
  return {meta, static_cast<int>(attempts), elapsed, verified, std::move(k), std::move(m)};
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write '" + path + "'");
  f << content;
}

}  // namespace matbreak
