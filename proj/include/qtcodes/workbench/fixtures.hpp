// Published-table fixtures and their verification under both coefficient
// orders.

#ifndef QTCODES_WORKBENCH_FIXTURES_HPP
#define QTCODES_WORKBENCH_FIXTURES_HPP

#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "../lincode.hpp"
#include "../polyring.hpp"
#include "../qtcore.hpp"
#include "bklc.hpp"

namespace qtcodes {

/// One row of `q,n,k,d,a,N,m,flags,polys`. The first `|`-separated flag is
/// the row id (e.g. "II.2").
struct FixtureRow {
  std::string id;
  int q = 0;
  int n = 0;
  int k = 0;
  int d = 0;
  int a = 1;
  long long N = 0;
  int m = 0;
  std::vector<std::string> flags;
  std::vector<std::string> polys;
  std::size_t line = 0;

  [[nodiscard]] bool has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
  }
};

inline std::vector<FixtureRow> parse_fixtures(std::istream& in, const std::string& source = "<fixtures>") {
  static const char* kHeader = "q,n,k,d,a,N,m,flags,polys";
  std::vector<FixtureRow> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header) {
      if (t != kHeader) throw FormatError(source, lineno, std::string("expected header '") + kHeader + "'");
      header = true;
      continue;
    }
    const auto f = detail::split(t, ',');
    if (f.size() != 9) throw FormatError(source, lineno, "expected 9 fields, got " + std::to_string(f.size()));
    FixtureRow r;
    r.line = lineno;
    r.q = static_cast<int>(detail::parse_int(f[0], source, lineno, "q"));
    r.n = static_cast<int>(detail::parse_int(f[1], source, lineno, "n"));
    r.k = static_cast<int>(detail::parse_int(f[2], source, lineno, "k"));
    r.d = static_cast<int>(detail::parse_int(f[3], source, lineno, "d"));
    r.a = static_cast<int>(detail::parse_int(f[4], source, lineno, "a"));
    r.N = detail::parse_int(f[5], source, lineno, "N");
    r.m = static_cast<int>(detail::parse_int(f[6], source, lineno, "m"));
    for (const auto& fl : detail::split(detail::trim(f[7]), '|'))
      if (!detail::trim(fl).empty()) r.flags.push_back(detail::trim(fl));
    if (r.flags.empty()) throw FormatError(source, lineno, "flags must start with a row id");
    r.id = r.flags.front();
    for (const auto& p : detail::split(detail::trim(f[8]), ';'))
      if (!detail::trim(p).empty()) r.polys.push_back(detail::trim(p));
    if (r.polys.empty()) throw FormatError(source, lineno, "row has no polynomials");
    if (!is_supported_prime(r.q)) throw FormatError(source, lineno, "unsupported q=" + std::to_string(r.q));
    if (r.a < 1 || r.a >= r.q) throw FormatError(source, lineno, "a must be a nonzero element of GF(q)");
    if (r.m < 1 || r.N < 1) throw FormatError(source, lineno, "m and N must be positive");
    rows.push_back(std::move(r));
  }
  if (!header) throw FormatError(source, lineno, std::string("missing header '") + kHeader + "'");
  return rows;
}

inline std::vector<FixtureRow> load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture file '" + path + "'");
  return parse_fixtures(in, path);
}

enum class VerifyVerdict { Confirmed, ConfirmedNk, Partial, Mismatch, InconsistentFixture };

inline const char* to_string(VerifyVerdict v) noexcept {
  switch (v) {
    case VerifyVerdict::Confirmed: return "confirmed";
    case VerifyVerdict::ConfirmedNk: return "confirmed-nk";
    case VerifyVerdict::Partial: return "partial";
    case VerifyVerdict::Mismatch: return "mismatch";
    default: return "inconsistent-fixture";
  }
}

struct VerifyOptions {
  bool distance = true;  ///< false: check n and k only
  DistanceOptions engine;
};

/// Result of building the code under one coefficient order and block length.
struct ConventionOutcome {
  CoeffOrder order = CoeffOrder::LowFirst;
  int m = 0;
  int n = 0;
  int k = 0;
  bool nk_match = false;
  bool distance_computed = false;
  bool shared = false;  ///< distance copied from the other order (a^2 = 1)
  int d_low = 0;
  int d_high = 0;
  int witness_weight = 0;
  std::string engine;
  std::uint64_t codewords = 0;
  std::string note;
};

struct VerifyReport {
  std::string id;
  int q = 0, n = 0, k = 0, d = 0, a = 1;
  long long N = 0;
  int m = 0;
  int t = 0;
  std::vector<std::string> issues;  ///< fixture inconsistencies
  std::vector<ConventionOutcome> outcomes;
  /// Rebuilt with m' = n / t when the row's m disagrees with n; diagnostic
  /// only, never used for the verdict.
  std::vector<ConventionOutcome> diagnostic;
  VerifyVerdict verdict = VerifyVerdict::Mismatch;
  std::string matched_order;  ///< order(s) reproducing the claim
};

namespace detail {

inline ConventionOutcome build_outcome(const FixtureRow& row, CoeffOrder order, int m, const VerifyOptions& opt) {
  const FieldSpec& F = FieldSpec::of(row.q);
  const auto a = static_cast<Symbol>(row.a);
  ConventionOutcome o;
  o.order = order;
  o.m = m;
  std::vector<Polynomial> defs;
  for (const auto& s : row.polys) defs.push_back(parse_poly(F, s, order));
  const GenMatrix G = join_blocks(defs, m, a);
  o.n = static_cast<int>(G.n());
  o.k = static_cast<int>(G.rows());
  o.nk_match = o.n == row.n && o.k == row.k;
  if (opt.distance && o.nk_match) {
    const CodeParams cp = min_distance(G, opt.engine);
    o.distance_computed = true;
    o.d_low = cp.d_low;
    o.d_high = cp.d_high;
    o.engine = cp.engine;
    o.codewords = cp.codewords;
    o.witness_weight = hamming_weight(cp.witness);
    if (cp.budget_exhausted) o.note = "budget exhausted";
  }
  return o;
}

/// Builds both orders; with a^2 = 1 the two codes are equivalent (reversal
/// within each block composed with a block-local shift), so the distance is
/// computed once.
inline std::vector<ConventionOutcome> build_both(const FixtureRow& row, int m, const VerifyOptions& opt) {
  std::vector<ConventionOutcome> out;
  out.push_back(build_outcome(row, CoeffOrder::LowFirst, m, opt));
  const FieldSpec& F = FieldSpec::of(row.q);
  const bool involution = F.mul(static_cast<Symbol>(row.a), static_cast<Symbol>(row.a)) == 1;
  VerifyOptions high_opt = opt;
  if (involution && out[0].distance_computed) high_opt.distance = false;
  ConventionOutcome high = build_outcome(row, CoeffOrder::HighFirst, m, high_opt);
  if (involution && out[0].distance_computed && high.nk_match) {
    high.distance_computed = true;
    high.shared = true;
    high.d_low = out[0].d_low;
    high.d_high = out[0].d_high;
    high.engine = out[0].engine;
    high.witness_weight = out[0].witness_weight;
    high.note = "equivalent to low-first";
  }
  out.push_back(high);
  return out;
}

}  // namespace detail

/// Structural problems of a row: wrong polynomial count for n, a string
/// longer than m, or m not dividing N.
inline std::vector<std::string> structural_issues(const FixtureRow& row) {
  std::vector<std::string> issues;
  const int t = static_cast<int>(row.polys.size());
  if (t * row.m != row.n)
    issues.push_back(std::to_string(t) + " polynomials with m=" + std::to_string(row.m) + " give n=" + std::to_string(t * row.m) +
                     ", row claims n=" + std::to_string(row.n));
  for (std::size_t i = 0; i < row.polys.size(); ++i)
    if (static_cast<int>(row.polys[i].size()) > row.m)
      issues.push_back("polynomial " + std::to_string(i + 1) + " has " + std::to_string(row.polys[i].size()) + " digits, more than m=" +
                       std::to_string(row.m));
  if (row.N % row.m != 0) issues.push_back("m=" + std::to_string(row.m) + " does not divide N=" + std::to_string(row.N));
  return issues;
}

/// Rows in `all` (other than `row`) that list one of its polynomial strings
/// while claiming different parameters.
inline std::vector<std::string> shared_polynomial_rows(const FixtureRow& row, std::span<const FixtureRow> all) {
  std::vector<std::string> out;
  for (const auto& other : all) {
    if (other.id == row.id && other.line == row.line) continue;
    if (other.q == row.q && other.n == row.n && other.k == row.k && other.d == row.d && other.m == row.m) continue;
    for (const auto& p : row.polys)
      if (std::find(other.polys.begin(), other.polys.end(), p) != other.polys.end()) {
        out.push_back(other.id);
        break;
      }
  }
  return out;
}

/// Verifies one row. `all` is the whole fixture set, used to detect
/// polynomial lists copied between rows.
inline VerifyReport verify_table_entry(const FixtureRow& row, std::span<const FixtureRow> all, const VerifyOptions& opt) {
  VerifyReport r;
  r.id = row.id;
  r.q = row.q;
  r.n = row.n;
  r.k = row.k;
  r.d = row.d;
  r.a = row.a;
  r.N = row.N;
  r.m = row.m;
  r.t = static_cast<int>(row.polys.size());
  const FieldSpec& F = FieldSpec::of(row.q);
  for (const auto& s : row.polys) {
    try {
      (void)parse_poly(F, s);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("fixture " + row.id + ": " + e.what());
    }
  }

  r.issues = structural_issues(row);
  r.outcomes = detail::build_both(row, row.m, opt);
  const bool nk_any = std::any_of(r.outcomes.begin(), r.outcomes.end(), [](const ConventionOutcome& o) { return o.nk_match; });
  if (!nk_any) {
    const auto shared = shared_polynomial_rows(row, all);
    if (!shared.empty()) {
      std::string ids;
      for (const auto& s : shared) ids += (ids.empty() ? "" : ", ") + s;
      r.issues.push_back("polynomial list shared with " + ids + " (different parameters); (n, k) not reproduced");
    }
  }

  if (r.t * row.m != row.n && r.t > 0 && row.n % r.t == 0) {
    const int m2 = row.n / r.t;
    bool fits = true;
    for (const auto& s : row.polys) fits = fits && static_cast<int>(s.size()) <= m2;
    if (fits) {
      r.diagnostic = detail::build_both(row, m2, opt);
      for (auto& o : r.diagnostic) o.note += (o.note.empty() ? "" : "; ") + std::string("diagnostic with m'=n/t=") + std::to_string(m2);
    }
  }

  for (const auto& o : r.outcomes)
    if (o.nk_match) r.matched_order += (r.matched_order.empty() ? "" : ",") + std::string(to_string(o.order));

  if (!r.issues.empty()) {
    r.verdict = VerifyVerdict::InconsistentFixture;
    return r;
  }
  if (!nk_any) {
    r.verdict = VerifyVerdict::Mismatch;
    return r;
  }
  if (!opt.distance) {
    r.verdict = VerifyVerdict::ConfirmedNk;
    return r;
  }
  r.verdict = VerifyVerdict::Mismatch;
  for (const auto& o : r.outcomes) {
    if (!o.distance_computed) continue;
    if (o.d_low == o.d_high && o.d_high == row.d && o.witness_weight == row.d) {
      r.verdict = VerifyVerdict::Confirmed;
      break;
    }
    if (o.d_low <= row.d && row.d <= o.d_high && o.d_low != o.d_high) r.verdict = VerifyVerdict::Partial;
  }
  return r;
}

}  // namespace qtcodes

#endif  // QTCODES_WORKBENCH_FIXTURES_HPP
