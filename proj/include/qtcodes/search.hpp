// Search driver: factor pairs of N, rank filtering of twistulant blocks,
// capped sampling of block combinations, staged candidate evaluation against
// a BKLC table, and the weight-matrix greedy selection.

#ifndef QTCODES_SEARCH_HPP
#define QTCODES_SEARCH_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "workbench/bklc.hpp"
#include "lincode.hpp"
#include "polyring.hpp"
#include "qtcore.hpp"
#include "random.hpp"

namespace qtcodes {

/// All (m, p) with m * p = N, sorted by m.
inline std::vector<std::pair<long long, long long>> factor_pairs(long long N) {
  if (N < 1) throw std::invalid_argument("factor_pairs: N must be >= 1");
  std::vector<std::pair<long long, long long>> out;
  for (long long m : detail::divisors(N)) out.emplace_back(m, N / m);
  std::sort(out.begin(), out.end());
  return out;
}

struct RankClasses {
  std::vector<std::size_t> rank_k;
  std::vector<std::size_t> rank_k_minus_1;
};

/// Indices of the blocks of rank k and of rank k - 1.
inline RankClasses rank_filter(std::span<const TwistulantBlock> blocks, int k) {
  if (k < 1) throw std::invalid_argument("rank_filter: k must be >= 1");
  RankClasses out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].rank() == k) out.rank_k.push_back(i);
    else if (blocks[i].rank() == k - 1) out.rank_k_minus_1.push_back(i);
  }
  return out;
}

using RankHistogram = std::map<int, long long, std::greater<>>;

inline RankHistogram rank_distribution(std::span<const TwistulantBlock> blocks) {
  RankHistogram h;
  for (const auto& b : blocks) ++h[b.rank()];
  return h;
}

/// "m·p → {r1:c1, r2:c2}", ranks descending.
inline std::string format_rank_distribution(long long m, long long p, const RankHistogram& h) {
  std::ostringstream os;
  os << m << "·" << p << " → {";
  bool first = true;
  for (const auto& [rank, count] : h) {
    if (!first) os << ", ";
    os << rank << ':' << count;
    first = false;
  }
  os << '}';
  return os.str();
}

/// C(n, t), saturating at UINT64_MAX.
inline std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t t) {
  if (t > n) return 0;
  t = std::min(t, n - t);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= t; ++i) {
    r = r * (n - t + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

namespace detail {

/// The rank-th t-subset of [0, n) in lexicographic order.
inline std::vector<int> unrank_combination(std::uint64_t rank, int n, int t) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(t));
  int x = 0;
  for (int slot = 0; slot < t; ++slot) {
    for (;; ++x) {
      const std::uint64_t c = binomial_saturating(static_cast<std::uint64_t>(n - x - 1), static_cast<std::uint64_t>(t - slot - 1));
      if (rank < c) break;
      rank -= c;
    }
    out.push_back(x++);
  }
  return out;
}

/// Uniform t-subset of [0, n), sorted (Floyd's algorithm).
inline std::vector<int> random_subset(Rng& rng, int n, int t) {
  std::set<int> s;
  for (int j = n - t; j < n; ++j) {
    const auto r = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(j) + 1));
    s.insert(s.count(r) != 0 ? j : r);
  }
  return {s.begin(), s.end()};
}

}  // namespace detail

/// Index t-subsets of [0, pool_size): all of them in lexicographic order when
/// there are at most `cap`, otherwise `cap` distinct subsets drawn uniformly
/// from `seed` and returned in lexicographic order.
inline std::vector<std::vector<int>> sample_combinations(int pool_size, int t, std::size_t cap, std::uint64_t seed) {
  if (t < 1) throw std::invalid_argument("sample_combinations: t must be >= 1");
  if (t > pool_size)
    throw std::invalid_argument("sample_combinations: t=" + std::to_string(t) + " exceeds pool size " + std::to_string(pool_size));
  if (cap < 1) throw std::invalid_argument("sample_combinations: cap must be >= 1");
  const std::uint64_t total = binomial_saturating(static_cast<std::uint64_t>(pool_size), static_cast<std::uint64_t>(t));
  std::vector<std::vector<int>> out;
  if (total <= cap) {
    out.reserve(total);
    std::vector<int> c(static_cast<std::size_t>(t));
    std::iota(c.begin(), c.end(), 0);
    for (;;) {
      out.push_back(c);
      int i = t - 1;
      while (i >= 0 && c[static_cast<std::size_t>(i)] == pool_size - t + i) --i;
      if (i < 0) break;
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < t; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
  }
  Rng rng(seed);
  std::set<std::vector<int>> chosen;
  if (total <= 2 * static_cast<std::uint64_t>(cap)) {
    // Dense case: Floyd sampling over lexicographic ranks.
    std::set<std::uint64_t> ranks;
    for (std::uint64_t j = total - cap; j < total; ++j) {
      const std::uint64_t r = uniform_below(rng, j + 1);
      ranks.insert(ranks.count(r) != 0 ? j : r);
    }
    for (std::uint64_t r : ranks) chosen.insert(detail::unrank_combination(r, pool_size, t));
  } else {
    while (chosen.size() < cap) chosen.insert(detail::random_subset(rng, pool_size, t));
  }
  return {chosen.begin(), chosen.end()};
}

struct SearchConfig {
  int q = 2;
  Symbol a = 1;
  long long N = 0;
  int deg_min = 0;
  int deg_max = 0;
  std::size_t divisor_cap = 1000;
  std::uint64_t seed = 1;
  std::size_t combination_cap = 20000;
  int t_min = 1;
  int t_max = 1;
  int k_floor = 6;
  int m_min = 1;
  std::vector<int> m_values;  ///< restrict to these m when nonempty
  bool greedy = false;        ///< also run weight_matrix_greedy per split
  Engine engine = Engine::Auto;
  Budget budget;
  unsigned threads = 0;
  std::uint64_t probe_trials = 2000;
  std::string bklc_path;
  std::string output_path;

  void validate() const {
    if (!is_supported_prime(q)) throw std::invalid_argument("config: unsupported q=" + std::to_string(q));
    if (a == 0 || a >= q) throw std::invalid_argument("config: a must be a nonzero element of GF(q)");
    if (N < 1) throw std::invalid_argument("config: N must be >= 1");
    if (deg_min < 0 || deg_min > deg_max || deg_max > N) throw std::invalid_argument("config: degree window must satisfy 0 <= deg_min <= deg_max <= N");
    if (divisor_cap < 1 || combination_cap < 1) throw std::invalid_argument("config: caps must be >= 1");
    if (t_min < 1 || t_max < t_min) throw std::invalid_argument("config: need 1 <= t_min <= t_max");
    if (k_floor < 1) throw std::invalid_argument("config: k_floor must be >= 1");
    if (m_min < 1) throw std::invalid_argument("config: m_min must be >= 1");
  }
};

/// Comparison of a candidate with the best known code of the same [n, k]_q.
enum class Verdict { New, Ties, Below, Unknown, RejectedAtProbe, Undecided };

inline const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::New: return "new";
    case Verdict::Ties: return "ties";
    case Verdict::Below: return "below";
    case Verdict::RejectedAtProbe: return "rejected-at-probe";
    case Verdict::Undecided: return "undecided";
    default: return "unknown";
  }
}

inline Verdict parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::New, Verdict::Ties, Verdict::Below, Verdict::Unknown, Verdict::RejectedAtProbe, Verdict::Undecided})
    if (s == to_string(v)) return v;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

struct CandidateRecord {
  std::string key;  ///< derivation key; unique within a run
  int q = 0;
  int a = 1;
  long long N = 0;
  long long m = 0;
  long long p = 0;
  int t = 0;
  std::string rank_class;         ///< "k", "k-1" or "greedy"
  long long generator_index = 0;  ///< index into the enumerated long generators
  std::vector<int> blocks;        ///< indices of the selected defining polynomials
  std::vector<std::string> polys; ///< selected defining polynomials, low-degree-first
  int n = 0;
  int k = 0;
  int d_low = 0;
  int d_high = 0;
  std::string engine;
  int witness_weight = 0;
  int probe_weight = 0;
  int bklc_d = 0;        ///< 0 when the table has no entry
  int greedy_score = -1; ///< minimum row sum, greedy records only
  std::uint64_t seed = 0;
  std::string verdict;
  bool rejected_at_probe = false;
  std::string timestamp;

  friend bool operator==(const CandidateRecord&, const CandidateRecord&) = default;
};

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline Verdict compare_with_bklc(int d_low, int d_high, std::optional<int> best) {
  if (!best) return Verdict::Unknown;
  if (d_low > *best) return Verdict::New;
  if (d_high < *best) return Verdict::Below;
  if (d_low == d_high) return Verdict::Ties;
  return Verdict::Undecided;
}

}  // namespace detail

struct CandidateContext {
  int q = 2;
  Symbol a = 1;
  long long N = 0;
  long long p = 0;
  long long generator_index = 0;
  std::string rank_class;
  std::uint64_t seed = 0;
  std::string key;
};

/// Staged evaluation: join, dimension check, random probe (rejects when the
/// probe weight is already at or below the BKLC distance), then the distance
/// engine and the BKLC verdict.
inline CandidateRecord evaluate_candidate(std::span<const Polynomial> selection, int m, const CandidateContext& ctx,
                                          const SearchConfig& config, const BklcTable* bklc) {
  if (selection.empty()) throw std::invalid_argument("evaluate_candidate: empty selection");
  CandidateRecord r;
  r.key = ctx.key;
  r.q = ctx.q;
  r.a = ctx.a;
  r.N = ctx.N;
  r.m = m;
  r.p = ctx.p;
  r.t = static_cast<int>(selection.size());
  r.rank_class = ctx.rank_class;
  r.generator_index = ctx.generator_index;
  r.seed = ctx.seed;
  r.timestamp = detail::utc_timestamp();
  for (const auto& f : selection) r.polys.push_back(format_poly(reduce_mod_binomial(f, m, ctx.a)));

  const GenMatrix G = join_blocks(selection, m, ctx.a);
  r.n = static_cast<int>(G.n());
  r.k = static_cast<int>(G.rows());
  if (r.k != standard_generator(selection, m, ctx.a).k)
    throw std::logic_error("evaluate_candidate: joined rank disagrees with the gcd dimension law");

  const std::optional<int> best = bklc ? bklc->lookup(r.q, r.n, r.k) : std::nullopt;
  r.bklc_d = best.value_or(0);

  const ProbeResult probe = random_weight_probe(G, config.probe_trials, derive_seed(ctx.seed, {0x9b0be}));
  r.probe_weight = probe.weight;
  if (best && probe.weight <= *best) {
    r.rejected_at_probe = true;
    r.d_low = 1;
    r.d_high = probe.weight;
    r.witness_weight = probe.weight;
    r.engine = "probe";
    r.verdict = to_string(Verdict::RejectedAtProbe);
    return r;
  }

  DistanceOptions opt;
  opt.engine = config.engine;
  opt.budget = config.budget;
  opt.threads = config.threads;
  const CodeParams cp = min_distance(G, opt);
  r.d_low = cp.d_low;
  r.d_high = cp.d_high;
  r.engine = cp.engine;
  r.witness_weight = hamming_weight(cp.witness);
  r.verdict = to_string(detail::compare_with_bklc(r.d_low, r.d_high, best));
  return r;
}

/// Minimum row sum over the chosen columns of the p x p weight matrix whose
/// row r is the first row cyclically shifted by r.
inline int weight_matrix_score(std::span<const int> first_row, std::span<const int> columns) {
  const auto p = static_cast<long long>(first_row.size());
  int best = std::numeric_limits<int>::max();
  for (long long r = 0; r < p; ++r) {
    int s = 0;
    for (int c : columns) s += first_row[static_cast<std::size_t>(((c - r) % p + p) % p)];
    best = std::min(best, s);
  }
  return best;
}

struct WeightMatrixView {
  std::vector<int> first_row;  ///< wt(g_1) ... wt(g_p)

  explicit WeightMatrixView(std::span<const Polynomial> defs) {
    for (const auto& f : defs) first_row.push_back(f.weight());
  }
  [[nodiscard]] std::size_t p() const noexcept { return first_row.size(); }
  [[nodiscard]] int at(std::size_t r, std::size_t c) const {
    const std::size_t n = first_row.size();
    return first_row[(c + n - r % n) % n];
  }
  [[nodiscard]] int score(std::span<const int> columns) const { return weight_matrix_score(first_row, columns); }
};

inline std::string greedy_key(const std::string& split_key, std::size_t t) {
  return split_key + "/greedy/t" + std::to_string(t);
}

struct GreedyStep {
  std::vector<int> columns;  ///< chosen columns after this step, in choice order
  int score = 0;
};

/// Greedy column selection maximizing the minimum row sum; only columns whose
/// block has rank k are eligible, ties go to the lowest index. Stops early
/// when the eligible columns run out.
inline std::vector<GreedyStep> weight_matrix_greedy_columns(std::span<const Polynomial> defs, int t_max, int k, int m, Symbol a) {
  if (defs.empty()) throw std::invalid_argument("weight_matrix_greedy: no defining polynomials");
  if (t_max < 1 || static_cast<std::size_t>(t_max) > defs.size())
    throw std::invalid_argument("weight_matrix_greedy: t_max=" + std::to_string(t_max) + " must lie in [1, p=" + std::to_string(defs.size()) + "]");
  const WeightMatrixView view(defs);
  std::vector<char> eligible(defs.size(), 0);
  for (std::size_t i = 0; i < defs.size(); ++i) eligible[i] = rank_of_block(reduce_mod_binomial(defs[i], m, a), m, a) == k;
  std::vector<GreedyStep> steps;
  std::vector<int> chosen;
  for (int t = 1; t <= t_max; ++t) {
    int best_col = -1;
    int best_score = -1;
    for (std::size_t c = 0; c < defs.size(); ++c) {
      if (!eligible[c] || std::find(chosen.begin(), chosen.end(), static_cast<int>(c)) != chosen.end()) continue;
      chosen.push_back(static_cast<int>(c));
      const int s = view.score(chosen);
      chosen.pop_back();
      if (s > best_score) {
        best_score = s;
        best_col = static_cast<int>(c);
      }
    }
    if (best_col < 0) break;
    chosen.push_back(best_col);
    steps.push_back({chosen, best_score});
  }
  return steps;
}

/// Evaluates one greedy step; greedy_score holds the row-sum value (a
/// heuristic, not a certified distance).
inline CandidateRecord evaluate_greedy_step(std::span<const Polynomial> defs, const GreedyStep& step, int m,
                                            const CandidateContext& base, const SearchConfig& config, const BklcTable* bklc) {
  std::vector<Polynomial> sel;
  for (int c : step.columns) sel.push_back(defs[static_cast<std::size_t>(c)]);
  CandidateContext ctx = base;
  ctx.rank_class = "greedy";
  ctx.key = greedy_key(base.key, step.columns.size());
  ctx.seed = derive_seed(base.seed, {0x67ee, step.columns.size()});
  CandidateRecord r = evaluate_candidate(sel, m, ctx, config, bklc);
  r.blocks = step.columns;
  r.greedy_score = step.score;
  return r;
}

/// One evaluated record per greedy step t = 1 ... t_max.
inline std::vector<CandidateRecord> weight_matrix_greedy(std::span<const Polynomial> defs, int t_max, int k, int m,
                                                         const CandidateContext& base, const SearchConfig& config,
                                                         const BklcTable* bklc) {
  std::vector<CandidateRecord> out;
  for (const GreedyStep& step : weight_matrix_greedy_columns(defs, t_max, k, m, base.a))
    out.push_back(evaluate_greedy_step(defs, step, m, base, config, bklc));
  return out;
}

/// Per-split summary passed to the optional observer.
struct SplitReport {
  long long generator_index = 0;
  long long m = 0;
  long long p = 0;
  int k = 0;
  RankHistogram histogram;
};

struct SearchHooks {
  std::function<void(const CandidateRecord&)> sink;
  std::function<void(const SplitReport&)> on_split;  ///< optional
  std::set<std::string> skip_keys;                   ///< already emitted (resume)
};

/// Runs the full pipeline and emits records in canonical order: generator,
/// then m, then rank class, then t, then subset.
inline std::size_t run_search(const SearchConfig& config, const BklcTable* bklc, const SearchHooks& hooks) {
  config.validate();
  if (!hooks.sink) throw std::invalid_argument("run_search: no record sink");
  const FieldSpec& F = FieldSpec::of(config.q);
  const FactoredModulus fm = factorize_xn_minus_a(F, config.N, config.a, derive_seed(config.seed, {0xfac7}));
  const std::vector<Polynomial> gens =
      enumerate_divisors(fm, config.deg_min, config.deg_max, config.divisor_cap, derive_seed(config.seed, {0xd1b}));

  std::vector<std::pair<long long, long long>> pairs;
  for (const auto& mp : factor_pairs(config.N)) {
    if (mp.first < config.m_min) continue;
    if (!config.m_values.empty() &&
        std::find(config.m_values.begin(), config.m_values.end(), static_cast<int>(mp.first)) == config.m_values.end())
      continue;
    pairs.push_back(mp);
  }

  std::size_t emitted = 0;
  auto emit = [&](CandidateRecord&& r) {
    hooks.sink(r);
    ++emitted;
  };
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const Polynomial& G = gens[gi];
    if (G.degree() >= config.N) continue;  // x^N - a itself generates the zero code
    for (const auto& [m, p] : pairs) {
      const EnsembleSpec spec{config.q, config.a, config.N, static_cast<int>(m), p};
      const SplitResult split = split_defining_polys(G, spec);
      if (split.k < config.k_floor) continue;
      std::vector<TwistulantBlock> blocks;
      blocks.reserve(split.defs.size());
      for (const auto& f : split.defs) blocks.emplace_back(f, static_cast<int>(m), config.a);
      if (hooks.on_split) hooks.on_split({static_cast<long long>(gi), m, p, split.k, rank_distribution(blocks)});

      const RankClasses classes = rank_filter(blocks, split.k);
      const std::string base_key = "g" + std::to_string(gi) + "/m" + std::to_string(m) + "/p" + std::to_string(p);
      const std::uint64_t split_seed = derive_seed(config.seed, {gi, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(p)});
      for (int cls = 0; cls < 2; ++cls) {
        const auto& pool = cls == 0 ? classes.rank_k : classes.rank_k_minus_1;
        const int cls_rank = split.k - cls;
        if (cls_rank < config.k_floor) continue;
        for (int t = config.t_min; t <= config.t_max && t <= static_cast<int>(pool.size()); ++t) {
          const std::uint64_t sub_seed =
              derive_seed(config.seed, {gi, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(t),
                                        static_cast<std::uint64_t>(cls)});
          for (const auto& subset : sample_combinations(static_cast<int>(pool.size()), t, config.combination_cap, sub_seed)) {
            std::vector<int> idx;
            std::vector<Polynomial> sel;
            for (int s : subset) {
              idx.push_back(static_cast<int>(pool[static_cast<std::size_t>(s)]));
              sel.push_back(split.defs[pool[static_cast<std::size_t>(s)]]);
            }
            std::string key = base_key + (cls == 0 ? "/k" : "/k-1") + "/t" + std::to_string(t) + "/";
            for (std::size_t i = 0; i < idx.size(); ++i) key += (i ? "," : "") + std::to_string(idx[i]);
            if (hooks.skip_keys.count(key) != 0) continue;
            const CandidateContext ctx{config.q, config.a, config.N, p, static_cast<long long>(gi), cls == 0 ? "k" : "k-1",
                                       derive_seed(sub_seed, {fnv1a(key)}), key};
            CandidateRecord r = evaluate_candidate(sel, static_cast<int>(m), ctx, config, bklc);
            r.blocks = idx;
            emit(std::move(r));
          }
        }
      }
      if (config.greedy && !classes.rank_k.empty()) {
        const int t_max = std::min<int>(config.t_max, static_cast<int>(split.defs.size()));
        const CandidateContext base{config.q, config.a, config.N, p, static_cast<long long>(gi), "greedy", split_seed, base_key};
        for (const GreedyStep& step : weight_matrix_greedy_columns(split.defs, t_max, split.k, static_cast<int>(m), config.a)) {
          const int t = static_cast<int>(step.columns.size());
          if (t < config.t_min || hooks.skip_keys.count(greedy_key(base_key, step.columns.size())) != 0) continue;
          emit(evaluate_greedy_step(split.defs, step, static_cast<int>(m), base, config, bklc));
        }
      }
    }
  }
  return emitted;
}

}  // namespace qtcodes

#endif  // QTCODES_SEARCH_HPP
